# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Signatures mirror ``_kernels_py`` exactly."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double complex conj(double complex)
    double creal(double complex)
    double cimag(double complex)

cdef double INV_TWO_PI = 0.15915494309189535


def blaschke(const double complex[:] zeros, double complex unit, const double complex[:] z):
    cdef Py_ssize_t n = z.shape[0]
    cdef Py_ssize_t m = zeros.shape[0]
    cdef Py_ssize_t i, k
    cdef double complex val, der, a, ac, den, b, db, zi
    cdef double w
    out = np.empty(n, dtype=np.complex128)
    dout = np.empty(n, dtype=np.complex128)
    cdef double complex[:] o = out
    cdef double complex[:] d = dout
    with nogil:
        for i in range(n):
            zi = z[i]
            val = 1.0
            der = 0.0
            for k in range(m):
                a = zeros[k]
                ac = conj(a)
                den = 1.0 - ac * zi
                w = 1.0 - (creal(a) * creal(a) + cimag(a) * cimag(a))
                b = (zi - a) / den
                db = w / (den * den)
                der = der * b + val * db
                val = val * b
            o[i] = unit * val
            d[i] = unit * der
    return out, dout


def herglotz(const double[:] angles, const double[:] masses, const double complex[:] z):
    cdef Py_ssize_t n = z.shape[0]
    cdef Py_ssize_t m = angles.shape[0]
    cdef Py_ssize_t i, k
    cdef double complex g, dg, e, zi, diff
    out = np.empty(n, dtype=np.complex128)
    dout = np.empty(n, dtype=np.complex128)
    cdef double complex[:] o = out
    cdef double complex[:] d = dout
    cdef double complex[::1] nodes = np.exp(1j * np.asarray(angles, dtype=np.float64))
    with nogil:
        for i in range(n):
            zi = z[i]
            g = 0.0
            dg = 0.0
            for k in range(m):
                e = nodes[k]
                diff = e - zi
                g = g + masses[k] * (e + zi) / diff
                dg = dg + masses[k] * 2.0 * e / (diff * diff)
            o[i] = g * INV_TWO_PI
            d[i] = dg * INV_TWO_PI
    return out, dout


def series_mul1(const double complex[:] a, const double complex[:] b, Py_ssize_t max_degree):
    cdef Py_ssize_t i, p
    cdef double complex acc
    out = np.zeros(max_degree + 1, dtype=np.complex128)
    cdef double complex[:] c = out
    with nogil:
        for i in range(max_degree + 1):
            acc = 0.0
            for p in range(i + 1):
                acc = acc + a[p] * b[i - p]
            c[i] = acc
    return out


def series_mul2(const double complex[:, :] a, const double complex[:, :] b, Py_ssize_t max_degree):
    cdef Py_ssize_t i, j, p, q
    cdef double complex acc, ap
    out = np.zeros((max_degree + 1, max_degree + 1), dtype=np.complex128)
    cdef double complex[:, :] c = out
    with nogil:
        for i in range(max_degree + 1):
            for j in range(max_degree + 1 - i):
                acc = 0.0
                for p in range(i + 1):
                    for q in range(j + 1):
                        ap = a[p, q]
                        if ap != 0.0:
                            acc = acc + ap * b[i - p, j - q]
                c[i, j] = acc
    return out
