"""Pure-Python reference kernels.

Used when the compiled extension is unavailable, and as the baseline in
``benchmarks/bench_kernels.py``. Every function has the same signature and
return convention as its counterpart in ``_kernels.pyx``.
"""

import numpy as np

_INV_TWO_PI = 1.0 / (2.0 * np.pi)


def blaschke(zeros, unit, z):
    """Value and derivative of ``unit * prod (z - a)/(1 - conj(a) z)``.

    The derivative is accumulated by the product rule, so repeated zeros and
    evaluation points on a zero need no special handling.
    """
    z = np.asarray(z, dtype=np.complex128)
    val = np.ones_like(z)
    der = np.zeros_like(z)
    for a in zeros:
        den = 1.0 - np.conj(a) * z
        b = (z - a) / den
        db = (1.0 - abs(a) ** 2) / (den * den)
        der = der * b + val * db
        val = val * b
    return unit * val, unit * der


def herglotz(angles, masses, z):
    z = np.asarray(z, dtype=np.complex128)
    g = np.zeros_like(z)
    dg = np.zeros_like(z)
    for theta, m in zip(angles, masses):
        e = np.exp(1j * theta)
        diff = e - z
        g = g + m * (e + z) / diff
        dg = dg + m * 2.0 * e / (diff * diff)
    return g * _INV_TWO_PI, dg * _INV_TWO_PI


def series_mul1(a, b, max_degree):
    out = np.zeros(max_degree + 1, dtype=np.complex128)
    for i in range(max_degree + 1):
        acc = 0j
        for p in range(i + 1):
            acc += a[p] * b[i - p]
        out[i] = acc
    return out


def series_mul2(a, b, max_degree):
    out = np.zeros((max_degree + 1, max_degree + 1), dtype=np.complex128)
    for i in range(max_degree + 1):
        for j in range(max_degree + 1 - i):
            acc = 0j
            for p in range(i + 1):
                for q in range(j + 1):
                    ap = a[p, q]
                    if ap != 0:
                        acc += ap * b[i - p, j - q]
            out[i, j] = acc
    return out
