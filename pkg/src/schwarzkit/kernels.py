"""Inner-loop kernels, compiled when available.

``BACKEND`` is ``"compiled"`` if the Cython extension imported and
``"python"`` otherwise. Setting ``SCHWARZKIT_PURE_PYTHON=1`` before import
forces the fallback.
"""

import os

import numpy as np

from . import _kernels_py

if os.environ.get("SCHWARZKIT_PURE_PYTHON") == "1":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

__all__ = ["BACKEND", "blaschke", "herglotz", "series_mul1", "series_mul2"]


def _c1(x):
    return np.ascontiguousarray(np.atleast_1d(x), dtype=np.complex128)


def blaschke(zeros, unit, z):
    """Finite Blaschke product and its derivative at the points ``z``.

    Parameters
    ----------
    zeros : sequence of complex
        Zeros inside the disc, repeated according to multiplicity.
    unit : complex
        Unimodular prefactor.
    z : array_like
        Evaluation points; the output has the same shape.

    Returns
    -------
    value, derivative : ndarray
    """
    z = np.asarray(z, dtype=np.complex128)
    v, d = _impl.blaschke(_c1(zeros) if len(zeros) else np.zeros(0, np.complex128),
                          complex(unit), _c1(z).ravel())
    return v.reshape(z.shape), d.reshape(z.shape)


def herglotz(angles, masses, z):
    """``(1/2pi) sum m_k (e_k + z)/(e_k - z)`` and its z-derivative."""
    z = np.asarray(z, dtype=np.complex128)
    g, dg = _impl.herglotz(np.ascontiguousarray(angles, dtype=np.float64),
                           np.ascontiguousarray(masses, dtype=np.float64),
                           _c1(z).ravel())
    return g.reshape(z.shape), dg.reshape(z.shape)


def series_mul1(a, b, max_degree):
    return _impl.series_mul1(_c1(a), _c1(b), int(max_degree))


def series_mul2(a, b, max_degree):
    return _impl.series_mul2(np.ascontiguousarray(a, dtype=np.complex128),
                             np.ascontiguousarray(b, dtype=np.complex128),
                             int(max_degree))
