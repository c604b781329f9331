"""Truncated power series in one or two variables, vector valued.

Coefficients are stored densely: shape ``(ncomp, D + 1)`` for one variable and
``(ncomp, D + 1, D + 1)`` for two, with entries of total degree above ``D``
kept at zero. Products go through :mod:`schwarzkit.kernels`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import LinearPartNotIdentity, NonzeroConstantTerm

DEFAULT_DEGREE = 10
ZERO_TOL = 1e-14


def _degree_mask(nvars, D):
    if nvars == 1:
        return np.ones(D + 1, bool)
    i, j = np.indices((D + 1, D + 1))
    return i + j <= D


def _total_degree(nvars, D):
    if nvars == 1:
        return np.arange(D + 1)
    i, j = np.indices((D + 1, D + 1))
    return i + j


@dataclass(frozen=True, eq=False)
class FormalPowerSeries:
    nvars: int
    max_degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.nvars not in (1, 2):
            raise ValueError("only one or two variables are supported")
        D = self.max_degree
        shape = (D + 1,) * self.nvars
        c = np.array(self.coeffs, dtype=complex)
        if c.shape == shape:
            c = c[None]
        if c.ndim != self.nvars + 1 or c.shape[1:] != shape:
            raise ValueError(f"coefficient array has shape {c.shape}, expected (ncomp,) + {shape}")
        c[:, ~_degree_mask(self.nvars, D)] = 0
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    # construction ----------------------------------------------------------

    @classmethod
    def zeros(cls, nvars, ncomp=1, max_degree=DEFAULT_DEGREE):
        return cls(nvars, max_degree, np.zeros((ncomp,) + (max_degree + 1,) * nvars))

    @classmethod
    def identity(cls, nvars, max_degree=DEFAULT_DEGREE):
        c = np.zeros((nvars,) + (max_degree + 1,) * nvars, dtype=complex)
        if nvars == 1:
            c[0, 1] = 1
        else:
            c[0, 1, 0] = c[1, 0, 1] = 1
        return cls(nvars, max_degree, c)

    @classmethod
    def from_terms(cls, nvars, terms, ncomp=None, max_degree=DEFAULT_DEGREE):
        """Build from ``{exponents: coefficient vector}``; terms above ``max_degree`` are dropped."""
        terms = {tuple(np.atleast_1d(k)): np.atleast_1d(np.asarray(v, dtype=complex))
                 for k, v in dict(terms).items()}
        if ncomp is None:
            ncomp = max((len(v) for v in terms.values()), default=1)
        out = np.zeros((ncomp,) + (max_degree + 1,) * nvars, dtype=complex)
        for exps, vec in terms.items():
            if len(exps) != nvars or min(exps) < 0:
                raise ValueError(f"bad exponent {exps} for {nvars} variables")
            if sum(exps) > max_degree:
                continue
            out[(slice(None),) + exps] += np.broadcast_to(vec, (ncomp,))
        return cls(nvars, max_degree, out)

    @property
    def ncomp(self) -> int:
        return self.coeffs.shape[0]

    def component(self, k) -> "FormalPowerSeries":
        return FormalPowerSeries(self.nvars, self.max_degree, self.coeffs[k:k + 1])

    def coefficient(self, exponents, comp=0) -> complex:
        exps = tuple(np.atleast_1d(exponents))
        if sum(exps) > self.max_degree:
            return 0j
        return complex(self.coeffs[(comp,) + exps])

    def homogeneous_part(self, k) -> np.ndarray:
        deg = _total_degree(self.nvars, self.max_degree)
        return np.where(deg == k, self.coeffs, 0)

    def lowest_nonlinear_degree(self, tol=ZERO_TOL):
        """Smallest ``k >= 2`` with a nonzero degree-``k`` coefficient, or ``None``."""
        deg = _total_degree(self.nvars, self.max_degree)
        for k in range(2, self.max_degree + 1):
            if np.any(np.abs(self.coeffs[:, deg == k]) > tol):
                return k
        return None

    def terms(self):
        """Nonzero terms as ``(exponents, coefficient vector)`` in lexicographic order."""
        mask = np.any(self.coeffs != 0, axis=0)
        return [(tuple(int(e) for e in idx), self.coeffs[(slice(None),) + tuple(idx)])
                for idx in np.argwhere(mask)]

    def truncate(self, max_degree) -> "FormalPowerSeries":
        D = min(max_degree, self.max_degree)
        sl = (slice(None),) + (slice(0, D + 1),) * self.nvars
        return FormalPowerSeries(self.nvars, D, self.coeffs[sl])

    # arithmetic --------------------------------------------------------------

    def _check(self, other):
        if self.nvars != other.nvars or self.max_degree != other.max_degree:
            raise ValueError("series must share variable count and max_degree")

    def __add__(self, other):
        self._check(other)
        return FormalPowerSeries(self.nvars, self.max_degree, self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._check(other)
        return FormalPowerSeries(self.nvars, self.max_degree, self.coeffs - other.coeffs)

    def scale(self, s) -> "FormalPowerSeries":
        return FormalPowerSeries(self.nvars, self.max_degree, self.coeffs * s)

    def __mul__(self, other):
        """Componentwise truncated product (components broadcast if one is scalar-valued)."""
        self._check(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        mul = kernels.series_mul1 if self.nvars == 1 else kernels.series_mul2
        out = [mul(a[k % len(a)], b[k % len(b)], self.max_degree) for k in range(n)]
        return FormalPowerSeries(self.nvars, self.max_degree, np.array(out))

    def evaluate(self, z):
        """Evaluate the polynomial at a point (a complex, or a pair for two variables)."""
        D = self.max_degree
        if self.nvars == 1:
            p = complex(z) ** np.arange(D + 1)
            return self.coeffs @ p
        z1, z2 = z
        p1 = complex(z1) ** np.arange(D + 1)
        p2 = complex(z2) ** np.arange(D + 1)
        return np.einsum("kij,i,j->k", self.coeffs, p1, p2)

    # JSON --------------------------------------------------------------------

    def to_json(self) -> dict:
        return {"vars": self.nvars, "max_degree": self.max_degree,
                "terms": [{"exponents": list(e), "coeff": [[v.real, v.imag] for v in vec]}
                          for e, vec in self.terms()]}

    @classmethod
    def from_json(cls, obj) -> "FormalPowerSeries":
        nvars = int(obj["vars"])
        D = int(obj.get("max_degree", DEFAULT_DEGREE))
        terms = {}
        ncomp = 1
        for t in obj.get("terms", []):
            vec = [complex(*c) if isinstance(c, (list, tuple)) else complex(c) for c in t["coeff"]]
            ncomp = max(ncomp, len(vec))
            terms[tuple(t["exponents"])] = vec
        return cls.from_terms(nvars, terms, ncomp, D)


def _powers(s: FormalPowerSeries, D):
    out = [FormalPowerSeries.from_terms(s.nvars, {(0,) * s.nvars: [1]}, 1, D)]
    for _ in range(D):
        out.append(out[-1] * s)
    return out


def series_compose(f: FormalPowerSeries, g: FormalPowerSeries) -> FormalPowerSeries:
    """Truncated composition ``f o g``.

    ``g`` must have one component per variable of ``f`` and no constant term;
    the result has ``f``'s components in ``g``'s variables.

    Raises
    ------
    NonzeroConstantTerm
        If some component of ``g`` has a nonzero constant coefficient.
    """
    if g.ncomp != f.nvars:
        raise ValueError(f"inner series has {g.ncomp} components, outer has {f.nvars} variables")
    if f.max_degree != g.max_degree:
        raise ValueError("series must share max_degree")
    const = g.coeffs[(slice(None),) + (0,) * g.nvars]
    if np.any(const != 0):
        raise NonzeroConstantTerm(f"inner constant term {const}")
    D = f.max_degree
    out = np.zeros((f.ncomp,) + (D + 1,) * g.nvars, dtype=complex)
    if f.nvars == 1:
        pw = _powers(g.component(0), D)
        for i in range(D + 1):
            col = f.coeffs[:, i]
            if np.any(col != 0):
                out += col.reshape((-1,) + (1,) * g.nvars) * pw[i].coeffs[0]
    else:
        p1, p2 = _powers(g.component(0), D), _powers(g.component(1), D)
        for i in range(D + 1):
            for j in range(D + 1 - i):
                col = f.coeffs[:, i, j]
                if np.any(col != 0):
                    out += col.reshape((-1,) + (1,) * g.nvars) * (p1[i] * p2[j]).coeffs[0]
    return FormalPowerSeries(g.nvars, D, out)


def _check_tangent_identity(phi: FormalPowerSeries, tol=ZERO_TOL):
    if phi.ncomp != phi.nvars:
        raise ValueError("a self-map needs one component per variable")
    ident = FormalPowerSeries.identity(phi.nvars, phi.max_degree)
    deg = _total_degree(phi.nvars, phi.max_degree)
    low = deg <= 1
    err = np.abs(phi.coeffs[:, low] - ident.coeffs[:, low]).max()
    if err > tol:
        raise LinearPartNotIdentity(f"constant and linear part differ from the identity by {err:.3e}")


def cartan_iterate(phi: FormalPowerSeries, j: int) -> FormalPowerSeries:
    """``phi`` composed with itself ``j`` times, truncated.

    For ``phi = z + P_k + ...`` the degree-``k`` part of the result is ``j P_k``.
    """
    if j < 1:
        raise ValueError("j must be at least 1")
    _check_tangent_identity(phi)
    out = phi
    for _ in range(j - 1):
        out = series_compose(phi, out)
    return out


@dataclass
class CauchyEstimateReport:
    degree: int | None
    multi_index: tuple | None
    bound: float
    first_violation: int | None
    magnitudes: list

    def to_json(self) -> dict:
        return {"degree": self.degree, "multi_index": self.multi_index, "bound": self.bound,
                "first_violation": self.first_violation,
                "magnitudes": self.magnitudes[:5] + (["..."] if len(self.magnitudes) > 5 else [])}


def cauchy_estimate_check(phi: FormalPowerSeries, a: float, b: float, j_max: int,
                          rel_guard: float = 1e-12) -> CauchyEstimateReport:
    """First iterate count ``j`` at which a Cauchy estimate fails.

    The iterates of a map from the ball of radius ``a`` into the ball of
    radius ``b`` have derivatives bounded by ``n b alpha!/a^k`` at degree
    ``k``. The lowest nonlinear part of ``phi`` is tracked through actual
    iteration; its derivative grows like ``j``, so for nonzero ``P_k`` a
    violation appears at a finite ``j``. The comparison uses a relative guard
    ``1 + rel_guard`` so rounding on an exact tie is not counted.
    """
    if not 0 < a < b:
        raise ValueError("need 0 < a < b")
    _check_tangent_identity(phi)
    k = phi.lowest_nonlinear_degree()
    if k is None:
        return CauchyEstimateReport(None, None, math.inf, None, [])
    n = phi.nvars
    head = phi.truncate(k)
    part = head.homogeneous_part(k)
    comp, *idx = np.unravel_index(int(np.argmax(np.abs(part))), part.shape)
    idx = tuple(int(i) for i in idx)
    fact = math.prod(math.factorial(i) for i in idx)
    bound = n * b * fact / a ** k
    it = head
    mags = []
    for j in range(1, j_max + 1):
        if j > 1:
            it = series_compose(head, it)
        m = fact * abs(it.coeffs[(comp,) + idx])
        mags.append(m)
        if m > bound * (1 + rel_guard):
            return CauchyEstimateReport(k, idx, bound, j, mags)
    return CauchyEstimateReport(k, idx, bound, None, mags)
