"""Holomorphic self-maps of the disc with exact evaluation and derivatives.

Every map is a frozen dataclass deriving from :class:`FunctionSpec`:

* ``f(z)`` evaluates on scalars or arrays,
* ``f.derivative(z)`` returns the exact analytic derivative,
* ``f.value_mp(z)`` evaluates one point in mpmath arithmetic; only rational
  operations are used, so the value is correct to the working precision of
  ``z``. The boundary fits use this to resolve differences far below 1e-16.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field, replace

import mpmath
import numpy as np

from . import kernels
from .disc import MoebiusTransform
from .errors import CertificationFailed, DomainError
from .herglotz import BoundaryMeasure, HerglotzData, herglotz_transform

CERTIFY_RADIUS = 1 - 1e-6
CERTIFY_TOL = 1e-9


@dataclass(frozen=True)
class SelfMapCertificate:
    max_boundary_modulus: float
    grid_size: int
    margin: float
    method: str = "sampled"


class FunctionSpec:
    """Base class; subclasses implement ``__call__``, ``derivative``, ``value_mp``."""

    kind = "abstract"

    @property
    def certified(self) -> bool:
        return True

    def __call__(self, z):
        raise NotImplementedError

    def derivative(self, z):
        raise NotImplementedError

    def value_mp(self, z):
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


def _out(v):
    v = np.asarray(v)
    return complex(v) if v.ndim == 0 else v


@dataclass(frozen=True)
class BlaschkeProduct(FunctionSpec):
    """``exp(i*rotation) * prod_k (z - a_k)/(1 - conj(a_k) z)``; zeros repeat by multiplicity."""

    rotation: float = 0.0
    zeros: tuple = ()
    kind = "blaschke"

    def __post_init__(self):
        zs = tuple(complex(a) for a in self.zeros)
        if any(not abs(a) < 1 for a in zs):
            raise ValueError("Blaschke zeros must lie in the open disc")
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "rotation", float(self.rotation))

    @property
    def unit(self):
        return cmath.exp(1j * self.rotation)

    def __call__(self, z):
        return _out(kernels.blaschke(self.zeros, self.unit, z)[0])

    def derivative(self, z):
        return _out(kernels.blaschke(self.zeros, self.unit, z)[1])

    def value_and_derivative(self, z):
        v, d = kernels.blaschke(self.zeros, self.unit, z)
        return _out(v), _out(d)

    def value_mp(self, z):
        val = mpmath.mpc(1)
        for a in self.zeros:
            val *= (z - a) / (1 - a.conjugate() * z)
        return self.unit * val

    def to_json(self):
        return {"kind": self.kind, "rotation": self.rotation,
                "zeros": [[a.real, a.imag] for a in self.zeros]}


@dataclass(frozen=True)
class HerglotzInduced(FunctionSpec):
    """``(g - 1)/(g + 1)`` for the Herglotz transform ``g`` of (measure, constant)."""

    measure: BoundaryMeasure = field(default_factory=BoundaryMeasure)
    constant: complex = 0j
    kind = "herglotz"

    def __post_init__(self):
        object.__setattr__(self, "constant", complex(self.constant))
        if self.constant.real != 0:
            raise ValueError("the Herglotz constant must be purely imaginary")

    @property
    def data(self) -> HerglotzData:
        return HerglotzData(self.measure, self.constant)

    def _g(self, z):
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(z) >= 1):
            raise DomainError("Herglotz-induced maps are evaluated strictly inside the disc")
        g, dg = kernels.herglotz(self.measure.angles, self.measure.masses, z)
        return g + self.constant, dg

    def __call__(self, z):
        g, _ = self._g(z)
        return _out((g - 1) / (g + 1))

    def derivative(self, z):
        g, dg = self._g(z)
        return _out(2 * dg / (g + 1) ** 2)

    def value_mp(self, z):
        if abs(z) >= 1:
            raise DomainError("Herglotz-induced maps are evaluated strictly inside the disc")
        g = mpmath.mpc(0)
        for theta, m in zip(self.measure.angles, self.measure.masses):
            e = cmath.exp(1j * theta)
            g += m * (e + z) / (e - z)
        g = g / (2 * mpmath.pi) + self.constant
        return (g - 1) / (g + 1)

    def to_json(self):
        return {"kind": self.kind, "measure": self.data.to_json()}


@dataclass(frozen=True)
class PolynomialMap(FunctionSpec):
    """``sum_k c_k z^k``; usable as a self-map only once certified."""

    coefficients: tuple = (0j,)
    certificate: SelfMapCertificate | None = None
    kind = "polynomial"

    def __post_init__(self):
        cs = tuple(complex(c) for c in self.coefficients) or (0j,)
        object.__setattr__(self, "coefficients", cs)

    @property
    def certified(self):
        return self.certificate is not None

    def __call__(self, z):
        return _out(np.polynomial.polynomial.polyval(np.asarray(z, dtype=complex),
                                                     self.coefficients))

    def derivative(self, z):
        d = np.polynomial.polynomial.polyder(self.coefficients)
        return _out(np.polynomial.polynomial.polyval(np.asarray(z, dtype=complex), d))

    def value_mp(self, z):
        acc = mpmath.mpc(0)
        for c in reversed(self.coefficients):
            acc = acc * z + c
        return acc

    def to_json(self):
        out = {"kind": self.kind, "coefficients": [[c.real, c.imag] for c in self.coefficients]}
        if self.certificate is not None and self.certificate.method == "asserted":
            out["assume_self_map"] = True
        return out


@dataclass(frozen=True)
class Composition(FunctionSpec):
    """``outer o inner``."""

    outer: FunctionSpec = None
    inner: FunctionSpec = None
    certificate: SelfMapCertificate | None = None
    kind = "composition"

    @property
    def certified(self):
        return self.certificate is not None or (self.outer.certified and self.inner.certified)

    def __call__(self, z):
        return self.outer(self.inner(z))

    def derivative(self, z):
        w = self.inner(z)
        return _out(self.outer.derivative(w) * self.inner.derivative(z))

    def value_mp(self, z):
        return self.outer.value_mp(self.inner.value_mp(z))

    def to_json(self):
        return {"kind": self.kind, "outer": self.outer.to_json(), "inner": self.inner.to_json()}


@dataclass(frozen=True)
class MoebiusMap(FunctionSpec):
    transform: MoebiusTransform = MoebiusTransform()
    kind = "moebius"

    def __call__(self, z):
        return _out(self.transform(np.asarray(z, dtype=complex)))

    def derivative(self, z):
        return _out(self.transform.derivative(np.asarray(z, dtype=complex)))

    def value_mp(self, z):
        return self.transform(z)

    def to_json(self):
        return self.transform.to_json()


# -- constructors for the named examples ------------------------------------

def identity() -> BlaschkeProduct:
    return BlaschkeProduct(0.0, (0j,))


def power(n: int) -> BlaschkeProduct:
    return BlaschkeProduct(0.0, (0j,) * n)


def extremal(a: float) -> BlaschkeProduct:
    """``z (z + a)/(1 + a z)``, equality case of the boundary derivative bound."""
    return BlaschkeProduct(0.0, (0j, complex(-a)))


def polynomial(coefficients, *, certify: bool = True, grid: int = 4096) -> PolynomialMap:
    p = PolynomialMap(tuple(coefficients))
    return certified(p, grid) if certify else p


def cubic_counterexample() -> PolynomialMap:
    """``z - (z - 1)^3 / 10``: agrees with the identity to third order at 1."""
    # z - (z^3 - 3z^2 + 3z - 1)/10
    return polynomial([0.1, 0.7, 0.3, -0.1])


def chelst_example() -> PolynomialMap:
    """``z^8 - (z + 1)[(z^2 + 1)(z^4 + 1)]^2 (z - 1)^4 / 256``."""
    P = np.polynomial.polynomial
    q = P.polymul([1, 0, 1], [1, 0, 0, 0, 1])
    corr = P.polymul(P.polymul([1, 1], P.polymul(q, q)), P.polypow([-1, 1], 4)) / 256
    c = -np.asarray(corr, dtype=complex)
    c = np.pad(c, (0, max(0, 9 - len(c))))
    c[8] += 1
    return polynomial(c)


# -- module-level operations -------------------------------------------------

def _check_closed_disc(z):
    if np.any(np.abs(np.asarray(z)) > 1 + 1e-12):
        raise DomainError("evaluation points must lie in the closed disc")


def evaluate(f: FunctionSpec, z):
    _check_closed_disc(z)
    return f(z)


def derivative(f: FunctionSpec, z):
    _check_closed_disc(z)
    return f.derivative(z)


def certify_self_map(f: FunctionSpec, grid: int = 1024) -> SelfMapCertificate:
    """Certify ``f: D -> D`` by sampling ``|f|`` near the unit circle.

    Blaschke products, automorphisms and Herglotz-induced maps are self-maps
    by construction and are certified without sampling. Anything else is
    sampled at ``grid`` angles on the circle of radius ``1 - 1e-6``.

    Raises
    ------
    CertificationFailed
        If some sample exceeds modulus ``1 + 1e-9``.
    """
    if grid < 256:
        raise ValueError("certification needs at least 256 samples")
    if isinstance(f, (BlaschkeProduct, MoebiusMap)):
        return SelfMapCertificate(1.0, 0, 0.0, "analytic")
    if isinstance(f, HerglotzInduced):
        return SelfMapCertificate(1.0, 0, 0.0, "analytic")
    z = CERTIFY_RADIUS * np.exp(2j * np.pi * np.arange(grid) / grid)
    if isinstance(f, Composition):
        inner = np.asarray(f.inner(z))
        k = int(np.argmax(np.abs(inner)))
        if abs(inner[k]) > 1 + CERTIFY_TOL:
            raise CertificationFailed(complex(z[k]), float(abs(inner[k])))
        # the outer map may be singular on the circle (Herglotz atoms)
        inner = np.where(np.abs(inner) >= 1, inner / np.abs(inner) * CERTIFY_RADIUS, inner)
        w = np.abs(np.asarray(f.outer(inner)))
    else:
        w = np.abs(np.asarray(f(z)))
    k = int(np.argmax(w))
    if w[k] > 1 + CERTIFY_TOL:
        raise CertificationFailed(complex(z[k]), float(w[k]))
    return SelfMapCertificate(float(w[k]), grid, float(1 - w[k]))


def certified(f: FunctionSpec, grid: int = 1024) -> FunctionSpec:
    """Return ``f`` with a certificate attached (a no-op for inner maps)."""
    if isinstance(f, PolynomialMap):
        return replace(f, certificate=certify_self_map(f, grid))
    if isinstance(f, Composition):
        outer = certified(f.outer, grid)
        inner = certified(f.inner, grid)
        g = Composition(outer, inner)
        return replace(g, certificate=certify_self_map(g, grid))
    certify_self_map(f, max(grid, 256))
    return f


def assume_self_map(f: PolynomialMap) -> PolynomialMap:
    """Attach an unchecked certificate; used to inject deliberately bad maps."""
    return replace(f, certificate=SelfMapCertificate(float("nan"), 0, float("nan"), "asserted"))


def taylor_coefficients(f, n: int, radius: float = 0.5, nodes: int | None = None,
                        return_error: bool = False):
    """First ``n`` Taylor coefficients at 0 by a discrete Cauchy integral.

    ``f`` is any vectorized analytic callable. The integral uses
    ``max(8 n, 64)`` equispaced nodes on the circle of the given radius (or
    more if ``nodes`` asks for it); aliasing then enters at ``radius**64``.

    Returns
    -------
    coeffs : ndarray of complex, shape (n,)
    error_bound : float, only if ``return_error``
        ``radius**n / (1 - radius) * max|f|`` on the sampling circle.
    """
    if not 0 < radius <= 0.9:
        raise ValueError("radius must lie in (0, 0.9]")
    N = max(8 * n, 64, nodes or 0)
    w = radius * np.exp(2j * np.pi * np.arange(N) / N)
    samples = np.asarray(f(w), dtype=complex)
    c = np.fft.fft(samples)[:n] / N / radius ** np.arange(n)
    if return_error:
        return c, float(radius ** n / (1 - radius) * np.abs(samples).max())
    return c


# -- JSON ---------------------------------------------------------------------

def _cplx(pair) -> complex:
    if isinstance(pair, (int, float)):
        return complex(pair)
    if len(pair) != 2:
        raise ValueError(f"complex numbers are [re, im] pairs, got {pair!r}")
    return complex(float(pair[0]), float(pair[1]))


def from_json(obj: dict, *, certify: bool = False) -> FunctionSpec:
    """Decode the tagged-union JSON form of a map.

    Polynomials flagged ``"assume_self_map": true`` carry an asserted
    certificate; other polynomials are certified here when ``certify`` is set.
    """
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("a function spec is an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "blaschke":
        return BlaschkeProduct(float(obj.get("rotation", 0.0)),
                               tuple(_cplx(a) for a in obj.get("zeros", [])))
    if kind == "herglotz":
        h = HerglotzData.from_json(obj.get("measure", obj))
        return HerglotzInduced(h.measure, h.constant)
    if kind == "polynomial":
        p = PolynomialMap(tuple(_cplx(c) for c in obj["coefficients"]))
        if obj.get("assume_self_map"):
            return assume_self_map(p)
        return certified(p) if certify else p
    if kind == "composition":
        g = Composition(from_json(obj["outer"], certify=certify),
                        from_json(obj["inner"], certify=certify))
        return certified(g) if certify and not g.certified else g
    if kind == "moebius":
        return MoebiusMap(MoebiusTransform(float(obj.get("rotation", 0.0)),
                                           _cplx(obj.get("center", [0, 0]))))
    raise ValueError(f"unknown function kind {kind!r}")


def to_json(f: FunctionSpec) -> dict:
    return f.to_json()


def herglotz_map(data: HerglotzData) -> HerglotzInduced:
    return HerglotzInduced(data.measure, data.constant)


def cayley_lift(f: FunctionSpec):
    """Vectorized ``z -> (1 + f(z))/(1 - f(z))``."""
    def g(z):
        w = np.asarray(f(z), dtype=complex)
        return (1 + w) / (1 - w)
    return g


__all__ = [
    "SelfMapCertificate", "FunctionSpec", "BlaschkeProduct", "HerglotzInduced",
    "PolynomialMap", "Composition", "MoebiusMap", "identity", "power", "extremal",
    "polynomial", "cubic_counterexample", "chelst_example", "evaluate", "derivative",
    "certify_self_map", "certified", "assume_self_map", "taylor_coefficients",
    "from_json", "to_json", "herglotz_map", "cayley_lift", "herglotz_transform",
]
