"""Boundary behaviour of disc maps.

Radial quantities are sampled at ``t_j = 1 - 2**-j`` toward a boundary point
``b`` and extrapolated with a two-level Richardson table (error terms of order
``h`` and ``h**2`` with ``h = 2**-j`` removed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .disc import boundary_point
from .errors import (CollarHypothesisViolated, NonConvergent, NotNonnegative,
                     NotUnimodularLimit, NotVanishingAtP)
from .holomap import BlaschkeProduct, FunctionSpec

LIMIT_J = (4, 20)
DERIVATIVE_J = (4, 16)
CONTACT_J = (6, 16)
CONTACT_ZERO = 1e-13
FLOAT_NOISE = 1e-13
# coefficients are doubles, so a map's own representation error (~1e-17) bounds
# what the high-precision differences can resolve
MP_NOISE = 1e-15
MP_DPS = 60


@dataclass(frozen=True)
class RadialProbe:
    boundary_point: complex
    radii: np.ndarray
    values: np.ndarray

    @classmethod
    def sample(cls, f, b, j_range=LIMIT_J) -> "RadialProbe":
        b = boundary_point(b)
        t = 1.0 - 2.0 ** -np.arange(j_range[0], j_range[1] + 1)
        return cls(b, t, np.asarray(f(t * b), dtype=complex))


@dataclass(frozen=True)
class Limit:
    value: complex
    error: float


@dataclass(frozen=True)
class ContactFit:
    order: float
    coefficient_modulus: float
    residual: float
    points_used: int = 0

    @property
    def infinite(self) -> bool:
        return math.isinf(self.order)

    def to_json(self) -> dict:
        return {"order": "inf" if self.infinite else self.order,
                "coefficient_modulus": self.coefficient_modulus,
                "residual": self.residual, "points_used": self.points_used}


@dataclass(frozen=True)
class HopfReport:
    normal_derivative: float
    harnack_constant: float
    verdict: str  # "StrictlyNegative" | "Inconclusive"
    minimum_on_ball: float = 0.0


@dataclass(frozen=True)
class CollarVerdict:
    holds: bool
    minimum: float
    collar_minimum: float


def richardson(values) -> np.ndarray:
    """Two-level Richardson table for step ratio 2, orders 1 and 2.

    Entry ``k`` combines ``values[k..k+2]``; the returned array is two shorter
    than the input.
    """
    v = np.asarray(values, dtype=complex)
    r1 = 2 * v[1:] - v[:-1]
    return (4 * r1[1:] - r1[:-1]) / 3


def _extrapolate(values, threshold=1e-4) -> Limit:
    r = richardson(values)
    err = float(abs(r[-1] - r[-2]))
    if not err <= threshold:
        raise NonConvergent(f"successive extrapolants differ by {err:.3e}")
    return Limit(complex(r[-1]), err)


def radial_limit(f, b, j_range=LIMIT_J) -> Limit:
    """Extrapolated limit of ``f(t b)`` as ``t -> 1``."""
    probe = RadialProbe.sample(f, b, j_range)
    return _extrapolate(probe.values)


def angular_derivative_estimate(f, b, j_range=DERIVATIVE_J) -> tuple[complex, Limit]:
    """Boundary value ``c`` and the extrapolated difference quotient at ``b``.

    The quotients are ``(f(t_j b) - c)/(t_j b - b)``.
    """
    b = boundary_point(b)
    c = radial_limit(f, b).value
    if abs(abs(c) - 1) > 1e-6:
        raise NotUnimodularLimit(f"|f({b})| = {abs(c):.12g} is not 1")
    probe = RadialProbe.sample(f, b, j_range)
    q = (probe.values - c) / (probe.radii * b - b)
    return c, _extrapolate(q)


def angular_derivative(f, b, j_range=DERIVATIVE_J) -> float:
    """``|f'(b)|`` from radial difference quotients."""
    return abs(angular_derivative_estimate(f, b, j_range)[1].value)


def boundary_ratios(f, b, js) -> np.ndarray:
    """``(1 - |f(t_j b)|)/(1 - t_j)`` for the given exponents ``j``."""
    b = boundary_point(b)
    h = 2.0 ** -np.asarray(js, dtype=float)
    return (1 - np.abs(np.asarray(f((1 - h) * b)))) / h


def _differences(f, reference, b, js):
    h = [2.0 ** -j for j in js]
    if isinstance(f, FunctionSpec) and isinstance(reference, FunctionSpec):
        with mpmath.workdps(MP_DPS):
            out = []
            for hj in h:
                z = mpmath.mpf(1 - hj) * mpmath.mpc(b)
                out.append(float(abs(f.value_mp(z) - reference.value_mp(z))))
        return np.array(out), MP_NOISE
    z = (1 - np.array(h)) * b
    return np.abs(np.asarray(f(z)) - np.asarray(reference(z))), FLOAT_NOISE


def contact_order(f, reference, b, j_range=CONTACT_J) -> ContactFit:
    """Fit ``|f - reference| ~ C |z - b|^k`` along the radius to ``b``.

    When both maps are :class:`FunctionSpec` instances the differences are
    computed in 60-digit arithmetic (noise floor 1e-15, set by the double
    precision parameters of the maps), otherwise in double precision (noise
    floor 1e-13); probes below the floor are left out of the fit. If every
    probe differs by less than ``1e-13`` the order is reported as ``inf``.
    """
    b = boundary_point(b)
    js = np.arange(j_range[0], j_range[1] + 1)
    diff, noise = _differences(f, reference, b, js)
    if np.all(diff < CONTACT_ZERO):
        return ContactFit(math.inf, 0.0, 0.0, 0)
    keep = diff > noise
    x = -js[keep] * math.log(2.0)
    y = np.log(diff[keep])
    if keep.sum() == 1:
        return ContactFit(0.0, float(diff[keep][0]), 0.0, 1)
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return ContactFit(float(slope), float(math.exp(intercept)), resid, int(keep.sum()))


def _adaptive_simpson(fun, a, b, tol, max_level=40):
    """Level-synchronous adaptive Simpson; each pass halves unresolved panels."""
    if b == a:
        return 0.0
    length = b - a
    edges = np.linspace(a, b, 9)
    left, right = edges[:-1], edges[1:]
    fl, fr = fun(left), fun(right)
    fm = fun(0.5 * (left + right))
    total = 0.0
    for _ in range(max_level):
        mid = 0.5 * (left + right)
        q1, q3 = 0.5 * (left + mid), 0.5 * (mid + right)
        f1, f3 = fun(q1), fun(q3)
        w = right - left
        whole = w / 6 * (fl + 4 * fm + fr)
        halves = w / 12 * (fl + 4 * f1 + 2 * fm + 4 * f3 + fr)
        ok = np.abs(halves - whole) <= 15 * tol * w / length
        total += float(np.sum(halves[ok] + (halves[ok] - whole[ok]) / 15))
        if ok.all():
            return total
        nl = np.concatenate([left[~ok], mid[~ok]])
        nr = np.concatenate([mid[~ok], right[~ok]])
        nfl = np.concatenate([fl[~ok], fm[~ok]])
        nfr = np.concatenate([fm[~ok], fr[~ok]])
        nfm = np.concatenate([f1[~ok], f3[~ok]])
        left, right, fl, fr, fm = nl, nr, nfl, nfr, nfm
    raise NonConvergent("adaptive Simpson did not meet the tolerance")


def arc_image_length(B: BlaschkeProduct, arc, tol: float = 1e-9) -> float:
    """Length of ``B(arc)`` counted with multiplicity: integral of ``|B'(e^{i theta})|``."""
    if not isinstance(B, BlaschkeProduct):
        raise TypeError("arc_image_length is defined for finite Blaschke products")
    t1, t2 = map(float, arc)
    if not 0 <= t2 - t1 <= 2 * math.pi + 1e-15:
        raise ValueError("arc must satisfy 0 <= theta2 - theta1 <= 2 pi")
    return _adaptive_simpson(lambda t: np.abs(B.derivative(np.exp(1j * t))), t1, t2, tol)


def _sample_disc(center, radius, n, rng):
    r = radius * np.sqrt(rng.uniform(0, 1, n))
    th = rng.uniform(0, 2 * np.pi, n)
    return center + r * np.exp(1j * th)


def hopf_check(F, P, R: float = 1.0, samples: int = 1000, seed: int = 0) -> HopfReport:
    """Hopf-lemma check for ``u = Re F`` at the boundary point ``P``.

    ``u`` must be nonnegative on the disc of radius ``R`` internally tangent at
    ``P`` and vanish at ``P``. The outward normal derivative is extrapolated
    from one-sided differences along the inward radius. The Harnack floor
    comes from ``c = min u`` on the concentric circle of radius ``R/2``: the
    barrier ``c log(R/r)/log 2`` on the annulus gives
    ``du/dnu <= -c/(R log 2) =: -c'``. The verdict is ``StrictlyNegative``
    when the estimate is at most ``-c'/2``.
    """
    P = boundary_point(P)
    if not 0 < R <= 1:
        raise ValueError("the tangent disc radius must lie in (0, 1]")

    def u(z):
        return np.real(np.asarray(F(z)))

    rng = np.random.default_rng(seed)
    center = (1 - R) * P
    pts = _sample_disc(center, R * (1 - 1e-9), samples, rng)
    vals = u(pts)
    k = int(np.argmin(vals))
    if vals[k] < -1e-10:
        raise NotNonnegative(f"u({pts[k]:.6g}) = {vals[k]:.3e} < 0 on the tangent disc")
    uP = float(u(P))
    if abs(uP) > 1e-10:
        raise NotVanishingAtP(f"u(P) = {uP:.3e}")
    h = R * 2.0 ** -np.arange(4, 21)
    quot = (uP - u(P - h * P)) / h
    nd = float(_extrapolate(quot).value.real)
    ring = center + 0.5 * R * np.exp(2j * np.pi * np.arange(samples) / samples)
    c = float(u(ring).min())
    c_prime = c / (R * math.log(2.0))
    verdict = "StrictlyNegative" if nd <= -c_prime / 2 else "Inconclusive"
    return HopfReport(nd, c_prime, verdict, float(vals[k]))


def _polar_grid(r0, r1, n):
    nr = max(2, int(math.sqrt(n / 4)))
    nt = max(8, n // nr)
    r = np.linspace(r0, r1, nr)
    t = 2 * np.pi * np.arange(nt) / nt
    return (r[:, None] * np.exp(1j * t)[None, :]).ravel()


def collar_positivity(F, collar_inner_radius: float, samples: int = 1000) -> CollarVerdict:
    """``u = Re F >= 0`` on the collar ``r0 <= |z| < 1`` implies ``u >= 0`` on the disc.

    Raises
    ------
    CollarHypothesisViolated
        If ``u`` is negative somewhere on the sampled collar.
    """
    def u(z):
        return np.real(np.asarray(F(z)))

    collar = _polar_grid(collar_inner_radius, 1 - 1e-6, samples)
    cmin = float(u(collar).min())
    if cmin < -1e-10:
        raise CollarHypothesisViolated(f"u reaches {cmin:.3e} on the collar")
    disc = _polar_grid(0.0, 1 - 1e-6, samples)
    m = float(u(disc).min())
    return CollarVerdict(m >= -1e-10, m, cmin)
