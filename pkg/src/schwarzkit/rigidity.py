"""Verifiers for the disc Schwarz inequalities and boundary rigidity statements.

Every verifier returns a :class:`~schwarzkit.report.VerificationReport`.
A report is ``violated`` only when the inequality fails beyond its tolerance,
or when a rigidity hypothesis is met and the conclusion is not; maps that
simply do not satisfy the hypotheses are reported as ``holds`` with
the failing clause named in ``details``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import boundary as bd
from . import herglotz as hz
from .disc import boundary_point, fit_moebius
from .errors import CertificationMissing, DomainError, NotOriginFixing, NotPSD
from .holomap import (BlaschkeProduct, FunctionSpec, cayley_lift, identity,
                      taylor_coefficients)
from .report import EQUALITY, HOLDS, VIOLATED, VerificationReport, digest

SP_TOL = 1e-10
SP_EQUALITY = 1e-9
AUTOMORPHISM_FIT_TOL = 1e-8
OSSERMAN_TOL = 1e-6
INTERIOR_TOL = 1e-9
ARC_TOL = 1e-8
IDENTITY_MASS = 1e-6
CONTACT_GATE = 3.9
SECOND_ORDER_GATE = 1.9


def _require_certified(f: FunctionSpec):
    if not f.certified:
        raise CertificationMissing(f"{f.kind} map has no self-map certificate")


def _require_origin_fixed(f: FunctionSpec, tol: float = 1e-12):
    v = complex(f(0j))
    if abs(v) > tol:
        raise NotOriginFixing(f"f(0) = {v}")


def _random_disc_points(rng, n, radius=0.99):
    r = radius * np.sqrt(rng.uniform(0, 1, n))
    return r * np.exp(2j * np.pi * rng.uniform(0, 1, n))


# -- Schwarz-Pick ------------------------------------------------------------

def verify_schwarz_pick(f: FunctionSpec, a, b) -> VerificationReport:
    """Contraction of the pseudohyperbolic metric and the derivative bound at ``a``.

    A slack below ``1e-9`` triggers the uniqueness check: an automorphism is
    fitted through three samples of ``f`` and compared at ten more points. The
    verdict is ``equality`` exactly when that fit succeeds.
    """
    _require_certified(f)
    a, b = complex(a), complex(b)
    if a == b:
        raise ValueError("the two points must differ")
    rep = VerificationReport("schwarz-pick", digest([f, a, b]),
                             tolerances={"slack": SP_TOL, "equality": SP_EQUALITY,
                                         "automorphism_fit": AUTOMORPHISM_FIT_TOL})
    fa, fb = complex(f(a)), complex(f(b))
    dfa = complex(f.derivative(a))
    rho_ab = abs((b - a) / (1 - a.conjugate() * b))
    rho_f = abs((fb - fa) / (1 - fa.conjugate() * fb))
    rep.add("distance", a, rho_ab - rho_f)
    rep.add("derivative", a, (1 - abs(fa) ** 2) / (1 - abs(a) ** 2) - abs(dfa))
    if rep.min_slack < -SP_TOL:
        rep.verdict, rep.witness = VIOLATED, a
        return rep
    if rep.min_slack < SP_EQUALITY:
        m = fit_moebius(f)
        probes = 0.8 * np.exp(2j * np.pi * np.arange(10) / 10) * np.linspace(0.2, 1, 10)
        if m is not None:
            err = float(np.max(np.abs(np.asarray(f(probes)) - m(probes))))
            rep.details["automorphism_fit_error"] = err
            if err < AUTOMORPHISM_FIT_TOL:
                rep.verdict = EQUALITY
                rep.details["automorphism"] = {"rotation": m.rotation, "center": m.center}
                return rep
        rep.details["near_equality_without_automorphism"] = True
    return rep


# -- boundary derivative bound --------------------------------------------

def refined_schwarz_bound(z, d0):
    """``|z| (|z| + d0)/(1 + d0 |z|)``, the bound on ``|f(z)|`` given ``|f'(0)| = d0``."""
    r = np.abs(z)
    return r * (r + d0) / (1 + d0 * r)


def verify_osserman(f: FunctionSpec, b=1.0, interior_samples: int = 1000,
                    seed: int = 0) -> VerificationReport:
    """Boundary derivative bound ``|f'(b)| >= 2/(1 + |f'(0)|)`` for ``f(0) = 0``.

    Also checks the interior bound ``|f(z)| <= |z|(|z| + |f'(0)|)/(1 + |f'(0)||z|)``
    at random points, and the radial chain
    ``|f(z) - c|/(1 - |z|) >= (1 - |f(z)|)/(1 - |z|) >= 2/(1 + |f'(0)|)``
    at ``z = t_j b`` for ``j = 21..24``.
    """
    _require_certified(f)
    _require_origin_fixed(f)
    b = boundary_point(b)
    rep = VerificationReport("osserman", digest([f, b, interior_samples, seed]),
                             tolerances={"boundary": OSSERMAN_TOL, "interior": INTERIOR_TOL,
                                         "equality": OSSERMAN_TOL})
    d0 = abs(complex(f.derivative(0j)))
    bound = 2 / (1 + d0)
    c, q = bd.angular_derivative_estimate(f, b)
    fb = abs(q.value)
    rep.add("boundary_derivative", b, fb - bound)
    rep.details.update({"f_prime_0": d0, "f_prime_b": fb, "bound": bound,
                        "boundary_value": c, "extrapolation_error": q.error})

    rng = np.random.default_rng(seed)
    z = _random_disc_points(rng, interior_samples)
    s = refined_schwarz_bound(z, d0) - np.abs(np.asarray(f(z)))
    k = int(np.argmin(s))
    rep.add("interior_refined_bound", complex(z[k]), s[k])

    js = np.arange(21, 25)
    t = 1 - 2.0 ** -js
    fz = np.asarray(f(t * b))
    ratio = (1 - np.abs(fz)) / (1 - t)
    chord = np.abs(fz - c) / (1 - t)
    rep.add("radial_ratio", b, float(np.min(ratio)) - bound)
    rep.add("chord_vs_ratio", b, float(np.min(chord - ratio)))

    bad_boundary = min(rep.slacks[0][2], rep.slacks[2][2], rep.slacks[3][2]) < -OSSERMAN_TOL
    if bad_boundary or rep.slacks[1][2] < -INTERIOR_TOL:
        rep.verdict = VIOLATED
        rep.witness = b if bad_boundary else complex(z[k])
    elif abs(fb - bound) <= OSSERMAN_TOL:
        rep.verdict = EQUALITY
    return rep


# -- boundary arc length --------------------------------------------------

def verify_loewner_velling(f: BlaschkeProduct, arc) -> VerificationReport:
    """``sigma >= s`` and ``sigma >= 2 s/(1 + |f'(0)|)`` for the image of an arc."""
    if not isinstance(f, BlaschkeProduct):
        raise TypeError("arc lengths are computed for finite Blaschke products")
    _require_origin_fixed(f)
    t1, t2 = map(float, arc)
    s = t2 - t1
    sigma = bd.arc_image_length(f, (t1, t2))
    d0 = abs(complex(f.derivative(0j)))
    rep = VerificationReport("loewner", digest([f, t1, t2]),
                             tolerances={"slack": ARC_TOL, "quadrature": 1e-9})
    mid = complex(np.exp(0.5j * (t1 + t2)))
    rep.add("loewner", mid, sigma - s)
    rep.add("velling", mid, sigma - 2 * s / (1 + d0))
    rep.details.update({"arc_length": s, "image_length": sigma, "f_prime_0": d0})
    if rep.min_slack < -ARC_TOL:
        rep.verdict, rep.witness = VIOLATED, mid
    elif rep.min_slack <= ARC_TOL:
        rep.verdict = EQUALITY
    return rep


# -- boundary rigidity at a fixed point ------------------------------------

@dataclass
class RigidityVerdict:
    classification: str  # "Identity" | "NonIdentity"
    contact_order: bd.ContactFit
    remainder_mass: float
    details: VerificationReport
    atom_weight: float = 0.0
    constant: complex = 0j

    @property
    def hypothesis_held(self) -> bool:
        return self.contact_order.order >= CONTACT_GATE

    @property
    def is_identity(self) -> bool:
        return self.classification == "Identity"


def herglotz_decomposition(phi, degree: int = 12, radius: float = 0.5) -> dict:
    """Moments of the Herglotz measure of ``(1 + phi)/(1 - phi)`` and its split ``t delta_0 + nu``.

    ``t`` is the moment weight of the atom at angle 0 (``t = 1`` is the atom of
    the identity map) and ``nu`` is the positive remainder.
    """
    c = taylor_coefficients(cayley_lift(phi), degree + 1, radius)
    moments, constant = hz.moments_from_map(c)
    pos = hz.herglotz_positivity(moments)
    try:
        t, rem = hz.decompose_delta0(moments)
    except NotPSD:
        t, rem = 0.0, moments
    return {"moments": moments, "constant": constant, "positivity": pos,
            "atom_weight": t, "remainder": rem,
            "remainder_mass": max(rem.mass, 0.0)}


def burns_krantz_classify(phi: FunctionSpec, degree: int = 12, radius: float = 0.5,
                          contact=None) -> RigidityVerdict:
    """Classify ``phi`` as the identity or not through its Herglotz measure.

    ``Identity`` requires the measure to be exactly the unit atom at angle 0
    (remainder mass and atom-weight defect below ``1e-6``, constant below
    ``1e-6``) and a fitted contact order with the identity at 1 of at least
    3.9. The report is ``violated`` when the contact hypothesis holds but the
    map is classified ``NonIdentity``.
    """
    if isinstance(phi, FunctionSpec):
        _require_certified(phi)
    if contact is None:
        contact = bd.contact_order(phi, identity(), 1.0)
    dec = herglotz_decomposition(phi, degree, radius)
    t, C, mass = dec["atom_weight"], dec["constant"], dec["remainder_mass"]
    by_measure = mass < IDENTITY_MASS and abs(t - 1) < IDENTITY_MASS and abs(C) < IDENTITY_MASS
    hypothesis = contact.order >= CONTACT_GATE
    cls = "Identity" if by_measure and hypothesis else "NonIdentity"
    rep = VerificationReport("burns-krantz",
                             digest([phi if isinstance(phi, FunctionSpec) else repr(phi),
                                     degree, radius]),
                             tolerances={"remainder_mass": IDENTITY_MASS,
                                         "contact_gate": CONTACT_GATE,
                                         "psd_relative": 1e-10})
    rep.add("remainder_mass", 1 + 0j, -mass)
    rep.details.update({
        "classification": cls,
        "hypothesis_held": hypothesis,
        "identity_by_measure": by_measure,
        "contact": contact.to_json(),
        "atom_weight": t,
        "constant": C,
        "remainder_mass": mass,
        "toeplitz_psd": dec["positivity"].psd,
        "min_eigenvalue": dec["positivity"].min_eigenvalue,
        "degree": degree,
        "radius": radius,
    })
    if hypothesis and cls == "NonIdentity":
        rep.verdict, rep.witness = VIOLATED, 1 + 0j
    return RigidityVerdict(cls, contact, mass, rep, t, C)


def verify_schwarz_uniqueness_origin(f: FunctionSpec, samples: int = 100,
                                     seed: int = 0) -> VerificationReport:
    """If ``f(0) = 0`` and ``f'(0) = 1`` then ``f`` is the identity."""
    _require_certified(f)
    _require_origin_fixed(f)
    d = complex(f.derivative(0j))
    rep = VerificationReport("schwarz-uniqueness", digest([f, samples, seed]),
                             tolerances={"trigger": 1e-10, "identity": 1e-8})
    rep.details["f_prime_0"] = d
    triggered = abs(d - 1) < 1e-10
    rep.details["hypothesis_triggered"] = triggered
    if triggered:
        z = _random_disc_points(np.random.default_rng(seed), samples)
        err = np.abs(np.asarray(f(z)) - z)
        k = int(np.argmax(err))
        rep.add("identity", complex(z[k]), 1e-8 - err[k])
        rep.details["identity_confirmed"] = bool(err[k] < 1e-8)
        if err[k] >= 1e-8:
            rep.verdict, rep.witness = VIOLATED, complex(z[k])
    return rep


# -- rigidity relative to a Blaschke product --------------------------------

def chelst_h_function(f: FunctionSpec, B: BlaschkeProduct, z):
    """``Re[(1 + f)/(1 - f)] - Re[(1 + B)/(1 - B)]``."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise DomainError("h is evaluated on the open disc")
    fz = np.asarray(f(z), dtype=complex)
    Bz = np.asarray(B(z), dtype=complex)
    if np.any(np.abs(1 - fz) < 1e-14) or np.any(np.abs(1 - Bz) < 1e-14):
        raise DomainError("h is singular where f or B equals 1")
    h = np.real((1 + fz) / (1 - fz)) - np.real((1 + Bz) / (1 - Bz))
    return float(h) if h.ndim == 0 else h


def _chelst_grid(A_B, n=1000, exclusion=1e-3):
    nr = 20
    nt = n // nr
    r = np.linspace(0.05, 0.999, nr)
    t = 2 * np.pi * (np.arange(nt) + 0.5) / nt
    z = (r[:, None] * np.exp(1j * t)[None, :]).ravel()
    keep = np.ones(z.shape, bool)
    for p in A_B:
        keep &= np.abs(z - p) > exclusion
    return z[keep]


def verify_chelst(f: FunctionSpec, B: BlaschkeProduct, A_B, designated=None) -> VerificationReport:
    """Check the hypotheses and conclusion of the Blaschke rigidity statement.

    ``A_B`` lists the boundary points where ``B = 1``; the designated point
    (default: the first) needs contact order 4 with ``B``, the others order 2.
    The report names which hypotheses held and whether ``f = B`` on the grid;
    it is ``violated`` only if all hypotheses hold and the conclusion fails.
    """
    _require_certified(f)
    A_B = [boundary_point(p) for p in A_B]
    for p in A_B:
        lim = bd.radial_limit(B, p).value
        if abs(lim - 1) >= 1e-8:
            raise DomainError(f"B({p}) = {lim} is not 1")
    a = A_B[0] if designated is None else boundary_point(designated)
    others = [p for p in A_B if abs(p - a) > 1e-12]

    rep = VerificationReport("chelst", digest([f, B, A_B, a]),
                             tolerances={"h_nonnegative": 1e-8, "order_a": CONTACT_GATE,
                                         "order_b": SECOND_ORDER_GATE, "conclusion": 1e-7,
                                         "exclusion_radius": 1e-3})
    z = _chelst_grid(A_B)
    fz, Bz = np.asarray(f(z)), np.asarray(B(z))
    ok = (np.abs(1 - fz) >= 1e-14) & (np.abs(1 - Bz) >= 1e-14)
    h = chelst_h_function(f, B, z[ok])
    k = int(np.argmin(h))
    rep.add("h_nonnegative", complex(z[ok][k]), h[k] + 1e-8)

    fit_a = bd.contact_order(f, B, a)
    fits_b = {p: bd.contact_order(f, B, p) for p in others}
    hyp_a = fit_a.order >= CONTACT_GATE
    failed_b = [p for p, fit in fits_b.items() if fit.order < SECOND_ORDER_GATE]
    dev = np.abs(fz - Bz)
    kk = int(np.argmax(dev))
    conclusion = bool(dev[kk] < 1e-7)
    hypotheses = hyp_a and not failed_b

    rep.details.update({
        "designated_point": a,
        "order_at_designated": fit_a.to_json(),
        "orders_at_others": [{"point": p, **fits_b[p].to_json()} for p in others],
        "hypothesis_a": hyp_a,
        "hypothesis_b": not failed_b,
        "hypothesis_b_fails_at": failed_b,
        "h_nonnegative": bool(h[k] >= -1e-8),
        "h_min": float(h[k]),
        "conclusion": conclusion,
        "max_deviation": float(dev[kk]),
    })
    if hypotheses and (not conclusion or h[k] < -1e-8):
        rep.verdict = VIOLATED
        rep.witness = complex(z[kk]) if not conclusion else complex(z[ok][k])
    return rep


def perturbed_square(eps: float = 1e-3):
    """``z^2 - eps (z + 1)(z - 1)^4``: order 4 against ``z^2`` at 1, order 1 at -1.

    On the circle ``|f/z^2|^2 = 1 - 64 eps c^2 s^4 (1 - 16 eps s^4)`` with
    ``c, s = cos, sin`` of half the angle, so this is a self-map for ``eps <= 1/16``.
    """
    from .holomap import polynomial
    P = np.polynomial.polynomial
    corr = eps * P.polymul([1, 1], P.polypow([-1, 1], 4))
    c = -np.asarray(corr, dtype=complex)
    c[2] += 1
    return polynomial(c)


__all__ = [
    "RigidityVerdict", "verify_schwarz_pick", "verify_osserman", "verify_loewner_velling",
    "burns_krantz_classify", "herglotz_decomposition", "verify_schwarz_uniqueness_origin",
    "chelst_h_function", "verify_chelst", "refined_schwarz_bound", "perturbed_square",
    "math",
]
