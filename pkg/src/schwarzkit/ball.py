"""Geometry of the unit ball in C^2.

Ball automorphisms are linear-fractional, so they are stored as 3x3 matrices
acting on ``(z1, z2, 1)``; composition and inversion are matrix operations.
Points are complex arrays whose first axis has length 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import boundary as bd
from .errors import CertificationFailed, CertificationMissing, ConstantDisc, DegenerateLine, DomainError
from .holomap import FunctionSpec, from_json as disc_from_json
from .report import VerificationReport, digest

E1 = np.array([1.0 + 0j, 0j])
CERTIFY_RADIUS = 1 - 1e-6
CERTIFY_TOL = 1e-9
G2_TOL = 1e-7


def as_point(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if z.shape[0] != 2:
        raise ValueError("ball points have two coordinates along the first axis")
    return z


def norm2(z) -> np.ndarray:
    z = as_point(z)
    return np.abs(z[0]) ** 2 + np.abs(z[1]) ** 2


def sphere_point(z) -> np.ndarray:
    z = as_point(z)
    return z / np.sqrt(norm2(z))


def _apply_matrix(M, z):
    z = as_point(z)
    num0 = M[0, 0] * z[0] + M[0, 1] * z[1] + M[0, 2]
    num1 = M[1, 0] * z[0] + M[1, 1] * z[1] + M[1, 2]
    den = M[2, 0] * z[0] + M[2, 1] * z[1] + M[2, 2]
    return np.stack([num0 / den, num1 / den])


def lambda_matrix(alpha) -> np.ndarray:
    """Projective matrix of ``lambda_alpha``; it fixes ``(1, 0)`` and sends 0 to ``(|a|^2, a w)``."""
    a = complex(alpha)
    if abs(a) >= 1:
        raise DomainError("|alpha| must be < 1")
    w = math.sqrt(1 - abs(a) ** 2)
    ac = a.conjugate()
    return np.array([[w * w, ac, abs(a) ** 2],
                     [-a * w, w, a * w],
                     [0, ac, 1]], dtype=complex)


def lambda_alpha(alpha, z) -> np.ndarray:
    """``((1-|a|^2) z1 + conj(a)(z2 + a), w (z2 + a - a z1)) / (1 + conj(a) z2)`` with ``w = sqrt(1-|a|^2)``."""
    return _apply_matrix(lambda_matrix(alpha), z)


def _embed(U):
    M = np.eye(3, dtype=complex)
    M[:2, :2] = U
    return M


def _is_unitary(U, tol=1e-12):
    U = np.asarray(U, dtype=complex)
    return U.shape == (2, 2) and np.abs(U.conj().T @ U - np.eye(2)).max() <= tol


def _frame(v):
    """Unitary whose first column is the unit vector ``v``."""
    return np.array([[v[0], -np.conj(v[1])], [v[1], np.conj(v[0])]], dtype=complex)


@dataclass(frozen=True, eq=False)
class BallAutomorphism:
    """``post o lambda_alpha o pre``."""

    alpha: complex = 0j
    pre: np.ndarray = field(default_factory=lambda: np.eye(2, dtype=complex))
    post: np.ndarray = field(default_factory=lambda: np.eye(2, dtype=complex))

    def __post_init__(self):
        if abs(complex(self.alpha)) >= 1:
            raise DomainError("|alpha| must be < 1")
        for name in ("pre", "post"):
            U = np.array(getattr(self, name), dtype=complex)
            if not _is_unitary(U):
                raise ValueError(f"{name} matrix is not unitary to 1e-12")
            U.setflags(write=False)
            object.__setattr__(self, name, U)
        object.__setattr__(self, "alpha", complex(self.alpha))

    @property
    def matrix(self) -> np.ndarray:
        return _embed(self.post) @ lambda_matrix(self.alpha) @ _embed(self.pre)

    def __call__(self, z):
        return _apply_matrix(self.matrix, z)

    @classmethod
    def from_matrix(cls, G) -> "BallAutomorphism":
        """Factor a ball automorphism matrix as ``post o lambda_alpha o pre``.

        ``|lambda_alpha(0)| = |alpha|``, so ``alpha = |G(0)|``; ``post`` rotates
        ``lambda_alpha(0)`` onto ``G(0)``, and what remains fixes the origin and
        is therefore unitary.
        """
        G = np.asarray(G, dtype=complex)
        p = G[:2, 2] / G[2, 2]
        r = float(np.linalg.norm(p))
        if r < 1e-15:
            Q = np.eye(2, dtype=complex)
            r = 0.0
        else:
            w = math.sqrt(1 - r * r)
            Q = _frame(p / r) @ _frame(np.array([r, w])).conj().T
        H = np.linalg.inv(lambda_matrix(r)) @ _embed(Q.conj().T) @ G
        V = H[:2, :2] / H[2, 2]
        # project back onto the unitary group to remove rounding drift
        u, _, vh = np.linalg.svd(V)
        return cls(r, u @ vh, Q)

    def inverse(self) -> "BallAutomorphism":
        return BallAutomorphism.from_matrix(np.linalg.inv(self.matrix))

    def __matmul__(self, other: "BallAutomorphism") -> "BallAutomorphism":
        return BallAutomorphism.from_matrix(self.matrix @ other.matrix)

    def equals(self, other, tol=1e-12) -> bool:
        probes = np.array([[0, 0.5, 0.3j, 0.2], [0, 0.1j, -0.4, 0.6 + 0.1j]])
        return bool(np.abs(self(probes) - other(probes)).max() <= tol)

    def to_json(self) -> dict:
        def mat(U):
            return [[[v.real, v.imag] for v in row] for row in U]
        return {"kind": "automorphism", "alpha": [self.alpha.real, self.alpha.imag],
                "pre": mat(self.pre), "post": mat(self.post)}


def ball_automorphism_apply(A: BallAutomorphism, z):
    z = as_point(z)
    if np.any(norm2(z) > 1 + 1e-12):
        raise DomainError("point lies outside the closed ball")
    return A(z)


def automorphism_to_line(a) -> BallAutomorphism:
    """Automorphism fixing ``(1, 0)`` and mapping ``{(z, 0)}`` onto the line through ``a`` and ``(1, 0)``.

    ``lambda_alpha`` already fixes ``(1, 0)`` and sends the origin to
    ``(|alpha|^2, alpha w)``; that point is on the line through ``a`` exactly
    when ``alpha/w = a2/(1 - a1)``, which determines ``alpha``.
    """
    a = as_point(a)
    if abs(a[0] - 1) < 1e-14 and abs(a[1]) < 1e-14:
        raise DegenerateLine("a = (1, 0) spans no line with (1, 0)")
    if norm2(a) >= 1:
        raise DomainError("a must be an interior point")
    q = a[1] / (1 - a[0])
    return BallAutomorphism(q / math.sqrt(1 + abs(q) ** 2))


def distance_to_line(points, a) -> np.ndarray:
    """Euclidean distance from points to the complex line through ``a`` and ``(1, 0)``."""
    d = as_point(a) - E1
    d = d / np.linalg.norm(d)
    v = as_point(points) - E1[:, None]
    proj = np.conj(d) @ v
    return np.linalg.norm(v - d[:, None] * proj, axis=0)


# -- ball maps ---------------------------------------------------------------

class BallMap:
    kind = "abstract"

    @property
    def certified(self) -> bool:
        return True

    def __call__(self, z):
        raise NotImplementedError


@dataclass(frozen=True)
class BallIdentity(BallMap):
    kind = "identity"

    def __call__(self, z):
        return as_point(z).copy()

    def to_json(self):
        return {"kind": "identity"}


@dataclass(frozen=True, eq=False)
class AutomorphismMap(BallMap):
    automorphism: BallAutomorphism
    kind = "automorphism"

    def __call__(self, z):
        return self.automorphism(z)

    def to_json(self):
        return self.automorphism.to_json()


@dataclass(frozen=True, eq=False)
class ProductMap(BallMap):
    """``(f(z1), kappa z2)``; a self-map only after sampling certification."""

    first: FunctionSpec
    kappa: complex = 0j
    certificate: float | None = None
    kind = "product"

    @property
    def certified(self):
        return self.certificate is not None

    def __call__(self, z):
        z = as_point(z)
        return np.stack([np.asarray(self.first(z[0]), dtype=complex) * np.ones(z.shape[1:]),
                         self.kappa * z[1]])

    def to_json(self):
        k = complex(self.kappa)
        return {"kind": "product", "first": self.first.to_json(), "kappa": [k.real, k.imag]}


@dataclass(frozen=True, eq=False)
class BallComposition(BallMap):
    outer: BallMap
    inner: BallMap
    kind = "composition"

    @property
    def certified(self):
        return self.outer.certified and self.inner.certified

    def __call__(self, z):
        return self.outer(self.inner(z))

    def to_json(self):
        return {"kind": "composition", "outer": self.outer.to_json(), "inner": self.inner.to_json()}


def sphere_grid(n_angle: int = 48) -> np.ndarray:
    """``(cos s e^{i t1}, sin s e^{i t2})`` on a product grid covering the sphere."""
    s = np.linspace(0, np.pi / 2, n_angle // 2 + 1)
    t = 2 * np.pi * np.arange(n_angle) / n_angle
    S, T1, T2 = np.meshgrid(s, t, t, indexing="ij")
    return np.stack([np.cos(S) * np.exp(1j * T1), np.sin(S) * np.exp(1j * T2)]).reshape(2, -1)


def certify_ball_map(Phi: BallMap, n_angle: int = 48) -> float:
    """Largest ``|Phi|^2`` on the sphere of radius ``1 - 1e-6``; raises if above ``1 + 1e-9``."""
    z = CERTIFY_RADIUS * sphere_grid(n_angle)
    m = norm2(Phi(z))
    k = int(np.argmax(m))
    if m[k] > 1 + CERTIFY_TOL:
        raise CertificationFailed(complex(z[0, k]), float(math.sqrt(m[k])))
    return float(m[k])


def product_map(first: FunctionSpec, kappa, certify: bool = True) -> ProductMap:
    p = ProductMap(first, complex(kappa))
    if certify:
        from dataclasses import replace
        return replace(p, certificate=certify_ball_map(p))
    return p


def ball_from_json(obj: dict, *, certify: bool = True) -> BallMap:
    kind = obj.get("kind")
    if kind == "identity":
        return BallIdentity()
    if kind == "automorphism":
        if "a" in obj:
            return AutomorphismMap(automorphism_to_line([complex(*c) for c in obj["a"]]))
        mats = {k: np.array([[complex(*v) for v in row] for row in obj[k]])
                for k in ("pre", "post") if k in obj}
        return AutomorphismMap(BallAutomorphism(complex(*obj.get("alpha", [0, 0])), **mats))
    if kind == "product":
        kappa = obj.get("kappa", 0)
        kappa = complex(*kappa) if isinstance(kappa, (list, tuple)) else complex(kappa)
        return product_map(disc_from_json(obj["first"], certify=True), kappa, certify)
    if kind == "composition":
        return BallComposition(ball_from_json(obj["outer"], certify=certify),
                               ball_from_json(obj["inner"], certify=certify))
    raise ValueError(f"unknown ball map kind {kind!r}")


# -- slices ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SliceMap:
    """``zeta -> first coordinate of A^{-1}(Phi(A(zeta, 0)))`` with ``A`` mapping the base slice to ``a``'s line."""

    Phi: BallMap
    a: tuple
    A: BallAutomorphism
    A_inv: BallAutomorphism

    def _lift(self, z):
        z = np.asarray(z, dtype=complex)
        pts = np.stack([z.ravel(), np.zeros(z.size, dtype=complex)])
        out = self.A_inv(self.Phi(self.A(pts)))
        return out.reshape((2,) + z.shape)

    def __call__(self, z):
        v = self._lift(z)[0]
        return complex(v) if v.ndim == 0 else v

    def second(self, z):
        """The transverse coordinate ``g_a^2``; it vanishes identically for the identity."""
        v = self._lift(z)[1]
        return complex(v) if v.ndim == 0 else v


def slice_map(Phi: BallMap, a) -> SliceMap:
    if not Phi.certified:
        raise CertificationMissing("ball map has no self-map certificate")
    a = as_point(a)
    A = automorphism_to_line(a)
    return SliceMap(Phi, tuple(complex(x) for x in a), A, A.inverse())


def default_slice_grid() -> list:
    pts = [np.array([0j, 0j])]
    dirs = [np.array([0, 1], dtype=complex), np.array([1, 1], dtype=complex) / math.sqrt(2)]
    for r in (0.3, 0.6):
        for d in dirs:
            for sgn in (1, -1):
                pts.append(sgn * r * d)
    return pts


def _slice_grid_points(n=400):
    r = np.linspace(0.05, 0.999, 20)
    t = 2 * np.pi * np.arange(n // 20) / (n // 20)
    return (r[:, None] * np.exp(1j * t)[None, :]).ravel()


def burns_krantz_ball_classify(Phi: BallMap, grid_of_a=None):
    """Classify a ball self-map fixing ``(1, 0)`` by its slices.

    Each slice ``H_a`` is classified as a disc map and the transverse
    coordinate is checked to vanish (``sup |g_a^2| < 1e-7``). ``Identity``
    requires every slice to pass both tests.
    """
    from .rigidity import RigidityVerdict, burns_krantz_classify

    if not Phi.certified:
        raise CertificationMissing("ball map has no self-map certificate")
    grid = default_slice_grid() if grid_of_a is None else [as_point(a) for a in grid_of_a]
    zs = _slice_grid_points()
    rep = VerificationReport("burns-krantz-ball", digest([Phi, [list(a) for a in grid]]),
                             tolerances={"g2_sup": G2_TOL})
    slices = []
    first = None
    all_identity = True
    any_violation = False
    for a in grid:
        H = slice_map(Phi, a)
        v = burns_krantz_classify(H)
        g2 = float(np.abs(H.second(zs)).max())
        ok = v.is_identity and g2 < G2_TOL
        all_identity &= ok
        any_violation |= v.details.verdict == "violated"
        if first is None and not ok:
            first = v
        rep.add("g2_sup", complex(a[0]), G2_TOL - g2)
        slices.append({"a": [complex(a[0]), complex(a[1])], "classification": v.classification,
                       "contact": v.contact_order.to_json(), "g2_sup": g2,
                       "remainder_mass": v.remainder_mass})
    base = first or v
    rep.details.update({"classification": "Identity" if all_identity else "NonIdentity",
                        "slices": slices})
    if any_violation:
        rep.verdict = "violated"
    return RigidityVerdict("Identity" if all_identity else "NonIdentity",
                           base.contact_order, base.remainder_mass, rep,
                           base.atom_weight, base.constant)


# -- analytic discs ----------------------------------------------------------

@dataclass(frozen=True)
class DefiningFunction:
    """``rho(z) = |z1|^2 + |z2|^2 - 1``."""

    def __call__(self, z):
        return norm2(z) - 1

    def gradient(self, z):
        """Gradient with respect to ``(conj z1, conj z2)`` convention: ``(z1, z2)``."""
        return as_point(z).copy()


def analytic_disc_contact(phi, rho: DefiningFunction, P, j_range=(6, 20)) -> bd.ContactFit:
    """Fit ``|rho(phi(t))| ~ C |phi(t) - P|^k`` along ``t = 1 - 2^-j``.

    Raises
    ------
    ConstantDisc
        If every probe lies within ``1e-13`` of ``P``.
    """
    P = as_point(P)
    js = np.arange(j_range[0], j_range[1] + 1)
    t = 1 - 2.0 ** -js
    pts = as_point(phi(t.astype(complex)))
    dist = np.linalg.norm(pts - P[:, None], axis=0)
    if np.all(dist < 1e-13):
        raise ConstantDisc("the disc is constant at P")
    r = np.abs(rho(pts))
    keep = (dist > 1e-13) & (r > 1e-15)
    x, y = np.log(dist[keep]), np.log(r[keep])
    if keep.sum() < 2:
        return bd.ContactFit(math.inf, 0.0, 0.0, int(keep.sum()))
    slope, icpt = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - slope * x - icpt) ** 2)))
    return bd.ContactFit(float(slope), float(math.exp(icpt)), resid, int(keep.sum()))
