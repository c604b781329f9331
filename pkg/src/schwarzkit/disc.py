"""Automorphisms of the unit disc and the pseudohyperbolic metric.

Points are plain Python/numpy complex numbers. An automorphism is stored in
the canonical form ``z -> exp(i*rotation) * (z - center) / (1 - conj(center) z)``
with the rotation applied after the Moebius factor.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

PROBE_POINTS = (0j, 0.5 + 0j, 0.5j)


def boundary_point(z) -> complex:
    """Return ``z / |z|``; used to pin boundary points to unit modulus."""
    z = complex(z)
    r = abs(z)
    if r == 0:
        raise DomainError("the origin has no boundary projection")
    return z / r


def interior_point(z) -> complex:
    z = complex(z)
    if not abs(z) < 1:
        raise DomainError(f"|{z}| >= 1 is not an interior point of the disc")
    return z


@dataclass(frozen=True)
class MoebiusTransform:
    """Disc automorphism ``exp(i*rotation) * phi_center``."""

    rotation: float = 0.0
    center: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "rotation", float(self.rotation))
        object.__setattr__(self, "center", interior_point(self.center))

    @property
    def unit(self) -> complex:
        return cmath.exp(1j * self.rotation)

    def __call__(self, z):
        a = self.center
        return self.unit * (z - a) / (1 - a.conjugate() * z)

    def derivative(self, z):
        a = self.center
        den = 1 - a.conjugate() * z
        return self.unit * (1 - abs(a) ** 2) / (den * den)

    def inverse(self) -> "MoebiusTransform":
        return moebius_invert(self)

    def __matmul__(self, other: "MoebiusTransform") -> "MoebiusTransform":
        return moebius_compose(self, other)

    def equals(self, other: "MoebiusTransform", tol: float = 1e-12) -> bool:
        """Pointwise equality at the fixed probe points."""
        return all(abs(self(p) - other(p)) <= tol for p in PROBE_POINTS)

    def to_json(self) -> dict:
        return {"kind": "moebius", "rotation": self.rotation,
                "center": [self.center.real, self.center.imag]}


IDENTITY = MoebiusTransform()


def phi(a) -> MoebiusTransform:
    """The automorphism ``(z - a)/(1 - conj(a) z)`` sending ``a`` to 0."""
    return MoebiusTransform(0.0, a)


def rotation(theta: float) -> MoebiusTransform:
    return MoebiusTransform(theta, 0j)


def moebius_apply(t: MoebiusTransform, z):
    if np.any(np.abs(z) > 1 + 1e-12):
        raise DomainError("Moebius transforms are applied on the closed disc only")
    return t(z)


def moebius_derivative(t: MoebiusTransform, z):
    return t.derivative(z)


def _canonical_angle(theta: float) -> float:
    theta = math.remainder(theta, 2 * math.pi)
    return 0.0 if abs(theta) < 1e-15 else theta


def moebius_invert(t: MoebiusTransform) -> MoebiusTransform:
    # w = e^{it}(z-a)/(1-conj(a)z)  <=>  z = e^{-it}(w + a e^{it})/(1 + conj(a e^{it}) w)
    return MoebiusTransform(_canonical_angle(-t.rotation), -t.center * t.unit)


def moebius_compose(s: MoebiusTransform, t: MoebiusTransform) -> MoebiusTransform:
    """Canonical form of ``s o t``."""
    # the composite sends c = t^{-1}(s^{-1}(0)) = t^{-1}(s.center) to 0
    c = moebius_invert(t)(s.center)
    if abs(c) >= 1:
        c = c / abs(c) * (1 - 1e-16)
    # u'(c) = e^{i theta_u} / (1 - |c|^2)
    du = s.derivative(t(c)) * t.derivative(c) * (1 - abs(c) ** 2)
    return MoebiusTransform(_canonical_angle(cmath.phase(du)), c)


def pseudohyperbolic_distance(a, b):
    """``|(b - a) / (1 - conj(a) b)|`` for interior points; vectorized."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if np.any(np.abs(a) >= 1) or np.any(np.abs(b) >= 1):
        raise DomainError("the pseudohyperbolic distance is defined on the open disc")
    d = np.abs((b - a) / (1 - np.conj(a) * b))
    return float(d) if d.ndim == 0 else d


def fit_moebius(f, probes=PROBE_POINTS) -> MoebiusTransform | None:
    """Disc automorphism through three samples of ``f``, or None.

    The linear fractional map matching ``f`` at the probe points is built from
    the standard three-point determinant formula and then converted to the
    canonical form; None is returned if it is not a disc automorphism.
    """
    p = [complex(x) for x in probes]
    q = [complex(f(x)) for x in p]
    det = np.linalg.det
    m_a = det(np.array([[p[i] * q[i], q[i], 1] for i in range(3)]))
    m_b = det(np.array([[p[i] * q[i], p[i], q[i]] for i in range(3)]))
    m_c = det(np.array([[p[i], q[i], 1] for i in range(3)]))
    m_d = det(np.array([[p[i] * q[i], p[i], 1] for i in range(3)]))
    # z -> (m_a z + m_b)/(m_c z + m_d); its zero is -m_b/m_a
    if abs(m_a) < 1e-300 or abs(m_a * m_d - m_b * m_c) < 1e-300:
        return None
    c = -m_b / m_a
    if not abs(c) < 1:
        return None

    def mobius(z):
        return (m_a * z + m_b) / (m_c * z + m_d)

    # pick the probe where phi_c is largest to read off the rotation
    z0 = max(p, key=lambda z: abs((z - c) / (1 - c.conjugate() * z)))
    ratio = mobius(z0) / ((z0 - c) / (1 - c.conjugate() * z0))
    if abs(abs(ratio) - 1) > 1e-6:
        return None
    return MoebiusTransform(cmath.phase(ratio), c)
