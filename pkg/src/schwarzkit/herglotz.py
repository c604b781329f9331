"""Herglotz representation of maps into the right half-plane.

A positive atomic measure ``mu = sum m_k delta_{theta_k}`` on the circle and an
imaginary constant ``C`` define

    g(z) = (1/2pi) sum_k m_k (e^{i theta_k} + z)/(e^{i theta_k} - z) + C,

which has nonnegative real part on the disc. Masses are absolute: a single
atom of mass ``2*pi`` at angle 0 gives ``g(z) = (1 + z)/(1 - z)``.

Expanding the kernel, ``(e + z)/(e - z) = 1 + 2 sum_{n>=1} conj(e)^n z^n``, so
the Taylor coefficients of ``g`` are ``c_0 = mu^(0) + C`` and
``c_n = 2 mu^(n)`` with ``mu^(n) = (1/2pi) sum m_k e^{-i n theta_k}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import toeplitz

from . import kernels
from .errors import DomainError, NotPSD

TWO_PI = 2.0 * math.pi
MERGE_TOL = 1e-12


@dataclass(frozen=True)
class BoundaryMeasure:
    """Finite positive atomic measure on the circle.

    Angles are reduced to ``[0, 2pi)`` and atoms closer than ``1e-12`` are
    merged, so two measures with the same support compare equal.
    """

    angles: tuple = ()
    masses: tuple = ()

    def __post_init__(self):
        if len(self.angles) != len(self.masses):
            raise ValueError("angles and masses differ in length")
        merged: dict[float, float] = {}
        for theta, m in zip(self.angles, self.masses):
            m = float(m)
            if not m >= 0 or not math.isfinite(m):
                raise ValueError(f"atom mass {m} is not a finite nonnegative number")
            theta = float(theta) % TWO_PI
            if TWO_PI - theta < MERGE_TOL:
                theta = 0.0
            for key in merged:
                if abs(key - theta) < MERGE_TOL:
                    theta = key
                    break
            merged[theta] = merged.get(theta, 0.0) + m
        keys = sorted(merged)
        object.__setattr__(self, "angles", tuple(keys))
        object.__setattr__(self, "masses", tuple(merged[k] for k in keys))

    @classmethod
    def from_atoms(cls, atoms) -> "BoundaryMeasure":
        atoms = list(atoms)
        return cls(tuple(a for a, _ in atoms), tuple(m for _, m in atoms))

    @property
    def atoms(self):
        return list(zip(self.angles, self.masses))

    @property
    def total_mass(self) -> float:
        return float(sum(self.masses))

    def __add__(self, other: "BoundaryMeasure") -> "BoundaryMeasure":
        return BoundaryMeasure(self.angles + other.angles, self.masses + other.masses)


def delta0(mass: float = TWO_PI) -> BoundaryMeasure:
    """Atom at angle 0; the default mass ``2*pi`` is the unit-moment atom."""
    return BoundaryMeasure((0.0,), (mass,))


@dataclass(frozen=True)
class HerglotzData:
    measure: BoundaryMeasure
    constant: complex = 0j

    def __post_init__(self):
        c = complex(self.constant)
        if c.real != 0:
            raise ValueError("the Herglotz constant must be purely imaginary")
        object.__setattr__(self, "constant", c)

    def to_json(self) -> dict:
        return {"atoms": [[t, m] for t, m in self.measure.atoms],
                "constant_im": self.constant.imag}

    @classmethod
    def from_json(cls, obj: dict) -> "HerglotzData":
        atoms = obj.get("atoms", [])
        for item in atoms:
            if len(item) != 2:
                raise ValueError(f"atom {item!r} is not a [theta, mass] pair")
        return cls(BoundaryMeasure.from_atoms(atoms), 1j * float(obj.get("constant_im", 0.0)))


@dataclass(frozen=True)
class MomentSequence:
    """Fourier-Stieltjes coefficients ``mu^(0..N)``."""

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=complex))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]

    @property
    def mass(self) -> float:
        """Total mass ``2*pi*mu^(0)`` of the underlying measure."""
        return TWO_PI * float(self.values[0].real)

    def toeplitz(self) -> np.ndarray:
        v = self.values
        return toeplitz(v, np.conj(v))


@dataclass(frozen=True)
class PositivityVerdict:
    psd: bool
    min_eigenvalue: float

    def __bool__(self):
        return self.psd


def herglotz_transform(h: HerglotzData, z):
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise DomainError("the Herglotz transform is evaluated on the open disc only")
    g, _ = kernels.herglotz(h.measure.angles, h.measure.masses, z)
    g = g + h.constant
    return complex(g) if g.ndim == 0 else g


def cayley_disc_to_halfplane(phi_value):
    """``(1 + phi)/(1 - phi)``."""
    w = np.asarray(phi_value, dtype=complex)
    if np.any(np.abs(1 - w) < 1e-14):
        raise DomainError("phi = 1 is the pole of the Cayley transform")
    g = (1 + w) / (1 - w)
    return complex(g) if g.ndim == 0 else g


def cayley_halfplane_to_disc(g_value):
    """``(g - 1)/(g + 1)``, inverse of :func:`cayley_disc_to_halfplane`."""
    g = np.asarray(g_value, dtype=complex)
    if np.any(np.abs(g + 1) < 1e-14):
        raise DomainError("g = -1 is the pole of the inverse Cayley transform")
    w = (g - 1) / (g + 1)
    return complex(w) if w.ndim == 0 else w


def moments_of_measure(m: BoundaryMeasure, N: int) -> MomentSequence:
    n = np.arange(N + 1)[:, None]
    theta = np.asarray(m.angles, dtype=float)[None, :]
    mass = np.asarray(m.masses, dtype=float)[None, :]
    return MomentSequence((mass * np.exp(-1j * n * theta)).sum(axis=1) / TWO_PI)


def moments_from_map(g_taylor) -> tuple[MomentSequence, complex]:
    """Recover moments and the imaginary constant from Taylor data of ``g``.

    Returns ``(moments, constant)`` with ``mu^(0) = Re c_0``,
    ``mu^(n) = c_n / 2`` and ``constant = i Im c_0``.
    """
    c = np.asarray(g_taylor, dtype=complex)
    values = np.empty_like(c)
    values[0] = c[0].real
    values[1:] = c[1:] / 2
    return MomentSequence(values), 1j * c[0].imag


def min_toeplitz_eigenvalue(s: MomentSequence) -> float:
    return float(np.linalg.eigvalsh(s.toeplitz())[0])


def herglotz_positivity(s: MomentSequence, rel_tol: float = 1e-10) -> PositivityVerdict:
    """Toeplitz test: PSD iff the smallest eigenvalue is >= -rel_tol * mu^(0)."""
    lam = min_toeplitz_eigenvalue(s)
    scale = max(abs(float(s.values[0].real)), np.finfo(float).tiny)
    return PositivityVerdict(lam >= -rel_tol * scale, lam)


def decompose_delta0(s: MomentSequence, rel_tol: float = 1e-10,
                     tol: float = 1e-10) -> tuple[float, MomentSequence]:
    """Split off the largest atom at angle 0 keeping the rest positive.

    Finds by bisection the largest ``t >= 0`` such that ``mu^(n) - t`` is still
    a PSD moment sequence; ``t`` is the moment-scale weight, so the split-off
    atom has mass ``2*pi*t``.

    Raises
    ------
    NotPSD
        If the input sequence itself fails the positivity test.
    """
    if len(s) < 2:
        raise ValueError("need at least two moments")
    base = herglotz_positivity(s, rel_tol)
    if not base:
        raise NotPSD(f"input moments are not PSD (min eigenvalue {base.min_eigenvalue:.3e})")
    # tolerance scale stays that of the input so the feasible set is monotone in t
    scale = max(float(s.values[0].real), np.finfo(float).tiny)
    T = s.toeplitz()
    ones = np.ones_like(T)

    def feasible(t):
        return np.linalg.eigvalsh(T - t * ones)[0] >= -rel_tol * scale

    lo, hi = 0.0, float(s.values[0].real)
    if feasible(hi):
        lo = hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    return lo, MomentSequence(s.values - lo)
