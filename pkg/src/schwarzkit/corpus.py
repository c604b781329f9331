"""Seeded random instances and named example maps."""

from __future__ import annotations

import math

import numpy as np

from . import holomap as hm
from .disc import MoebiusTransform
from .herglotz import BoundaryMeasure, TWO_PI
from .series import FormalPowerSeries


def random_disc_point(rng, radius=0.95) -> complex:
    return complex(radius * math.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform()))


def random_blaschke(rng, max_factors=5, origin_fixing=False, radius=0.95) -> hm.BlaschkeProduct:
    """Blaschke product with 1..max_factors zeros drawn uniformly from the disc of ``radius``."""
    n = int(rng.integers(1, max_factors + 1))
    zeros = [random_disc_point(rng, radius) for _ in range(n)]
    if origin_fixing:
        zeros[0] = 0j
    return hm.BlaschkeProduct(float(rng.uniform(0, TWO_PI)), tuple(zeros))


def random_moebius(rng, radius=0.9) -> hm.MoebiusMap:
    return hm.MoebiusMap(MoebiusTransform(float(rng.uniform(-math.pi, math.pi)),
                                          random_disc_point(rng, radius)))


def random_measure(rng, max_atoms=8) -> BoundaryMeasure:
    n = int(rng.integers(1, max_atoms + 1))
    return BoundaryMeasure(tuple(rng.uniform(0, TWO_PI, n)), tuple(rng.uniform(0.1, 2.0, n)))


def random_herglotz_map(rng, with_unit_atom=True, max_atoms=4) -> hm.HerglotzInduced:
    """Herglotz-induced map; with the unit atom at 0 it fixes 1 like the identity."""
    m = random_measure(rng, max_atoms)
    # keep the extra atoms away from angle 0 so the boundary fits are clean
    ang = tuple(0.3 + (a % (TWO_PI - 0.6)) for a in m.angles)
    m = BoundaryMeasure(ang, tuple(0.2 * x for x in m.masses))
    if with_unit_atom:
        m = m + BoundaryMeasure((0.0,), (TWO_PI,))
    return hm.HerglotzInduced(m, 1j * float(rng.uniform(-0.5, 0.5)))


def random_tangent_series(rng, nvars, max_degree=10, lowest=None) -> FormalPowerSeries:
    """Identity plus random terms of degrees ``lowest..max_degree``."""
    lowest = lowest or int(rng.integers(2, 5))
    terms = {}
    if nvars == 1:
        terms[(1,)] = [1]
        for d in range(lowest, max_degree + 1):
            if d == lowest or rng.uniform() < 0.5:
                terms[(d,)] = [complex(*rng.normal(size=2)) * 0.3]
    else:
        terms[(1, 0)] = [1, 0]
        terms[(0, 1)] = [0, 1]
        for d in range(lowest, max_degree + 1):
            for i in range(d + 1):
                if (d == lowest and i == 0) or rng.uniform() < 0.2:
                    terms[(i, d - i)] = list(rng.normal(size=2) * 0.3 + 1j * rng.normal(size=2) * 0.3)
    return FormalPowerSeries.from_terms(nvars, terms, nvars, max_degree)


def named_maps() -> dict:
    """Named examples: the identity, powers, the extremal family, the cubic and the order-8 map."""
    out = {"identity": hm.identity(), "square": hm.power(2)}
    for a in (0.0, 0.25, 0.5, 0.75):
        out[f"extremal_{a}"] = hm.extremal(a)
    out["cubic"] = hm.cubic_counterexample()
    out["chelst"] = hm.chelst_example()
    out["moebius_0.3"] = hm.MoebiusMap(MoebiusTransform(0.0, 0.3))
    return out


def burns_krantz_corpus(rng, size=50) -> list:
    """(name, map) pairs: named maps, boundary-fixing automorphisms, Herglotz maps, Blaschke products."""
    items = [("identity", hm.identity()), ("cubic", hm.cubic_counterexample()),
             ("square", hm.power(2)), ("moebius_0.3", hm.MoebiusMap(MoebiusTransform(0.0, 0.3)))]
    # automorphisms fixing 1: rotation chosen so that the map sends 1 to 1
    for a in (-0.5, 0.2, 0.6):
        t = MoebiusTransform(0.0, a)
        items.append((f"fix1_{a}", hm.MoebiusMap(MoebiusTransform(-np.angle(t(1.0)), a))))
    k = 0
    while len(items) < size:
        if k % 2 == 0:
            items.append((f"herglotz_{k}", random_herglotz_map(rng)))
        else:
            items.append((f"blaschke_{k}", random_blaschke(rng, 4)))
        k += 1
    return items
