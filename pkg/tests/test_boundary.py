import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from schwarzkit import boundary as bd
from schwarzkit import holomap as hm
from schwarzkit.disc import MoebiusTransform
from schwarzkit.errors import (CollarHypothesisViolated, NonConvergent, NotNonnegative,
                               NotUnimodularLimit, NotVanishingAtP)

from strategies import blaschke, circle_points


def blaschke_boundary_derivative(f, b):
    """``|B'(b)| = sum (1 - |a|^2)/|b - a|^2`` on the circle."""
    return sum((1 - abs(a) ** 2) / abs(b - a) ** 2 for a in f.zeros)


def blaschke_arc_length(f, t1, t2):
    """Total change of argument of ``B(e^{it})`` over the arc, factor by factor."""
    total = 0.0
    for a in f.zeros:
        t = np.linspace(t1, t2, 4001)
        z = np.exp(1j * t)
        arg = np.unwrap(np.angle((z - a) / (1 - np.conj(a) * z)))
        total += arg[-1] - arg[0]
    return total


def test_richardson_is_exact_on_quadratics():
    h = 2.0 ** -np.arange(4, 10)
    vals = 3 + 2 * h - 5 * h ** 2
    assert np.allclose(bd.richardson(vals), 3, atol=1e-13)


@pytest.mark.parametrize("f, b, expected", [
    (hm.identity(), 1, 1),
    (hm.power(2), 1j, -1),
    (hm.extremal(0.5), 1, 1),
])
def test_radial_limit_examples(f, b, expected):
    assert bd.radial_limit(f, b).value == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize("f, b, expected", [
    (hm.identity(), 1, 1),
    (hm.extremal(0.5), 1, 4 / 3),
    (hm.power(2), 1, 2),
])
def test_angular_derivative_examples(f, b, expected):
    assert bd.angular_derivative(f, b) == pytest.approx(expected, abs=1e-8)


def test_angular_derivative_needs_unimodular_limit():
    with pytest.raises(NotUnimodularLimit):
        bd.angular_derivative(hm.polynomial([0, 0.5]), 1)


def test_radial_limit_reports_non_convergence():
    def wild(z):
        z = np.asarray(z)
        return np.sin(1 / (1 - np.abs(z)))
    with pytest.raises(NonConvergent):
        bd.radial_limit(wild, 1)


@settings(max_examples=30)
@given(blaschke(), circle_points())
def test_angular_derivative_of_blaschke_products(f, b):
    assert bd.angular_derivative(f, b) == pytest.approx(blaschke_boundary_derivative(f, b), rel=1e-7)


@given(blaschke(), circle_points())
def test_radial_limit_is_boundary_value(f, b):
    assert abs(bd.radial_limit(f, b).value - f(b)) < 1e-9


def test_contact_examples():
    ident = hm.identity()
    assert bd.contact_order(ident, ident, 1).infinite
    assert bd.contact_order(hm.cubic_counterexample(), ident, 1).order == pytest.approx(3, abs=0.1)
    quartic = hm.PolynomialMap((0.01, 0.96, 0.06, -0.04, 0.01))  # z + (z - 1)^4/100
    assert bd.contact_order(quartic, ident, 1).order == pytest.approx(4, abs=0.1)
    phi = hm.MoebiusMap(MoebiusTransform(0, 0.3))
    assert bd.contact_order(phi, ident, 1).order == pytest.approx(1, abs=0.1)


@pytest.mark.parametrize("k", [2, 3, 4, 5])
@pytest.mark.parametrize("c", [0.01, 1 / 128, 0.3])
def test_contact_recovers_planted_orders(k, c):
    # z + c (z - 1)^k as an explicit polynomial
    coeffs = np.zeros(k + 1, dtype=complex)
    for i in range(k + 1):
        coeffs[i] = c * math.comb(k, i) * (-1) ** (k - i)
    coeffs[1] += 1
    f = hm.PolynomialMap(tuple(coeffs))
    assert bd.contact_order(f, hm.identity(), 1).order == pytest.approx(k, abs=0.1)


def test_contact_float_path_for_plain_callables():
    fit = bd.contact_order(lambda z: z + 0.2 * (np.asarray(z) - 1) ** 2, lambda z: z, 1)
    assert fit.order == pytest.approx(2, abs=0.1)


@pytest.mark.parametrize("f, arc, expected", [
    (hm.identity(), (0, math.pi / 2), math.pi / 2),
    (hm.power(2), (0.3, 1.3), 2.0),
    (hm.power(2), (0, 2 * math.pi), 4 * math.pi),
])
def test_arc_length_examples(f, arc, expected):
    assert bd.arc_image_length(f, arc) == pytest.approx(expected, abs=1e-9)


def test_arc_length_lower_bound_for_extremal_map():
    assert bd.arc_image_length(hm.extremal(0.5), (0, math.pi)) >= 2 / 1.5 * math.pi


def test_arc_length_rejects_bad_input():
    with pytest.raises(TypeError):
        bd.arc_image_length(hm.cubic_counterexample(), (0, 1))
    with pytest.raises(ValueError):
        bd.arc_image_length(hm.identity(), (1, 0))


@settings(max_examples=25)
@given(blaschke(max_factors=4), st.floats(0, 2 * math.pi), st.floats(0.01, 2 * math.pi))
def test_arc_length_matches_argument_change(f, t1, s):
    assert bd.arc_image_length(f, (t1, t1 + s)) == pytest.approx(
        blaschke_arc_length(f, t1, t1 + s), abs=1e-7)


def test_hopf_examples():
    r = bd.hopf_check(lambda z: 1 - np.asarray(z), 1)
    assert r.normal_derivative == pytest.approx(-1, abs=1e-6)
    assert r.verdict == "StrictlyNegative"
    r = bd.hopf_check(lambda z: 1 + np.asarray(z), -1)
    assert r.normal_derivative == pytest.approx(-1, abs=1e-6)
    with pytest.raises(NotNonnegative):
        bd.hopf_check(lambda z: (1 - np.asarray(z)) ** 2, 1)
    with pytest.raises(NotVanishingAtP):
        bd.hopf_check(lambda z: 2 - np.asarray(z), 1)


def test_hopf_on_smaller_tangent_disc():
    # u = Re((1 - z)/(1 + z)) is the Poisson kernel at -1, positive with u(1) = 0
    r = bd.hopf_check(lambda z: (1 - np.asarray(z)) / (1 + np.asarray(z)), 1, R=0.5)
    assert r.normal_derivative == pytest.approx(-0.5, abs=1e-6)
    assert r.verdict == "StrictlyNegative"


def test_collar_examples():
    assert bd.collar_positivity(lambda z: np.ones_like(np.asarray(z)), 0.9).holds
    with pytest.raises(CollarHypothesisViolated):
        bd.collar_positivity(lambda z: np.asarray(z), 0.9)
