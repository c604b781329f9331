import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from schwarzkit.corpus import random_tangent_series
from schwarzkit.errors import LinearPartNotIdentity, NonzeroConstantTerm
from schwarzkit.series import (FormalPowerSeries as FPS, cartan_iterate,
                               cauchy_estimate_check, series_compose)


def poly1(coeffs, D=10):
    return FPS.from_terms(1, {(i,): c for i, c in enumerate(coeffs) if c}, 1, D)


def test_compose_examples():
    f = poly1([0, 1, 1], 6)
    assert np.allclose(series_compose(f, f).coeffs[0], [0, 1, 2, 2, 1, 0, 0])
    g = poly1([2, 0.5, 0, 1], 6)
    assert np.allclose(series_compose(g, FPS.identity(1, 6)).coeffs, g.coeffs)
    h = FPS.from_terms(2, {(1, 0): [1, 0], (0, 2): [1, 0], (0, 1): [0, 1]}, 2)
    assert np.allclose(series_compose(h, FPS.identity(2)).coeffs, h.coeffs)


def test_compose_matches_numpy_polynomial_composition():
    P = np.polynomial.polynomial
    f, g = [1, 2, -1, 0.5], [0, 1, 0.3, -0.2]
    ref = np.zeros(10)
    for k, c in enumerate(f):
        ref = P.polyadd(ref, c * P.polypow(g, k))
    got = series_compose(poly1(f, 9), poly1(g, 9)).coeffs[0]
    assert np.allclose(got, ref[:10], atol=1e-14)


def test_compose_requires_zero_constant_term():
    with pytest.raises(NonzeroConstantTerm):
        series_compose(poly1([0, 1]), poly1([0.1, 1]))


def test_cartan_examples():
    assert cartan_iterate(poly1([0, 1, 0, 1]), 5).coefficient(3) == 5
    ident = FPS.identity(2)
    assert np.array_equal(cartan_iterate(ident, 9).coeffs, ident.coeffs)
    h = FPS.from_terms(2, {(1, 0): [1, 0], (0, 2): [1, 0], (0, 1): [0, 1]}, 2)
    assert cartan_iterate(h, 7).coefficient((0, 2), 0) == 7
    with pytest.raises(LinearPartNotIdentity):
        cartan_iterate(poly1([0, 2, 1]), 3)


def test_cauchy_examples():
    r = cauchy_estimate_check(poly1([0, 1, 0.1]), 0.5, 1.0, 100)
    assert r.first_violation == 41 and r.bound == pytest.approx(8)
    assert cauchy_estimate_check(FPS.identity(1), 0.5, 1.0, 50).first_violation is None
    r = cauchy_estimate_check(poly1([0, 1, 0, 0, 0, 1]), 0.9, 1.0, 50)
    # 120 j > 120/0.9^5 first at j = 2
    assert r.first_violation == 2
    with pytest.raises(ValueError):
        cauchy_estimate_check(poly1([0, 1, 0.1]), 1.0, 0.5, 10)


def test_json_roundtrip():
    h = FPS.from_terms(2, {(1, 0): [1, 0], (0, 2): [0.5 + 1j, 0], (0, 1): [0, 1]}, 2, 6)
    back = FPS.from_json(h.to_json())
    assert back.max_degree == 6 and np.array_equal(back.coeffs, h.coeffs)
    assert h.to_json()["terms"][0] == {"exponents": [0, 1], "coeff": [[0.0, 0.0], [1.0, 0.0]]}


def test_truncation_drops_high_terms():
    f = FPS.from_terms(2, {(3, 3): [1]}, 1, 4)
    assert not np.any(f.coeffs)


@st.composite
def tangent_series(draw, nvars=None, D=8):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    n = nvars or draw(st.sampled_from([1, 2]))
    return random_tangent_series(np.random.default_rng(seed), n, D)


@st.composite
def zero_constant(draw, nvars, D=6):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    rng = np.random.default_rng(seed)
    c = rng.normal(size=(nvars,) + (D + 1,) * nvars) + 1j * rng.normal(size=(nvars,) + (D + 1,) * nvars)
    c[(slice(None),) + (0,) * nvars] = 0
    return FPS(nvars, D, c)


@settings(max_examples=25)
@given(st.sampled_from([1, 2]).flatmap(lambda n: st.tuples(zero_constant(n), zero_constant(n), zero_constant(n))))
def test_composition_is_associative(fgh):
    f, g, h = fgh
    left = series_compose(series_compose(f, g), h)
    right = series_compose(f, series_compose(g, h))
    assert np.allclose(left.coeffs, right.coeffs, rtol=1e-10, atol=1e-9 * np.abs(left.coeffs).max())


@settings(max_examples=20)
@given(tangent_series())
def test_iterates_grow_linearly(phi):
    k = phi.lowest_nonlinear_degree()
    base = phi.homogeneous_part(k)
    it = phi
    for j in range(2, 21):
        it = series_compose(phi, it)
        got = it.homogeneous_part(k)
        assert np.abs(got - j * base).max() <= 1e-12 * np.abs(j * base).max()


@settings(max_examples=20)
@given(tangent_series(D=5))
def test_evaluate_agrees_with_composition(phi):
    z = (0.05, -0.03j) if phi.nvars == 2 else 0.05
    inner = phi.evaluate(z)
    arg = tuple(inner) if phi.nvars == 2 else inner[0]
    twice = series_compose(phi, phi).evaluate(z)
    # the truncated composition matches exact evaluation up to O(|z|^6)
    assert np.allclose(twice, phi.evaluate(arg), atol=1e-6)
