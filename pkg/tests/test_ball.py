import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from schwarzkit import ball as B
from schwarzkit import holomap as hm
from schwarzkit.errors import (CertificationFailed, CertificationMissing, ConstantDisc,
                               DegenerateLine, DomainError)

from strategies import disc_points


@st.composite
def sphere_points(draw):
    v = np.array(draw(st.lists(st.floats(-1, 1), min_size=4, max_size=4)))
    if np.linalg.norm(v) < 1e-3:
        v = np.array([1.0, 0, 0, 0])
    return B.sphere_point(np.array([v[0] + 1j * v[1], v[2] + 1j * v[3]]))


@st.composite
def ball_points(draw, radius=0.9):
    return draw(sphere_points()) * draw(st.floats(0, radius))


@st.composite
def unitaries(draw):
    p = draw(sphere_points())
    phase = draw(st.floats(0, 2 * math.pi))
    return B._frame(p) @ np.diag([1, np.exp(1j * phase)])


@st.composite
def automorphisms(draw):
    return B.BallAutomorphism(draw(disc_points(0.9)), draw(unitaries()), draw(unitaries()))


def test_lambda_examples():
    a = 0.3 - 0.4j
    assert np.allclose(B.lambda_alpha(a, [0, 0]), [abs(a) ** 2, a * math.sqrt(1 - abs(a) ** 2)], atol=1e-15)
    z = np.array([0.2 + 0.1j, -0.5j])
    assert np.allclose(B.lambda_alpha(0, z), z)
    w = B.lambda_alpha(a, [0, 1])
    expected = [np.conj(a) * (1 + a) / (1 + np.conj(a)),
                math.sqrt(1 - abs(a) ** 2) * (1 + a) / (1 + np.conj(a))]
    assert np.allclose(w, expected) and B.norm2(w) == pytest.approx(1)
    assert np.allclose(B.lambda_alpha(a, [1, 0]), [1, 0], atol=1e-15)


def test_lambda_matches_displayed_formula(rng):
    a = 0.6 * np.exp(1j * 1.1)
    z = np.array([0.3 - 0.2j, 0.1 + 0.5j])
    w = math.sqrt(1 - abs(a) ** 2)
    d = 1 + np.conj(a) * z[1]
    ref = [(1 - abs(a) ** 2) * z[0] / d + np.conj(a) * (z[1] + a) / d,
           -a * w * z[0] / d + (z[1] + a) * w / d]
    assert np.allclose(B.lambda_alpha(a, z), ref, atol=1e-15)


@given(disc_points(0.99), sphere_points())
def test_lambda_preserves_sphere(a, z):
    assert abs(B.norm2(B.lambda_alpha(a, z)) - 1) < 1e-12


@given(automorphisms(), ball_points())
def test_automorphisms_keep_interior(A, z):
    assert B.norm2(B.ball_automorphism_apply(A, z)) < 1


@settings(max_examples=30)
@given(automorphisms(), automorphisms(), automorphisms(), ball_points(0.8))
def test_group_laws(A, C, D, z):
    assert np.abs((A @ C)(z) - A(C(z))).max() < 1e-12
    assert np.abs(((A @ C) @ D)(z) - (A @ (C @ D))(z)).max() < 1e-12
    assert np.abs(A.inverse()(A(z)) - z).max() < 1e-12


def test_identity_automorphism():
    z = np.array([0.2j, -0.3])
    assert np.allclose(B.ball_automorphism_apply(B.BallAutomorphism(), z), z)
    with pytest.raises(DomainError):
        B.ball_automorphism_apply(B.BallAutomorphism(), [1, 1])
    with pytest.raises(ValueError):
        B.BallAutomorphism(0.1, np.array([[1, 1], [0, 1]]))


@pytest.mark.parametrize("a", [[0, 0], [0.25, 0.5 * math.sqrt(0.75)], [0.3 + 0.1j, -0.4j], [-0.6, 0.1]])
def test_automorphism_to_line(a):
    A = B.automorphism_to_line(a)
    assert np.allclose(A([1, 0]), [1, 0], atol=1e-10)
    slice0 = np.array([[0, 0.3, -0.5j, 0.7, 0.2 + 0.2j], [0] * 5], dtype=complex)
    if np.allclose(a, 0):
        assert np.allclose(A(slice0), slice0)
    else:
        assert B.distance_to_line(A(slice0), a).max() < 1e-10


@settings(max_examples=40)
@given(ball_points(0.95))
def test_automorphism_to_line_random(a):
    if np.allclose(a, 0, atol=1e-9) or abs(a[0] - 1) < 1e-6:
        return
    A = B.automorphism_to_line(a)
    pts = np.stack([np.linspace(-0.9, 0.9, 5) + 0.1j, np.zeros(5)])
    assert B.distance_to_line(A(pts), a).max() < 1e-10
    assert np.abs(A([1, 0]) - [1, 0]).max() < 1e-10


def test_degenerate_line():
    with pytest.raises(DegenerateLine):
        B.automorphism_to_line([1, 0])


def test_slice_examples():
    H = B.slice_map(B.BallIdentity(), [0.2, 0.3j])
    z = np.array([0.1, -0.5j, 0.7])
    assert np.allclose(H(z), z) and np.abs(H.second(z)).max() < 1e-12
    rot = B.AutomorphismMap(B.BallAutomorphism(0, np.eye(2), np.diag([1, 1j])))
    assert np.allclose(B.slice_map(rot, [0, 0])(z), z)
    square = B.product_map(hm.power(2), 0)
    assert np.allclose(B.slice_map(square, [0, 0])(z), z ** 2)
    with pytest.raises(CertificationMissing):
        B.slice_map(B.ProductMap(hm.power(2), 0), [0, 0])


def test_ball_classification_examples():
    v = B.burns_krantz_ball_classify(B.BallIdentity())
    assert v.classification == "Identity"
    assert max(s["g2_sup"] for s in v.details.details["slices"]) < 1e-12
    assert len(v.details.details["slices"]) == 9
    auto = B.AutomorphismMap(B.automorphism_to_line([0.2, 0.3]))
    assert B.burns_krantz_ball_classify(auto).classification == "NonIdentity"
    cubic = B.product_map(hm.cubic_counterexample(), 0.9)
    v = B.burns_krantz_ball_classify(cubic, [[0, 0]])
    assert v.classification == "NonIdentity"
    assert v.contact_order.order == pytest.approx(3, abs=0.1)


def test_product_certification():
    assert B.product_map(hm.cubic_counterexample(), 0.9).certificate < 1
    with pytest.raises(CertificationFailed):
        B.product_map(hm.identity(), 1.5)


def test_ball_json():
    P = B.ball_from_json({"kind": "composition",
                          "outer": {"kind": "product", "first": {"kind": "blaschke", "zeros": [[0, 0]]},
                                    "kappa": 0.5},
                          "inner": {"kind": "automorphism", "a": [[0.1, 0], [0.2, 0]]}})
    z = np.array([0.1, 0.2j])
    assert P.certified and np.all(np.isfinite(P(z)))
    A = B.BallAutomorphism(0.3j, B._frame(np.array([0.6, 0.8])))
    back = B.ball_from_json(A.to_json())
    assert back.automorphism.equals(A)
    with pytest.raises(ValueError):
        B.ball_from_json({"kind": "nope"})


def test_defining_function():
    rho = B.DefiningFunction()
    assert rho([0, 0]) == -1 and rho([1, 0]) == 0 and rho([1, 1]) > 0
    assert np.allclose(rho.gradient([0.5, 0.1j]), [0.5, 0.1j])


def test_disc_contact_examples():
    rho = B.DefiningFunction()
    fit = B.analytic_disc_contact(lambda t: np.stack([t, 0 * t]), rho, [1, 0])
    assert fit.order == pytest.approx(1, abs=0.05)
    fit = B.analytic_disc_contact(lambda t: np.stack([(1 + t) / 2, (1 - t) / 2 * 0.5]), rho, [1, 0])
    assert fit.order <= 2.1
    with pytest.raises(ConstantDisc):
        B.analytic_disc_contact(lambda t: np.stack([np.ones_like(t), 0 * t]), rho, [1, 0])


@settings(max_examples=30)
@given(st.floats(0.05, 1.0), st.floats(0, 2 * math.pi), st.integers(1, 3), st.integers(1, 3))
def test_disc_contact_never_exceeds_two(c, phase, k, m):
    # |(1+z)/2|^2 + c^2 |(1-z)/2|^2 <= 1 for c <= 1, and raising to powers only shrinks both terms
    def disc(t):
        return np.stack([((1 + t) / 2) ** k, c * np.exp(1j * phase) * ((1 - t) / 2) ** m])
    zs = 0.999 * np.exp(1j * np.linspace(0, 2 * np.pi, 64))
    assert np.all(B.norm2(disc(zs)) < 1)
    fit = B.analytic_disc_contact(disc, B.DefiningFunction(), [1, 0])
    assert fit.order <= 2.1
