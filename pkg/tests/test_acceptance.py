"""Acceptance criteria, one test each; every test prints a PASS or FAIL line."""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from schwarzkit import ball as B
from schwarzkit import boundary as bd
from schwarzkit import cli, corpus
from schwarzkit import herglotz as hz
from schwarzkit import holomap as hm
from schwarzkit import rigidity as rg
from schwarzkit import series as ps
from schwarzkit.errors import CollarHypothesisViolated, ConstantDisc

from conftest import ACCEPTANCE_LINES

pytestmark = pytest.mark.acceptance


def report(n, ok, detail):
    line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def streams(seed, n):
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(n)]


def test_criterion_01_schwarz_pick():
    worst = math.inf
    equality_ok = True
    for k, rng in enumerate(streams(101, 1100)):
        if k < 1000:
            f = corpus.random_blaschke(rng, 5)
        else:
            f = corpus.random_moebius(rng)
        a, b = corpus.random_disc_point(rng, 0.95), corpus.random_disc_point(rng, 0.95)
        r = rg.verify_schwarz_pick(f, a, b)
        worst = min(worst, r.min_slack)
        if k >= 1000:
            equality_ok &= r.verdict == "equality" and r.details["automorphism_fit_error"] < 1e-8
    report(1, worst >= -1e-10 and equality_ok,
           f"1000 Blaschke pairs min slack {worst:.2e} (>= -1e-10); 100 automorphisms all equality: {equality_ok}")


def test_criterion_02_osserman():
    ext_err = max(abs(bd.angular_derivative(hm.extremal(a), 1) - 2 / (1 + a))
                  for a in (0, 0.25, 0.5, 0.75))
    worst = math.inf
    for k, rng in enumerate(streams(202, 200)):
        f = corpus.random_blaschke(rng, 5, origin_fixing=True)
        b = complex(np.exp(2j * np.pi * rng.uniform()))
        r = rg.verify_osserman(f, b, interior_samples=20, seed=k)
        worst = min(worst, r.slacks[0][2])
    report(2, ext_err <= 1e-6 and worst >= -1e-6,
           f"extremal family max |f'(1) - 2/(1+a)| = {ext_err:.2e} (<= 1e-6); "
           f"200 random maps min boundary slack {worst:.2e} (>= -1e-6)")


def _origin_fixing_maps(seed, n):
    out = []
    for k, rng in enumerate(streams(seed, n)):
        if k % 2:
            out.append(corpus.random_blaschke(rng, 5, origin_fixing=True))
        else:
            m = corpus.random_measure(rng)
            m = hz.BoundaryMeasure(m.angles, tuple(x * 2 * math.pi / m.total_mass for x in m.masses))
            out.append(hm.HerglotzInduced(m))
    return out


def test_criterion_03_interior_refinement():
    rng = np.random.default_rng(303)
    worst, count = math.inf, 0
    for f in _origin_fixing_maps(304, 100):
        d0 = abs(complex(f.derivative(0j)))
        z = 0.999 * np.sqrt(rng.uniform(size=100)) * np.exp(2j * np.pi * rng.uniform(size=100))
        s = rg.refined_schwarz_bound(z, d0) - np.abs(f(z))
        worst = min(worst, float(s.min()))
        count += z.size
    report(3, worst >= -1e-9 and count == 10_000,
           f"{count} samples, min slack {worst:.2e} (>= -1e-9)")


def test_criterion_04_loewner_velling():
    arcs = [(0, 1), (0.5, 2.5), (1, 1 + 2 * math.pi), (3, 3.001)]
    dbl = max(abs(bd.arc_image_length(hm.power(2), a) - 2 * (a[1] - a[0])) for a in arcs)
    worst = math.inf
    for rng in streams(404, 200):
        f = corpus.random_blaschke(rng, 5, origin_fixing=True)
        t1 = float(rng.uniform(0, 2 * math.pi))
        r = rg.verify_loewner_velling(f, (t1, t1 + float(rng.uniform(0.05, 2 * math.pi))))
        worst = min(worst, r.min_slack)
    report(4, dbl <= 1e-8 and worst >= -1e-8,
           f"square map doubling error {dbl:.2e} (<= 1e-8); 200 random maps min slack {worst:.2e} (>= -1e-8)")


def test_criterion_05_burns_krantz():
    stable = all(rg.burns_krantz_classify(hm.identity(), d, r).is_identity
                 and rg.burns_krantz_classify(hm.identity(), d, r).remainder_mass < 1e-6
                 for d in (8, 12, 16) for r in (0.4, 0.5, 0.6))
    cubic = rg.burns_krantz_classify(hm.cubic_counterexample())
    cubic_ok = cubic.classification == "NonIdentity" and abs(cubic.contact_order.order - 3) <= 0.1
    bad = []
    items = corpus.burns_krantz_corpus(np.random.default_rng(505), 50)
    for name, f in items:
        v = rg.burns_krantz_classify(f)
        if v.contact_order.order >= 3.9 and not v.is_identity:
            bad.append(name)
    report(5, stable and cubic_ok and not bad and len(items) >= 50,
           f"identity stable over degree/radius: {stable}; cubic order {cubic.contact_order.order:.3f} "
           f"NonIdentity; {len(items)}-map corpus high-order NonIdentity: {bad or 'none'}")


def test_criterion_06_herglotz():
    worst_rt, worst_eig = 0.0, math.inf
    for rng in streams(606, 100):
        m = corpus.random_measure(rng, 8)
        f = hm.HerglotzInduced(m)
        c = hm.taylor_coefficients(hm.cayley_lift(f), 13, 0.5)
        s, _ = hz.moments_from_map(c)
        exact = hz.moments_of_measure(m, 12)
        worst_rt = max(worst_rt, float(np.abs(s.values - exact.values).max()))
        pos = hz.herglotz_positivity(exact)
        worst_eig = min(worst_eig, pos.min_eigenvalue / exact.values[0].real)
    z = 0.9 * np.exp(2j * np.pi * np.arange(50) / 50) * np.linspace(0.1, 1, 50)
    g_err = float(np.abs(hz.herglotz_transform(hz.HerglotzData(hz.delta0()), z) - (1 + z) / (1 - z)).max())
    t, rem = hz.decompose_delta0(hz.moments_of_measure(hz.delta0(), 12))
    ok = worst_rt < 1e-8 and worst_eig >= -1e-10 and g_err <= 1e-10 and abs(t - 1) < 1e-8 \
        and np.abs(rem.values).max() < 1e-8
    report(6, ok, f"roundtrip {worst_rt:.2e} (< 1e-8); min eig/mu0 {worst_eig:.2e} (>= -1e-10); "
                  f"unit atom transform error {g_err:.2e}; split ({t:.10f}, {np.abs(rem.values).max():.1e})")


def test_criterion_07_hopf_collar():
    r = bd.hopf_check(lambda z: 1 - np.asarray(z), 1)
    accepts = bd.collar_positivity(lambda z: np.ones_like(np.asarray(z)), 0.9).holds
    try:
        bd.collar_positivity(lambda z: np.asarray(z), 0.9)
        rejects = False
    except CollarHypothesisViolated:
        rejects = True
    ok = abs(r.normal_derivative + 1) <= 1e-6 and r.verdict == "StrictlyNegative" and accepts and rejects
    report(7, ok, f"normal derivative {r.normal_derivative:.9f} ({r.verdict}); "
                  f"collar accepts 1: {accepts}, rejects Re z: {rejects}")


def test_criterion_08_cartan():
    worst = 0.0
    for k, rng in enumerate(streams(808, 20)):
        phi = corpus.random_tangent_series(rng, 1 + k % 2, 10 if k % 2 == 0 else 7)
        kk = phi.lowest_nonlinear_degree()
        base = phi.homogeneous_part(kk)
        it = phi
        for j in range(2, 21):
            it = ps.series_compose(phi, it)
            worst = max(worst, float(np.abs(it.homogeneous_part(kk) - j * base).max() / np.abs(j * base).max()))
    worked = ps.cauchy_estimate_check(ps.FormalPowerSeries.from_terms(1, {(1,): 1, (2,): 0.1}), 0.5, 1, 100)
    report(8, worst <= 1e-12 and worked.first_violation == 41,
           f"20 random maps, max relative deviation from j*P_k {worst:.2e} (<= 1e-12); "
           f"first violating j = {worked.first_violation} (expected 41)")


def test_criterion_09_ball():
    rng = np.random.default_rng(909)
    al = 0.99 * np.sqrt(rng.uniform(size=1000)) * np.exp(2j * np.pi * rng.uniform(size=1000))
    z = B.sphere_point(rng.normal(size=(2, 1000)) + 1j * rng.normal(size=(2, 1000)))
    sphere = max(abs(float(B.norm2(B.lambda_alpha(a, z[:, k]))) - 1) for k, a in enumerate(al))
    origin = max(float(np.abs(B.lambda_alpha(a, [0, 0]) - [abs(a) ** 2, a * math.sqrt(1 - abs(a) ** 2)]).max())
                 for a in al[:100])
    ident = B.burns_krantz_ball_classify(B.BallIdentity())
    g2 = max(s["g2_sup"] for s in ident.details.details["slices"])
    auto = B.burns_krantz_ball_classify(B.AutomorphismMap(B.automorphism_to_line([0.2, 0.3])))
    ok = sphere <= 1e-12 and origin <= 1e-12 and ident.is_identity and g2 < 1e-12 \
        and auto.classification == "NonIdentity"
    report(9, ok, f"sphere deviation {sphere:.1e}; origin image error {origin:.1e}; identity "
                  f"{ident.classification} (max g2 {g2:.1e}); automorphism {auto.classification}")


def test_criterion_10_disc_contact():
    rho = B.DefiningFunction()
    fits = []
    for c in (0.1, 0.5, 1.0):
        for k in (1, 2, 3):
            for m in (1, 2, 3):
                fits.append(B.analytic_disc_contact(
                    lambda t: np.stack([((1 + t) / 2) ** k, c * ((1 - t) / 2) ** m]), rho, [1, 0]).order)
    fits.append(B.analytic_disc_contact(lambda t: np.stack([t, 0 * t]), rho, [1, 0]).order)
    try:
        B.analytic_disc_contact(lambda t: np.stack([np.ones_like(t), 0 * t]), rho, [1, 0])
        rejected = False
    except ConstantDisc:
        rejected = True
    report(10, max(fits) <= 2.1 and rejected,
           f"{len(fits)} discs, max fitted exponent {max(fits):.4f} (<= 2.1); constant disc rejected: {rejected}")


def test_criterion_11_cli(tmp_path):
    identical = True
    for suite in cli.SUITES:
        docs = []
        for rep in range(2):
            out = tmp_path / f"{suite}_{rep}.json"
            assert cli.main(["--suite", suite, "--seed", "11", "--output", str(out)]) == 0
            docs.append(out.read_bytes())
        identical &= docs[0] == docs[1]
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"kind": "blaschke", "zeros": [[0, 0], [0.3, 0.1]]}))
    uncert = tmp_path / "uncert.json"
    uncert.write_text(json.dumps({"kind": "polynomial", "coefficients": [[0, 0], [2, 0]]}))
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "polynomial", "coefficients": [[0, 0], [2, 0]], "assume_self_map": True}))
    codes = {}
    for name, args in [("pass", ["--input", str(good)]), ("uncertified", ["--input", str(uncert)]),
                       ("violated", ["--input", str(bad)])]:
        proc = subprocess.run([sys.executable, "-m", "schwarzkit", "--suite", "schwarz-pick", *args],
                              capture_output=True, text=True)
        codes[name] = proc.returncode
    codes["unknown"] = subprocess.run([sys.executable, "-m", "schwarzkit", "--suite", "nope"],
                                      capture_output=True).returncode
    expected = {"pass": 0, "uncertified": 1, "violated": 2, "unknown": 1}
    report(11, identical and codes == expected,
           f"all {len(cli.SUITES)} suites byte-identical on rerun: {identical}; exit codes {codes}")
