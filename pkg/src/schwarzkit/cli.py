"""Batch verifier front-end.

Exit codes: 0 when no report is violated, 2 when some report is violated,
1 for input or configuration errors.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import sys
import time

import numpy as np

from . import __version__, ball, corpus, kernels
from . import boundary as bd
from . import herglotz as hz
from . import holomap as hm
from . import rigidity as rg
from . import series as ps
from .errors import SchwarzKitError
from .report import VerificationReport, digest

SUITES = ("schwarz-pick", "osserman", "loewner", "burns-krantz", "chelst",
          "herglotz-roundtrip", "cartan", "ball", "contact")

# overridable tolerances: name -> (module, attribute)
TOLERANCES = {
    "schwarz_pick.slack": (rg, "SP_TOL"),
    "schwarz_pick.equality": (rg, "SP_EQUALITY"),
    "osserman.boundary": (rg, "OSSERMAN_TOL"),
    "osserman.interior": (rg, "INTERIOR_TOL"),
    "loewner.slack": (rg, "ARC_TOL"),
    "burns_krantz.mass": (rg, "IDENTITY_MASS"),
    "burns_krantz.contact_gate": (rg, "CONTACT_GATE"),
    "ball.g2": (ball, "G2_TOL"),
    "roundtrip": (None, "roundtrip"),
}
ROUNDTRIP_TOL = 1e-8


class InputError(Exception):
    pass


@contextlib.contextmanager
def _overrides(tol: dict):
    saved = {}
    try:
        for key, value in tol.items():
            mod, attr = TOLERANCES[key]
            if mod is not None:
                saved[key] = getattr(mod, attr)
                setattr(mod, attr, value)
        yield
    finally:
        for key, value in saved.items():
            mod, attr = TOLERANCES[key]
            setattr(mod, attr, value)


def _streams(seed, n):
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(n)]


def _tag(rep: VerificationReport, name: str) -> dict:
    out = rep.to_json()
    out["instance"] = name
    return out


def _disc_inputs(items):
    return [(f"input_{k}", hm.from_json(obj, certify=True)) for k, obj in enumerate(items)]


# -- suites ------------------------------------------------------------------

def suite_schwarz_pick(seed, items):
    maps = list(corpus.named_maps().items()) + _disc_inputs(items)
    rngs = _streams(seed, len(maps) + 40)
    out = []
    for k in range(40):
        f = corpus.random_blaschke(rngs[k]) if k % 4 else corpus.random_moebius(rngs[k])
        maps.append((f"random_{k}", f))
    for (name, f), rng in zip(maps, rngs):
        a, b = corpus.random_disc_point(rng, 0.9), corpus.random_disc_point(rng, 0.9)
        out.append(_tag(rg.verify_schwarz_pick(f, a, b), name))
    return out


def suite_osserman(seed, items):
    maps = [(n, f) for n, f in corpus.named_maps().items() if n.startswith(("extremal", "square", "identity"))]
    maps += _disc_inputs(items)
    points = [1.0] * len(maps)
    for k, rng in enumerate(_streams(seed, 20)):
        maps.append((f"random_{k}", corpus.random_blaschke(rng, origin_fixing=True)))
        points.append(complex(np.exp(2j * np.pi * rng.uniform())))
    return [_tag(rg.verify_osserman(f, b, interior_samples=200, seed=k), name)
            for k, ((name, f), b) in enumerate(zip(maps, points))]


def suite_loewner(seed, items):
    maps = [("square", hm.power(2)), ("identity", hm.identity())]
    maps += [(n, f) for n, f in _disc_inputs(items) if isinstance(f, hm.BlaschkeProduct)]
    rngs = _streams(seed, 20)
    for k, rng in enumerate(rngs):
        maps.append((f"random_{k}", corpus.random_blaschke(rng, origin_fixing=True)))
    out = []
    for k, (name, f) in enumerate(maps):
        rng = rngs[k % len(rngs)]
        t1 = float(rng.uniform(0, 2 * math.pi))
        arc = (t1, t1 + float(rng.uniform(0.1, 2 * math.pi)))
        out.append(_tag(rg.verify_loewner_velling(f, arc), name))
    return out


def suite_burns_krantz(seed, items):
    rng = _streams(seed, 1)[0]
    maps = corpus.burns_krantz_corpus(rng, 20) + _disc_inputs(items)
    return [_tag(rg.burns_krantz_classify(f).details, name) for name, f in maps]


def suite_chelst(seed, items):
    roots8 = list(np.exp(2j * np.pi * np.arange(8) / 8))
    f = hm.chelst_example()
    cases = [
        ("chelst_power8", f, hm.power(8), roots8),
        ("chelst_power2", f, hm.power(2), [1.0, -1.0]),
        ("perturbed_square", rg.perturbed_square(), hm.power(2), [1.0, -1.0]),
        ("square_vs_square", hm.power(2), hm.power(2), [1.0, -1.0]),
    ]
    for k, obj in enumerate(items):
        cases.append((f"input_{k}", hm.from_json(obj["f"], certify=True),
                      hm.from_json(obj["B"]), [hm._cplx(p) for p in obj["points"]]))
    return [_tag(rg.verify_chelst(f, B, pts), name) for name, f, B, pts in cases]


def _roundtrip_report(name, m: hz.BoundaryMeasure, C: complex, tol):
    h = hz.HerglotzData(m, C)
    N = 12
    exact = hz.moments_of_measure(m, N)
    c = hm.taylor_coefficients(lambda z: hz.herglotz_transform(h, z), N + 1, 0.5)
    got, const = hz.moments_from_map(c)
    err = float(max(np.abs(got.values - exact.values).max(), abs(const - C)))
    pos = hz.herglotz_positivity(got)
    rep = VerificationReport("herglotz-roundtrip", digest([h]),
                             tolerances={"roundtrip": tol, "psd_relative": 1e-10})
    rep.add("roundtrip", 0j, tol - err)
    rep.details.update({"roundtrip_error": err, "psd": pos.psd,
                        "min_eigenvalue": pos.min_eigenvalue, "atoms": len(m.angles)})
    if err >= tol or not pos.psd:
        rep.verdict = "violated"
    return _tag(rep, name)


def suite_herglotz_roundtrip(seed, items, tol=ROUNDTRIP_TOL):
    rngs = _streams(seed, 20)
    cases = [("delta0", hz.delta0(), 0j)]
    for k, rng in enumerate(rngs):
        cases.append((f"random_{k}", corpus.random_measure(rng), 1j * float(rng.uniform(-1, 1))))
    for k, obj in enumerate(items):
        h = hz.HerglotzData.from_json(obj.get("measure", obj))
        cases.append((f"input_{k}", h.measure, h.constant))
    out = [_roundtrip_report(*c, tol) for c in cases]
    worst = max(r["details"]["roundtrip_error"] for r in out)
    for r in out:
        r["details"]["suite_max_roundtrip_error"] = worst
    return out


def _cartan_report(name, phi: ps.FormalPowerSeries, jmax=20):
    k = phi.lowest_nonlinear_degree()
    rep = VerificationReport("cartan", digest([phi]), tolerances={"relative": 1e-12})
    base = phi.homogeneous_part(k) if k else None
    it = phi
    worst = 0.0
    for j in range(1, jmax + 1):
        if j > 1:
            it = ps.series_compose(phi, it)
        if k:
            got = it.homogeneous_part(k)
            scale = max(np.abs(j * base).max(), 1e-300)
            worst = max(worst, float(np.abs(got - j * base).max() / scale))
    rep.add("linear_growth", 0j, 1e-12 - worst)
    rep.details.update({"degree": k, "max_relative_error": worst, "iterations": jmax})
    if worst > 1e-12:
        rep.verdict = "violated"
    return _tag(rep, name)


def suite_cartan(seed, items):
    rngs = _streams(seed, 10)
    out = []
    for k, rng in enumerate(rngs):
        out.append(_cartan_report(f"random_{k}", corpus.random_tangent_series(rng, 1 + k % 2, 6)))
    for k, obj in enumerate(items):
        out.append(_cartan_report(f"input_{k}", ps.FormalPowerSeries.from_json(obj)))
    worked = ps.FormalPowerSeries.from_terms(1, {(1,): 1, (2,): 0.1})
    c = ps.cauchy_estimate_check(worked, 0.5, 1.0, 100)
    rep = VerificationReport("cauchy-estimate", digest([worked, 0.5, 1.0]),
                             tolerances={"relative_guard": 1e-12})
    rep.details.update(c.to_json())
    rep.details["expected_first_violation"] = 41
    if c.first_violation != 41:
        rep.verdict = "violated"
    out.append(_tag(rep, "z+0.1z^2"))
    return out


def suite_ball(seed, items):
    rng = _streams(seed, 1)[0]
    maps = [("identity", ball.BallIdentity()),
            ("line_automorphism", ball.AutomorphismMap(ball.automorphism_to_line([0.2, 0.3j]))),
            ("cubic_product", ball.product_map(hm.cubic_counterexample(), 0.9))]
    for k, obj in enumerate(items):
        maps.append((f"input_{k}", ball.ball_from_json(obj)))
    out = [_tag(ball.burns_krantz_ball_classify(P).details, name) for name, P in maps]
    # sphere preservation under random lambda_alpha
    z = ball.sphere_point(rng.normal(size=(2, 200)) + 1j * rng.normal(size=(2, 200)))
    al = 0.95 * np.sqrt(rng.uniform(size=200)) * np.exp(2j * np.pi * rng.uniform(size=200))
    dev = max(float(abs(ball.norm2(ball.lambda_alpha(a, z[:, k])) - 1)) for k, a in enumerate(al))
    rep = VerificationReport("ball-sphere", digest([seed]), tolerances={"sphere": 1e-12})
    rep.add("sphere", 0j, 1e-12 - dev)
    rep.details["max_deviation"] = dev
    if dev > 1e-12:
        rep.verdict = "violated"
    out.append(_tag(rep, "lambda_alpha_sphere"))
    return out


def _test_discs(rng):
    c = float(rng.uniform(0.2, 0.9))
    u = np.exp(1j * rng.uniform(0, 2 * np.pi))
    return [
        ("slice", lambda t: np.stack([t, 0 * t])),
        ("chord", lambda t: np.stack([(1 + t) / 2, (1 - t) / 2 * c])),
        ("tangent_quadratic", lambda t: np.stack([(1 + t) / 2, u * (1 - t) / 2])),
        ("squared_slice", lambda t: np.stack([t ** 2, 0 * t])),
    ]


def suite_contact(seed, items):
    rho = ball.DefiningFunction()
    out = []
    for name, disc in _test_discs(_streams(seed, 1)[0]):
        fit = ball.analytic_disc_contact(disc, rho, [1, 0])
        rep = VerificationReport("analytic-disc-contact", digest([name, seed]),
                                 tolerances={"exponent_cap": 2.1})
        rep.add("exponent", 1 + 0j, 2.1 - fit.order)
        rep.details.update(fit.to_json())
        if fit.order > 2.1:
            rep.verdict = "violated"
        out.append(_tag(rep, name))
    return out


RUNNERS = {
    "schwarz-pick": suite_schwarz_pick, "osserman": suite_osserman, "loewner": suite_loewner,
    "burns-krantz": suite_burns_krantz, "chelst": suite_chelst,
    "herglotz-roundtrip": suite_herglotz_roundtrip, "cartan": suite_cartan,
    "ball": suite_ball, "contact": suite_contact,
}


# -- plumbing ----------------------------------------------------------------

def _load_json(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None


def _input_items(path):
    if path is None:
        return []
    obj = _load_json(path)
    if isinstance(obj, dict) and "items" in obj:
        obj = obj["items"]
    return obj if isinstance(obj, list) else [obj]


def _parse_tolerances(pairs):
    out = {}
    for item in pairs or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"tolerance {item!r} is not KEY=VALUE")
        if key not in TOLERANCES:
            raise InputError(f"unknown tolerance {key!r}; known: {', '.join(sorted(TOLERANCES))}")
        try:
            out[key] = float(value)
        except ValueError:
            raise InputError(f"tolerance {key} needs a number, got {value!r}") from None
    return out


def run_suite(suite, seed=0, input_path=None, tolerances=None, timing=False):
    """Run one suite and return ``(exit_code, document)``."""
    if suite not in RUNNERS:
        raise InputError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    tol = dict(tolerances or {})
    items = _input_items(input_path)
    start = time.perf_counter()
    kwargs = {"tol": tol["roundtrip"]} if suite == "herglotz-roundtrip" and "roundtrip" in tol else {}
    with _overrides(tol):
        reports = RUNNERS[suite](seed, items, **kwargs)
    meta = {"version": __version__, "suite": suite, "seed": seed, "tolerances": tol,
            "backend": kernels.BACKEND, "count": len(reports),
            "violated": sum(r["verdict"] == "violated" for r in reports)}
    if timing:
        meta["wall_time_s"] = round(time.perf_counter() - start, 3)
    code = 2 if meta["violated"] else 0
    return code, {"metadata": meta, "reports": reports}


def _fmt(c) -> str:
    c = complex(c)
    re, im = c.real + 0.0, c.imag + 0.0  # drop negative zeros
    return f"{re:.12g}" if im == 0 else f"{re:.12g}{im:+.12g}i"


def describe(path, out=None):
    out = out or sys.stdout
    obj = _load_json(path)
    if isinstance(obj, dict) and "kind" not in obj and "atoms" in obj:
        h = hz.HerglotzData.from_json(obj)
        print(f"measure: {len(h.measure.angles)} atoms, total mass {h.measure.total_mass:.12g}, "
              f"constant {h.constant.imag:+.12g}i", file=out)
        return
    f = hm.from_json(obj)
    print(f"variant: {f.kind}", file=out)
    print(f"parameters: {json.dumps(f.to_json(), sort_keys=True)}", file=out)
    try:
        cert = f.certificate if getattr(f, "certificate", None) else hm.certify_self_map(f)
        print(f"certification: {cert.method} (max boundary modulus {cert.max_boundary_modulus:.12g})",
              file=out)
    except SchwarzKitError as e:
        print(f"certification: failed ({e})", file=out)
    print(f"f(0) = {_fmt(f(0j))}", file=out)
    print(f"f'(0) = {_fmt(f.derivative(0j))}", file=out)
    for b in (1, 1j, -1, -1j):
        try:
            lim = bd.radial_limit(f, b)
            print(f"radial limit at {_fmt(b)}: {_fmt(lim.value)}", file=out)
        except (SchwarzKitError, ValueError) as e:
            print(f"radial limit at {_fmt(b)}: unavailable ({e})", file=out)


def build_parser():
    p = argparse.ArgumentParser(prog="schwarzkit", description=__doc__.splitlines()[0])
    p.add_argument("--suite", help="suite to run")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--input", help="JSON file with extra instances for the suite")
    p.add_argument("--output", help="report file (default: standard output)")
    p.add_argument("--tolerance", action="append", metavar="KEY=VALUE",
                   help="override a tolerance; repeatable")
    p.add_argument("--list-suites", action="store_true")
    p.add_argument("--describe", metavar="PATH", help="summarize a map or measure file")
    p.add_argument("--timing", action="store_true", help="record wall time in the metadata")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.list_suites:
            print("\n".join(SUITES))
            return 0
        if args.describe:
            describe(args.describe)
            return 0
        if not args.suite:
            raise InputError("--suite is required (see --list-suites)")
        tol = _parse_tolerances(args.tolerance)
        code, doc = run_suite(args.suite, args.seed, args.input, tol, args.timing)
    except (InputError, SchwarzKitError, ValueError, KeyError, TypeError) as e:
        msg = str(e) if not isinstance(e, KeyError) else f"missing field {e}"
        print(f"error: {msg}", file=sys.stderr)
        return 1
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
