"""Time the compiled kernels against the pure-Python fallback.

Run with ``python3 benchmarks/bench_kernels.py``; add ``--repeat N`` to change
the number of timing repetitions.
"""

import argparse
import timeit

import numpy as np

from schwarzkit import _kernels_py

try:
    from schwarzkit import _kernels
except ImportError:
    _kernels = None


def cases(rng):
    zeros = 0.9 * np.sqrt(rng.uniform(size=8)) * np.exp(2j * np.pi * rng.uniform(size=8))
    z = 0.99 * np.exp(2j * np.pi * rng.uniform(size=20000)) * np.sqrt(rng.uniform(size=20000))
    angles = rng.uniform(0, 2 * np.pi, 8)
    masses = rng.uniform(0.1, 2, 8)
    a1 = rng.normal(size=64) + 1j * rng.normal(size=64)
    b1 = rng.normal(size=64) + 1j * rng.normal(size=64)
    a2 = rng.normal(size=(11, 11)) + 1j * rng.normal(size=(11, 11))
    b2 = rng.normal(size=(11, 11)) + 1j * rng.normal(size=(11, 11))
    return {
        "blaschke (8 zeros, 2e4 pts)": lambda m: m.blaschke(zeros, 1 + 0j, z),
        "herglotz (8 atoms, 2e4 pts)": lambda m: m.herglotz(angles, masses, z),
        "series_mul1 (degree 63)": lambda m: m.series_mul1(a1, b1, 63),
        "series_mul2 (degree 10)": lambda m: m.series_mul2(a2, b2, 10),
    }


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    rng = np.random.default_rng(0)
    print(f"{'kernel':32s} {'python [ms]':>12s} {'compiled [ms]':>14s} {'speedup':>8s}")
    for name, fn in cases(rng).items():
        t_py = min(timeit.repeat(lambda: fn(_kernels_py), number=3, repeat=args.repeat)) / 3
        if _kernels is None:
            print(f"{name:32s} {1e3 * t_py:12.3f} {'n/a':>14s} {'':>8s}")
            continue
        ref, got = fn(_kernels_py), fn(_kernels)
        ref = ref if isinstance(ref, tuple) else (ref,)
        got = got if isinstance(got, tuple) else (got,)
        err = max(float(np.max(np.abs(np.asarray(r) - np.asarray(g)))) for r, g in zip(ref, got))
        t_c = min(timeit.repeat(lambda: fn(_kernels), number=3, repeat=args.repeat)) / 3
        print(f"{name:32s} {1e3 * t_py:12.3f} {1e3 * t_c:14.3f} {t_py / t_c:7.1f}x  (max diff {err:.1e})")


if __name__ == "__main__":
    main()
