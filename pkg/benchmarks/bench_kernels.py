"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Prints one line per kernel with the best-of-N wall time for each backend and
the speedup.  Exits nonzero if the two backends disagree.
"""
import argparse
import sys
import timeit

import numpy as np

from jsray import kernels


def cases(rng):
    d = np.log(rng.uniform(0.05, 20, 6))
    m, mp = rng.uniform(0.1, 10, 6), rng.uniform(0.1, 10, 6)
    x = rng.dirichlet(np.ones(6), size=10_000)
    s = np.linspace(-5, 5, 20_001)
    return {
        "scan_min (100001 shifts, k=6)": ("scan_min", (d, -5.0, 1e-4, 100_001)),
        "shift_profile (20001 shifts, k=6)": ("shift_profile", (d, s)),
        "ratio_max (10000 samples, k=6)": ("ratio_max", (m, mp, x)),
    }


def agree(a, b):
    if isinstance(a, tuple):
        return a[0] == b[0] and abs(a[1] - b[1]) <= 1e-15 * max(1.0, abs(b[1]))
    a, b = np.asarray(a, float), np.asarray(b, float)
    return bool(np.all(np.abs(a - b) <= 1e-15 * np.maximum(1.0, np.abs(b))))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if kernels.compiled_backend is None:
        print("compiled extension not available; only the numpy backend can run", file=sys.stderr)
        return 1
    rng = np.random.default_rng(args.seed)
    ok = True
    print(f"{'kernel':36s} {'cython':>10s} {'numpy':>10s} {'speedup':>8s}")
    for name, (fn, fargs) in cases(rng).items():
        fc = getattr(kernels.compiled_backend, fn)
        fp = getattr(kernels.python_backend, fn)
        if not agree(fc(*fargs), fp(*fargs)):
            print(f"{name}: backends disagree", file=sys.stderr)
            ok = False
        tc = min(timeit.repeat(lambda: fc(*fargs), number=1, repeat=args.repeat))
        tp = min(timeit.repeat(lambda: fp(*fargs), number=1, repeat=args.repeat))
        print(f"{name:36s} {tc * 1e3:8.2f}ms {tp * 1e3:8.2f}ms {tp / tc:7.1f}x")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
