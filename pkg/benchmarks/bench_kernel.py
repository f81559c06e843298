"""Compiled vs pure-Python search kernel.

Runs the same bounded model searches on both backends, checks that they agree,
and prints wall times. Usage::

    python3 benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import statistics
import sys
import time

from rmqe import _kernel_py, kernel
from rmqe.frames import B_CONDITIONS
from rmqe.models import model_to_json
from rmqe.theories import SearchResult, find_finite_model

try:
    from rmqe import _ckernel
except ImportError:
    _ckernel = None

CASES = [
    ("DLO", 2, 2),
    ("DLO", 3, 2),
    ("DLO-NEG", 1, 2),
]


def run(backend, theory, k, worlds):
    kernel._backend = backend
    stats = SearchResult(None)
    t0 = time.perf_counter()
    m = find_finite_model(theory, k, worlds, B_CONDITIONS, stats=stats)
    dt = time.perf_counter() - t0
    return dt, stats.candidates, None if m is None else model_to_json(m)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _ckernel is None:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation` first")
        return 1
    saved = kernel._backend
    print(f"{'case':18} {'visited':>10} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    try:
        for theory, k, w in CASES:
            fast, slow = [], []
            for _ in range(args.repeat):
                dc, nc, mc = run(_ckernel, theory, k, w)
                dp, np_, mp = run(_kernel_py, theory, k, w)
                if (nc, mc) != (np_, mp):
                    print(f"backends disagree on {theory} {k}x{w}", file=sys.stderr)
                    return 2
                fast.append(dc)
                slow.append(dp)
            c, p = statistics.median(fast), statistics.median(slow)
            print(f"{theory + f' {k}x{w}':18} {nc:>10} {c:>10.3f} {p:>10.3f} {p / c:>7.1f}x")
    finally:
        kernel._backend = saved
    return 0


if __name__ == "__main__":
    sys.exit(main())
