"""Time the rank-locus kernels: compiled extension vs numpy fallback.

    python benchmarks/bench_rankloci.py --p 37 --n 5 --d 4 --adjoint
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from grpinv.linforms import random_skew
from grpinv.rankloci import BACKENDS, adjoint_rank_profile, rank_profile


def run(backend: str, B, adjoint: bool, threads: int):
    fn = adjoint_rank_profile if adjoint else rank_profile
    t0 = time.perf_counter()
    prof = fn(B, backend=backend, threads=threads)
    return time.perf_counter() - t0, prof


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=13)
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--d", type=int, default=4)
    ap.add_argument("--adjoint", action="store_true", help="enumerate over F_p^n instead of F_p^d")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--backends", default=",".join(sorted(BACKENDS)))
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    B = random_skew(args.n, args.d, args.p, np.random.default_rng(args.seed))
    points = args.p ** (args.n if args.adjoint else args.d)
    print(f"p={args.p} n={args.n} d={args.d} adjoint={args.adjoint} points={points} threads={args.threads}")
    results = {}
    for name in args.backends.split(","):
        if name not in BACKENDS:
            print(f"{name:8s} unavailable")
            continue
        secs, prof = run(name, B, args.adjoint, args.threads)
        results[name] = prof
        print(f"{name:8s} {secs:9.3f} s  {points / secs / 1e6:8.2f} Mpoints/s  counts={prof.counts}")
    profiles = list(results.values())
    if len(profiles) > 1:
        same = all(pr == profiles[0] for pr in profiles[1:])
        print("backends agree" if same else "BACKENDS DISAGREE")


if __name__ == "__main__":
    main()
