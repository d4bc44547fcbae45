"""Randomized round-trip experiment: factor gram(G) for random G with G_0 = I.

    python3 scripts/run_experiment.py --count 100 --nmax 8 --mmax 8 --workers 4
"""

import argparse
import time
from collections import defaultdict

from psdfactor.trials import run_trials, worst_error


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--nmax", type=int, default=8)
    ap.add_argument("--mmax", type=int, default=8)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    t = time.perf_counter()
    results = run_trials(args.count, args.seed, args.nmax, args.mmax, workers=args.workers)
    dt = time.perf_counter() - t

    by_size = defaultdict(list)
    for r in results:
        by_size[r.n * r.m].append(r)
    print(f"{'n*m':>4} {'trials':>6} {'worst error':>12}")
    for k in sorted(by_size):
        print(f"{k:>4} {len(by_size[k]):>6} {worst_error(by_size[k]):>12.3e}")

    failed = [r for r in results if r.failure]
    for r in failed:
        print(f"trial {r.index} n={r.n} m={r.m}: {r.failure}")
    print(f"trials {len(results)}, failures {len(failed)}, "
          f"worst error {worst_error(results):.3e}, {dt:.2f} s")


if __name__ == "__main__":
    main()
