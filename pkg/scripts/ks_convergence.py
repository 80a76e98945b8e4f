#!/usr/bin/env python3
"""KS distance to the limit law as a function of n.

Emits CSV (n, count, ks_distance, ks_reference, mean_scaled, exact_ks) to
stdout.  The exact_ks column is the sup distance of the *exact* finite-n
law (from the counting table, no sampling noise), which shows how much of
the empirical distance is lattice bias rather than Monte Carlo noise.

Example:
    python scripts/ks_convergence.py --sizes 100 1000 10000 --count 20000 --seed 7
"""

import argparse
import math
import sys

from hooklaw.exact import hook_distribution_via_part_counts
from hooklaw.limitlaw import cdf, ks_statistic
from hooklaw.sampling import SamplerConfig, resolve_threads, sample_hooks, scale_hook


def exact_sup_distance(n: int) -> float:
    dist = hook_distribution_via_part_counts(n)
    total = dist.total
    acc = 0
    worst = 0.0
    for k in range(1, n + 1):
        w = dist.weights.get(k, 0)
        lo = acc / total
        acc += w
        hi = acc / total
        model = cdf(scale_hook(k, n))
        worst = max(worst, abs(model - lo), abs(model - hi))
    return worst


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 316, 1000, 3162, 10000])
    ap.add_argument("--count", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=20250810)
    ap.add_argument("--threads", type=int)
    args = ap.parse_args()
    threads = resolve_threads(args.threads)

    print("n,count,ks_distance,ks_reference,mean_scaled,exact_ks")
    for n in args.sizes:
        cfg = SamplerConfig(n=n, seed=args.seed)
        obs = sample_hooks(cfg, args.count, threads=threads)
        report = ks_statistic([o.scaled for o in obs], n=n)
        reference = 1.95 / math.sqrt(args.count)
        exact = exact_sup_distance(n) if n <= 200000 else float("nan")
        print(
            f"{n},{args.count},{report.ks_distance:.6f},{reference:.6f},"
            f"{report.mean_scaled:.6f},{exact:.6f}"
        )
        sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
