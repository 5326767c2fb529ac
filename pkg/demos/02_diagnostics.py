"""
How normal do LHS weights look?
===============================

Summary statistics and Q-Q data for the first weight component produced by
the two-objective LHS sampler, plus a table of lattice sizes.
"""

import numpy as np

from wsweights import growth_table, inverse_normal_cdf, qq_data, sample_lhs_p2, summary_stats
from wsweights.diagnostics import pick_one_per_row

print("inverse normal CDF at 0.975:", inverse_normal_cdf(0.975))

# Pool ten seeds to smooth out run-to-run noise.
pooled = np.concatenate([sample_lhs_p2(100, 5, seed).weights[:, 0] for seed in range(10)])
stats = summary_stats(pooled)
print(f"\n{pooled.size} first components")
for key, value in stats.items():
    print(f"  {key:16s} {value: .4f}")

# A negative excess kurtosis means lighter tails than a normal law.
qq = qq_data(pooled)
low, high = qq.tail_deviation(0.1)
print(f"Q-Q correlation {qq.correlation():.4f}; tail deviation low {low:+.3f}, high {high:+.3f}")

# Picking a random component per row instead of always the first gives a symmetric sample.
picked = pick_one_per_row(sample_lhs_p2(100, 5, seed=0).weights, seed=0)
print(f"random component per row: mean {picked.mean():.3f}, Q-Q correlation {qq_data(picked).correlation():.4f}")

# A coarse text Q-Q plot: each row is a theoretical quantile and its observed partner.
print("\n theoretical  observed")
for i in np.linspace(0, qq.n - 1, 9).astype(int):
    print(f"  {qq.theoretical[i]: .3f}     {qq.observed[i]: .3f}")

print("\nlattice size by (p, d):")
print(" p   d=5      d=10        d=25")
rows = {(p, d): c for p, d, c, _ in growth_table(range(2, 7), [5, 10, 25])}
for p in range(2, 7):
    print(f" {p}  {rows[(p, 5)]:6d}  {rows[(p, 10)]:8d}  {rows[(p, 25)]:10d}")
