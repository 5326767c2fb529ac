"""
Solving a discrete problem and collecting its front
====================================================

A small bi-objective knapsack-like instance is solved for a batch of weights.
The archive keeps only nondominated images; N/D, distinct points per solve,
measures how much work was redundant.
"""

import numpy as np

from wsweights import (
    Archive,
    Discrete,
    ProblemInstance,
    enumerate_uniform,
    filter_nondominated,
    sample_slhs_p2,
    solve_batch,
)

rng = np.random.default_rng(0)
# 200 random 0/1 selections of 12 items; objectives are -value and weight.
X = rng.integers(0, 2, size=(200, 12)).astype(float)
value = rng.uniform(1, 10, size=12)
weight = rng.uniform(1, 10, size=12)
instance = ProblemInstance(np.vstack([-value, weight]), Discrete(X))

images = [tuple(instance.objectives @ x) for x in X]
true_front = filter_nondominated(images)
print(f"{len(images)} candidate solutions, {len(true_front)} nondominated")

for name, batch in [
    ("lattice d=10", enumerate_uniform(2, 10)),
    ("lattice d=40", enumerate_uniform(2, 40)),
    ("structured LHS d=40", sample_slhs_p2(40, seed=1)),
]:
    archive = Archive()
    for sol in solve_batch(instance, batch, parallelism=4):
        archive.insert(sol)
    print(
        f"{name:20s} solves D={archive.solved_count:3d}  distinct N={archive.distinct_count:2d}"
        f"  N/D {archive.redundancy_ratio():.2f}"
    )

# Zero-weight components can land on weakly nondominated points; the flag says so.
edge = solve_batch(instance, [(1.0, 0.0), (0.0, 1.0)])
print("\nextreme weights flagged weakly_only:", [s.weakly_only for s in edge])
