"""
Adaptive weight refinement
==========================

Start from a coarse lattice and split only the weight cells whose endpoint
images are far apart.  Compare with a fine uniform lattice of similar reach.
"""

import numpy as np

from wsweights import (
    Discrete,
    ProblemInstance,
    adaptive_search_general,
    adaptive_search_p2,
    enumerate_uniform,
    solve_batch,
)

rng = np.random.default_rng(4)
t = np.sort(rng.uniform(size=12))
curve = np.column_stack([t, (1 - t) ** 2])
clutter = rng.uniform(0.3, 1.5, size=(40, 2))
instance = ProblemInstance(np.eye(2), Discrete(np.vstack([curve, clutter])))

archive = adaptive_search_p2(instance, d=2, tau=0.0, rho=0.0, max_depth=10)
print(f"adaptive: {archive.solved_count} solves, {archive.distinct_count} points,"
      f" stopped by {archive.termination} after {archive.rounds} rounds")

uniform = {tuple(s.y) for s in solve_batch(instance, enumerate_uniform(2, 2**10))}
print(f"uniform d=1024: 1025 solves, {len(uniform)} points")
print("same supported points:", sorted(uniform) == sorted(archive.points))

# The audit log records every solve in order.
print("\nfirst audit records:")
for rec in archive.log[:5]:
    print(" ", rec)

# tau sets a gap threshold; cells with closer endpoints are left alone.
coarse = adaptive_search_p2(instance, d=2, tau=0.2)
print(f"\ntau=0.2: {coarse.solved_count} solves, {coarse.distinct_count} points,"
      f" {len(coarse.gaps)} gaps above threshold")

# Three objectives, points on the positive unit sphere: the simplex is split into small triangles that are refined the same way.
pts = rng.uniform(size=(300, 3))
pts = pts / np.linalg.norm(pts, axis=1, keepdims=True)
tri = adaptive_search_general(ProblemInstance(np.eye(3), Discrete(pts)), d0=2, tau=0.05, max_depth=4)
print(f"\np=3 sphere cap: {tri.solved_count} solves, {tri.distinct_count} points, {tri.termination}")
