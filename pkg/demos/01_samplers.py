"""
Sampling weight vectors
=======================

Five ways to place weights on the unit simplex, from the deterministic
lattice to stratified draws.  Run with ``python demos/01_samplers.py``.
"""

import numpy as np

from wsweights import (
    SamplerConfig,
    count_uniform,
    enumerate_uniform,
    sample_dirichlet,
    sample_lhs_p2,
    sample_random,
    sample_slhs_general,
    sample_slhs_p2,
)

# The lattice with spacing 1/d.  For three objectives and d = 2 there are six points.
lattice = enumerate_uniform(3, 2)
print("lattice p=3 d=2:")
print(lattice.weights)
print("count_uniform(3, 2) =", count_uniform(3, 2))

# Its size grows combinatorially, which is why sampling matters for larger p.
for p in (3, 5, 8):
    print(f"p={p}: d=10 gives {count_uniform(p, 10)} weights, d=30 gives {count_uniform(p, 30)}")

# Random weights.  For two objectives the first component can follow a Beta law.
skewed = sample_random(2, 5, SamplerConfig(p=2, beta=(2.0, 5.0)), seed=1)
print("\nBeta(2, 5) first components:", np.round(skewed.weights[:, 0], 3))

# Dirichlet weights for any p; larger alpha pulls draws toward the centre.
for alpha in ((1, 1, 1), (10, 10, 10)):
    w = sample_dirichlet(alpha, 20000, seed=0).weights
    print(f"Dirichlet{alpha}: mean {np.round(w.mean(axis=0), 3)}, var {np.round(w.var(axis=0), 4)}")

# Plain LHS for two objectives: one draw per grid cell, then normalise.
lhs = sample_lhs_p2(6, s=1, seed=2)
print("\nLHS d=6 (raw draws, cells, weights):")
for raw, cell, w in zip(lhs.raw, lhs.cells, lhs.weights):
    print(f"  raw {np.round(raw, 3)}  cells {cell}  ->  {np.round(w, 3)}")

# Structured LHS pairs cell k with cell d-1-k, so each raw pair already sums close to 1
# and every normalised component stays inside its source cell.
slhs = sample_slhs_p2(6, seed=2)
print("\nstructured LHS d=6:")
for cell, w in zip(slhs.cells, slhs.weights):
    lo, hi = cell / 6, (cell + 1) / 6
    inside = bool(np.all((w >= lo) & (w <= hi)))
    print(f"  cells {cell}  ->  {np.round(w, 3)}  inside cells: {inside}")

# For p >= 3 the structured variant keeps cell multisets whose midpoints sum to about 1.
general = sample_slhs_general(4, 12, delta=0.05, budget=8, seed=3)
print("\nstructured LHS p=4 d=12 delta=0.05 (raw sums before normalising):")
print(np.round(general.raw_sums, 3))
