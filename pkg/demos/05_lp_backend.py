"""
Continuous feasible sets
========================

The LP backend runs a two-phase simplex with Bland's rule.  Here the
feasible set is a polygon and the weighted sum optimum always sits on a vertex.
"""

import numpy as np

from wsweights import LP, ProblemInstance, Status, enumerate_uniform, solve, solve_batch

# minimise (-x1, -x2) over x1 + 2 x2 <= 4, 3 x1 + x2 <= 6, x >= 0
lp = LP([[1, 2], [3, 1]], [4, 6], ["<=", "<="])
instance = ProblemInstance(-np.eye(2), lp)

print("weight          x              value")
for sol in solve_batch(instance, enumerate_uniform(2, 6)):
    print(f"{np.round(sol.weight.weights, 3)!s:14s} {np.round(sol.x, 3)!s:14s} {sol.value: .3f}")

# Status reports rather than exceptions for infeasible and unbounded programs.
infeasible = ProblemInstance(np.eye(2), LP([[1, 1], [1, 1]], [1, 3], ["<=", ">="]))
unbounded = ProblemInstance(np.array([[-1.0], [0.0]]), LP([[0.0]], [0.0], ["<="]))
print("\ninfeasible ->", solve(infeasible, (0.5, 0.5)).status.value)
print("unbounded  ->", solve(unbounded, (1.0, 0.0)).status.value)
assert solve(instance, (0.5, 0.5)).status is Status.OPTIMAL

# Free variables use explicit bounds.
free = ProblemInstance(np.eye(2), LP([[-1, 0], [0, -1]], [1, 2], ["<=", "<="], [(None, None), (None, None)]))
print("free variables, w=(0.5,0.5):", solve(free, (0.5, 0.5)).x)
