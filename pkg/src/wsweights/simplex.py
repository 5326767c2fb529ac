"""Dense-tableau two-phase primal simplex with Bland's anti-cycling rule.

Solves ``min c.x  s.t.  A x (<=,=,>=) b,  lower <= x <= upper`` for small,
well-scaled problems.  Bounds may be infinite on either side.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DimensionError, SolverStalledError

PIVOT_TOL = 1e-9
FEAS_TOL = 1e-9

_SENSES = {"<=": -1, "=": 0, "==": 0, ">=": 1}


class LPStatus(str, enum.Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"


@dataclass
class LPResult:
    status: LPStatus
    x: Optional[np.ndarray] = None
    objective: Optional[float] = None
    reduced_costs: Optional[np.ndarray] = None
    iterations: int = 0


def _standard_form(A, b, sense, bounds, n):
    """Rewrite bounded variables as nonnegative ones: x = offset + T @ z, z >= 0.

    Returns (A_z, b_z, senses, T, offset) with finite upper bounds turned into
    extra <= rows.
    """
    cols, extra_rows, extra_rhs = [], [], []
    offset = np.zeros(n)
    for j, (lo, hi) in enumerate(bounds):
        e = np.zeros(n)
        e[j] = 1.0
        if np.isfinite(lo):
            offset[j] = lo
            cols.append(e)
            if np.isfinite(hi):
                extra_rows.append(len(cols) - 1)
                extra_rhs.append(hi - lo)
        elif np.isfinite(hi):
            offset[j] = hi
            cols.append(-e)
        else:
            cols.append(e)
            cols.append(-e)
    T = np.column_stack(cols) if cols else np.zeros((n, 0))
    A_z = A @ T
    b_z = b - A @ offset
    senses = list(sense)
    if extra_rows:
        ub = np.zeros((len(extra_rows), T.shape[1]))
        ub[np.arange(len(extra_rows)), extra_rows] = 1.0
        A_z = np.vstack([A_z, ub])
        b_z = np.concatenate([b_z, extra_rhs])
        senses += [-1] * len(extra_rows)
    return A_z, b_z, senses, T, offset


def _pivot(tab, row, col):
    tab[row] /= tab[row, col]
    col_vals = tab[:, col].copy()
    col_vals[row] = 0.0
    tab -= np.outer(col_vals, tab[row])


class _Tableau:
    def __init__(self, tab, basis, max_iter):
        self.tab = tab
        self.basis = basis
        self.max_iter = max_iter
        self.iterations = 0

    def reduced_costs(self, cost):
        return cost - cost[self.basis] @ self.tab[:, :-1]

    def run(self, cost, allowed):
        """Minimise cost over the current basis; returns False when unbounded."""
        while True:
            r = self.reduced_costs(cost)
            entering = next((j for j in allowed if r[j] < -PIVOT_TOL), None)
            if entering is None:
                return True
            column = self.tab[:, entering]
            rows = np.nonzero(column > PIVOT_TOL)[0]
            if rows.size == 0:
                return False
            ratios = self.tab[rows, -1] / column[rows]
            best = ratios.min()
            ties = rows[ratios <= best + PIVOT_TOL * max(1.0, abs(best))]
            leave = min(ties, key=lambda i: self.basis[i])
            if self.iterations >= self.max_iter:
                raise SolverStalledError(f"simplex exceeded {self.max_iter} pivots")
            _pivot(self.tab, leave, entering)
            self.basis[leave] = entering
            self.iterations += 1


def solve_lp(
    c: Sequence[float],
    A,
    b: Sequence[float],
    sense: Sequence[str],
    bounds: Optional[Sequence] = None,
    max_iter: Optional[int] = None,
) -> LPResult:
    """Minimise ``c.x`` over a polyhedron.

    ``sense`` holds one of ``"<="``, ``"="``, ``">="`` per row.  ``bounds`` is a
    per-variable ``(lower, upper)`` list with ``None`` for an infinite side;
    it defaults to ``x >= 0``.  The pivot cap defaults to ``10 * (n + m)**2``.
    """
    c = np.asarray(c, dtype=float)
    n = c.size
    A = np.asarray(A, dtype=float).reshape(-1, n)
    b = np.asarray(b, dtype=float)
    m = A.shape[0]
    if b.shape != (m,) or len(sense) != m:
        raise DimensionError("A, b and sense must agree on the number of rows")
    try:
        senses = [_SENSES[s] for s in sense]
    except KeyError as exc:
        raise DimensionError(f"unknown constraint sense {exc.args[0]!r}") from None
    if bounds is None:
        bounds = [(0.0, None)] * n
    if len(bounds) != n:
        raise DimensionError(f"expected {n} bounds, got {len(bounds)}")
    bnds = [
        (-np.inf if lo is None else float(lo), np.inf if hi is None else float(hi))
        for lo, hi in bounds
    ]
    if any(lo > hi for lo, hi in bnds):
        return LPResult(LPStatus.INFEASIBLE)
    if max_iter is None:
        max_iter = 10 * (n + m) ** 2

    A_z, b_z, senses, T, offset = _standard_form(A, b, senses, bnds, n)
    rows, nz = A_z.shape
    flip = b_z < 0
    A_z[flip] *= -1
    b_z[flip] *= -1
    senses = [-s if f else s for s, f in zip(senses, flip)]

    n_slack = sum(1 for s in senses if s != 0)
    art_rows = [i for i, s in enumerate(senses) if s >= 0]
    width = nz + n_slack + len(art_rows)
    tab = np.zeros((rows, width + 1))
    tab[:, :nz] = A_z
    tab[:, -1] = b_z
    basis = [-1] * rows
    k = nz
    for i, s in enumerate(senses):
        if s == 0:
            continue
        tab[i, k] = -float(s)  # +1 slack for <=, -1 surplus for >=
        if s < 0:
            basis[i] = k
        k += 1
    art_start = k
    for i in art_rows:
        tab[i, k] = 1.0
        basis[i] = k
        k += 1

    tableau = _Tableau(tab, basis, max_iter)
    if art_rows:
        phase1 = np.zeros(width)
        phase1[art_start:] = 1.0
        tableau.run(phase1, range(width))
        infeas = phase1[tableau.basis] @ tableau.tab[:, -1]
        if infeas > FEAS_TOL * max(1.0, np.abs(b_z).max(initial=0.0)):
            return LPResult(LPStatus.INFEASIBLE, iterations=tableau.iterations)
        # drive remaining artificials out of the basis, dropping redundant rows
        keep = []
        for i in range(len(tableau.basis)):
            if tableau.basis[i] < art_start:
                keep.append(i)
                continue
            cand = np.nonzero(np.abs(tableau.tab[i, :art_start]) > PIVOT_TOL)[0]
            if cand.size:
                _pivot(tableau.tab, i, cand[0])
                tableau.basis[i] = int(cand[0])
                keep.append(i)
        tableau.tab = np.delete(tableau.tab[keep], np.s_[art_start:width], axis=1)
        tableau.basis = [tableau.basis[i] for i in keep]
        width = art_start

    cost = np.zeros(width)
    cz = c @ T
    cost[:nz] = cz
    bounded = tableau.run(cost, range(width))
    if not bounded:
        return LPResult(LPStatus.UNBOUNDED, iterations=tableau.iterations)
    z = np.zeros(width)
    z[tableau.basis] = tableau.tab[:, -1]
    x = offset + T @ z[:nz]
    return LPResult(
        LPStatus.OPTIMAL,
        x=x,
        objective=float(c @ x),
        reduced_costs=tableau.reduced_costs(cost),
        iterations=tableau.iterations,
    )
