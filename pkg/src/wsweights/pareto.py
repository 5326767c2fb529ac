"""Dominance, nondominated archives and adaptive weight refinement."""

from __future__ import annotations

import enum
import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .core import WeightVector
from .errors import (
    BudgetExceededError,
    DimensionError,
    EmptyArchiveError,
    SolveFailedError,
)
from .samplers import DEFAULT_BUDGET, uniform_compositions
from .scalarise import ProblemInstance, ScalarSolution, Status, solve

logger = logging.getLogger(__name__)

TOL = 1e-9


def _pair(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise DimensionError(f"points have shapes {a.shape} and {b.shape}")
    return a, b


def dominates(a, b, tol: float = TOL) -> bool:
    """True when ``a`` is no worse than ``b`` everywhere and better somewhere.

    Coordinates within ``tol`` of each other count as equal.
    """
    a, b = _pair(a, b)
    return bool(np.all(a <= b + tol) and np.any(a < b - tol))


def strictly_dominates(a, b, tol: float = TOL) -> bool:
    a, b = _pair(a, b)
    return bool(np.all(a < b - tol))


def same_point(a, b, tol: float = TOL) -> bool:
    a, b = _pair(a, b)
    return bool(np.all(np.abs(a - b) <= tol))


def _as_matrix(points) -> np.ndarray:
    if len(points) == 0:
        return np.zeros((0, 0))
    try:
        pts = np.array([np.asarray(p, dtype=float) for p in points])
    except ValueError:
        raise DimensionError("points do not share one dimension") from None
    if pts.ndim != 2:
        raise DimensionError("points do not share one dimension")
    return pts


def filter_nondominated(points: Sequence, tol: float = TOL) -> list:
    """Points not dominated by any other, duplicates collapsed to their first occurrence."""
    pts = _as_matrix(points)
    if pts.shape[0] == 0:
        return []
    le = np.all(pts[:, None, :] <= pts[None, :, :] + tol, axis=2)
    lt = np.any(pts[:, None, :] < pts[None, :, :] - tol, axis=2)
    dominated = np.any(le & lt, axis=0)
    kept = []
    for j in np.nonzero(~dominated)[0]:
        if not any(np.all(np.abs(pts[k] - pts[j]) <= tol) for k in kept):
            kept.append(j)
    return [points[j] for j in kept]


def weakly_nondominated_mask(points: Sequence, tol: float = TOL) -> np.ndarray:
    pts = _as_matrix(points)
    if pts.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    strict = np.all(pts[:, None, :] < pts[None, :, :] - tol, axis=2)
    return ~np.any(strict, axis=0)


# -- archive -------------------------------------------------------------------


class InsertKind(str, enum.Enum):
    NEW = "new"
    DUPLICATE = "duplicate"
    DOMINATED = "dominated"
    EVICTED = "evicted"


@dataclass(frozen=True)
class InsertReport:
    kind: InsertKind
    evicted: int = 0

    def __str__(self):
        if self.kind is InsertKind.EVICTED:
            return f"evicted:{self.evicted}"
        return self.kind.value


@dataclass
class ArchiveEntry:
    point: tuple
    weights: list
    x: Optional[np.ndarray] = None


@dataclass(frozen=True)
class GapRecord:
    """A weight-space cell whose endpoint images were compared against tau.

    ``cell`` is a (lo, hi) pair of first-component weights for two objectives
    and a tuple of vertex weight vectors otherwise.
    """

    cell: tuple
    images: tuple
    gap: float
    round: int


@dataclass
class Archive:
    """Incrementally maintained nondominated set with solve accounting."""

    entries: list = field(default_factory=list)
    solved_count: int = 0
    tol: float = TOL
    termination: Optional[str] = None
    rounds: int = 0
    log: list = field(default_factory=list)
    gaps: list = field(default_factory=list)

    @property
    def distinct_count(self) -> int:
        return len(self.entries)

    @property
    def points(self) -> list:
        return [e.point for e in self.entries]

    def insert(self, solution: ScalarSolution) -> InsertReport:
        if solution.status is not Status.OPTIMAL:
            raise SolveFailedError(
                f"cannot archive a {solution.status.value} solve", weight=solution.weight
            )
        y = np.asarray(solution.y, dtype=float)
        if self.entries and len(self.entries[0].point) != y.size:
            raise DimensionError("image dimension differs from archived points")
        self.solved_count += 1
        for entry in self.entries:
            if same_point(entry.point, y, self.tol):
                entry.weights.append(solution.weight)
                return InsertReport(InsertKind.DUPLICATE)
        if any(dominates(e.point, y, self.tol) for e in self.entries):
            return InsertReport(InsertKind.DOMINATED)
        before = len(self.entries)
        self.entries = [e for e in self.entries if not dominates(y, e.point, self.tol)]
        evicted = before - len(self.entries)
        self.entries.append(ArchiveEntry(tuple(solution.y), [solution.weight], solution.x))
        if evicted:
            return InsertReport(InsertKind.EVICTED, evicted)
        return InsertReport(InsertKind.NEW)

    def redundancy_ratio(self) -> float:
        return redundancy_ratio(self)


def archive_insert(archive: Archive, solution: ScalarSolution) -> InsertReport:
    return archive.insert(solution)


def redundancy_ratio(archive: Archive) -> float:
    """Distinct nondominated points found per scalarised problem solved."""
    if archive.solved_count == 0:
        raise EmptyArchiveError("no solves recorded")
    return archive.distinct_count / archive.solved_count


# -- adaptive refinement ---------------------------------------------------------


class _Runner:
    """Solves weights once each, feeding results into an archive and audit log."""

    def __init__(self, instance, budget):
        self.instance = instance
        self.budget = budget
        self.archive = Archive()
        self.cache = {}

    def image(self, key):
        return np.asarray(self.cache[key].y, dtype=float)

    def evaluate(self, keys, round_no):
        for key in keys:
            if key in self.cache:
                continue
            if self.archive.solved_count >= self.budget:
                raise BudgetExceededError(f"adaptive search hit the budget of {self.budget} solves")
            weight = WeightVector(tuple(float(v) for v in key))
            sol = solve(self.instance, weight)
            if sol.status is not Status.OPTIMAL:
                raise SolveFailedError(
                    f"{sol.status.value} scalarised problem at weight {weight.weights}",
                    weight=weight,
                )
            self.cache[key] = sol
            report = self.archive.insert(sol)
            self.archive.log.append(
                {
                    "round": round_no,
                    "weight": list(weight.weights),
                    "image": list(sol.y),
                    "report": str(report),
                    "solved": self.archive.solved_count,
                    "distinct": self.archive.distinct_count,
                }
            )


def _check_params(d, tau, rho, max_depth):
    if d < 1:
        raise DimensionError(f"d must be >= 1, got {d}")
    if not tau >= 0:
        raise DimensionError(f"tau must be >= 0, got {tau}")
    if not 0 <= rho <= 1:
        raise DimensionError(f"rho must be in [0, 1], got {rho}")
    if max_depth < 1:
        raise DimensionError(f"max_depth must be >= 1, got {max_depth}")


def adaptive_search_p2(
    instance: ProblemInstance,
    d: int = 2,
    tau: float = 0.0,
    rho: float = 0.0,
    max_depth: int = 12,
    budget: int = DEFAULT_BUDGET,
) -> Archive:
    """Uniform-increment start, then subdivide cells whose endpoint images are far apart.

    Weight positions are exact fractions, so a weight shared by neighbouring
    cells is solved once.  Each qualifying cell is split into ``d`` parts (two
    when ``d`` is 1).  The redundancy ratio is checked after each full round.
    """
    if instance.p != 2:
        raise DimensionError(f"adaptive_search_p2 needs p = 2, got {instance.p}")
    _check_params(d, tau, rho, max_depth)
    run = _Runner(instance, budget)
    knots = [Fraction(k, d) for k in range(d + 1)]
    run.evaluate([(k, 1 - k) for k in knots], 0)
    cells = list(zip(knots, knots[1:]))
    parts = max(d, 2)
    depth = 0
    while True:
        wide = []
        for lo, hi in cells:
            n1, n2 = run.image((lo, 1 - lo)), run.image((hi, 1 - hi))
            gap = float(np.linalg.norm(n1 - n2))
            if gap > tau:
                wide.append(((lo, hi), (tuple(n1), tuple(n2)), gap))
        if not wide:
            reason = "no-gaps"
            break
        if depth >= max_depth:
            reason = "max-depth"
            break
        depth += 1
        cells, fresh = [], []
        for (lo, hi), images, gap in wide:
            run.archive.gaps.append(GapRecord((float(lo), float(hi)), images, gap, depth))
            sub = [lo + (hi - lo) * Fraction(k, parts) for k in range(parts + 1)]
            cells.extend(zip(sub, sub[1:]))
            fresh.extend((w, 1 - w) for w in sub[1:-1])
        run.evaluate(fresh, depth)
        logger.debug("round %d: %d cells, N=%d D=%d", depth, len(cells),
                     run.archive.distinct_count, run.archive.solved_count)
        if run.archive.redundancy_ratio() < rho:
            reason = "rho"
            break
    run.archive.termination = reason
    run.archive.rounds = depth
    return run.archive


def lattice_simplices(p: int, d: int) -> list:
    """Triangulate the lattice {k >= 0, sum k = d} into d**(p-1) simplices.

    Works in cumulative coordinates y_j = k_1 + ... + k_j, where the lattice
    simplex becomes {0 <= y_1 <= ... <= y_{p-1} <= d}; that region is a union
    of Freudenthal simplices of the unit cube grid.  Each simplex is returned
    as a tuple of p integer compositions.
    """
    dim = p - 1
    out = []
    for base in itertools.product(range(d), repeat=dim):
        for perm in itertools.permutations(range(dim)):
            y = list(base)
            verts = [tuple(y)]
            for axis in perm:
                y[axis] += 1
                verts.append(tuple(y))
            if all(
                v[0] >= 0 and v[-1] <= d and all(v[i] <= v[i + 1] for i in range(dim - 1))
                for v in verts
            ):
                out.append(tuple(_from_cumulative(v, d) for v in verts))
    return out


def _from_cumulative(y, d):
    full = (0,) + tuple(y) + (d,)
    return tuple(full[i + 1] - full[i] for i in range(len(full) - 1))


def _max_pairwise(images):
    best, pair = -1.0, (0, 0)
    for i, j in itertools.combinations(range(len(images)), 2):
        dist = float(np.linalg.norm(images[i] - images[j]))
        if dist > best:
            best, pair = dist, (i, j)
    return best, pair


def adaptive_search_general(
    instance: ProblemInstance,
    d0: int = 2,
    tau: float = 0.0,
    rho: float = 0.0,
    max_depth: int = 12,
    budget: int = DEFAULT_BUDGET,
) -> Archive:
    """Adaptive refinement for p >= 3 objectives.

    Starts from the uniform lattice with spacing 1/d0, triangulated into
    simplex cells.  A cell whose vertex images span more than ``tau`` gets its
    centroid solved and is split into the p cells that replace one vertex by
    that centroid.
    """
    p = instance.p
    if p < 3:
        raise DimensionError(f"adaptive_search_general needs p >= 3, got {p}")
    _check_params(d0, tau, rho, max_depth)
    run = _Runner(instance, budget)
    start = [tuple(Fraction(k, d0) for k in comp) for comp in uniform_compositions(p, d0)]
    run.evaluate(start, 0)
    cells = [
        tuple(tuple(Fraction(k, d0) for k in v) for v in simplex)
        for simplex in lattice_simplices(p, d0)
    ]
    depth = 0
    while True:
        wide = []
        for cell in cells:
            images = [run.image(v) for v in cell]
            gap, (i, j) = _max_pairwise(images)
            if gap > tau:
                wide.append((cell, (tuple(images[i]), tuple(images[j])), gap))
        if not wide:
            reason = "no-gaps"
            break
        if depth >= max_depth:
            reason = "max-depth"
            break
        depth += 1
        cells, centroids = [], []
        for cell, images, gap in wide:
            run.archive.gaps.append(
                GapRecord(tuple(tuple(float(v) for v in w) for w in cell), images, gap, depth)
            )
            centre = tuple(sum(coords) / p for coords in zip(*cell))
            centroids.append(centre)
            cells.extend(cell[:i] + (centre,) + cell[i + 1:] for i in range(p))
        run.evaluate(centroids, depth)
        if run.archive.redundancy_ratio() < rho:
            reason = "rho"
            break
    run.archive.termination = reason
    run.archive.rounds = depth
    return run.archive


def adaptive_search(instance: ProblemInstance, d: int = 2, tau: float = 0.0, rho: float = 0.0,
                    max_depth: int = 12, budget: int = DEFAULT_BUDGET) -> Archive:
    if instance.p == 2:
        return adaptive_search_p2(instance, d, tau, rho, max_depth, budget)
    return adaptive_search_general(instance, d, tau, rho, max_depth, budget)
