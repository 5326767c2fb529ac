"""Weighted sum scalarisation over discrete and polyhedral feasible sets."""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from . import simplex
from .core import WeightVector
from .errors import DimensionError, SolveFailedError, WSWeightsError

IMAGE_TOL = 1e-9


@dataclass(frozen=True)
class Discrete:
    """Finite feasible set given as an explicit list of decision vectors."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        if pts.shape[0] < 1 or pts.shape[1] < 1:
            raise DimensionError("discrete backend needs at least one point")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class LP:
    """Polyhedral feasible set ``A x (sense) b`` with per-variable bounds.

    ``bounds`` entries are ``(lower, upper)`` with ``None`` for an infinite
    side; omitted bounds mean ``x >= 0``.
    """

    A: np.ndarray
    b: np.ndarray
    sense: tuple
    bounds: Optional[tuple] = None

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        b = np.asarray(self.b, dtype=float).reshape(-1)
        sense = tuple(self.sense)
        if A.shape[0] < 1:
            raise DimensionError("LP backend needs at least one constraint row")
        if b.shape[0] != A.shape[0] or len(sense) != A.shape[0]:
            raise DimensionError("A, b and sense disagree on the number of rows")
        bad = [s for s in sense if s not in ("<=", "=", "==", ">=")]
        if bad:
            raise DimensionError(f"unknown constraint sense {bad[0]!r}")
        bounds = self.bounds
        if bounds is not None:
            bounds = tuple(
                (None if lo is None else float(lo), None if hi is None else float(hi))
                for lo, hi in bounds
            )
            if len(bounds) != A.shape[1]:
                raise DimensionError(f"expected {A.shape[1]} bounds, got {len(bounds)}")
            for lo, hi in bounds:
                if lo is not None and hi is not None and lo > hi:
                    raise DimensionError(f"inconsistent bounds ({lo}, {hi})")
        A.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "sense", sense)
        object.__setattr__(self, "bounds", bounds)


@dataclass(frozen=True)
class ProblemInstance:
    """Linear objectives ``C`` (p x n) plus a feasible-set backend."""

    objectives: np.ndarray
    backend: Union[Discrete, LP]

    def __post_init__(self):
        C = np.atleast_2d(np.asarray(self.objectives, dtype=float))
        if C.shape[0] < 2:
            raise DimensionError(f"need p >= 2 objectives, got {C.shape[0]}")
        width = (
            self.backend.points.shape[1]
            if isinstance(self.backend, Discrete)
            else self.backend.A.shape[1]
        )
        if C.shape[1] != width:
            raise DimensionError(f"objectives have n={C.shape[1]}, feasible set has n={width}")
        C.setflags(write=False)
        object.__setattr__(self, "objectives", C)

    @property
    def p(self) -> int:
        return self.objectives.shape[0]

    @property
    def n(self) -> int:
        return self.objectives.shape[1]

    def image(self, x) -> tuple:
        return tuple(float(v) for v in self.objectives @ np.asarray(x, dtype=float))


class Status(str, enum.Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class ScalarSolution:
    """Result of one scalarised solve.

    ``weakly_only`` marks solves whose weight has a zero component: such an
    optimum is guaranteed weakly efficient, not efficient.
    """

    x: Optional[np.ndarray]
    y: Optional[tuple]
    weight: WeightVector
    status: Status
    value: Optional[float] = None
    reduced_costs: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def weakly_only(self) -> bool:
        return not self.weight.is_positive


def _as_weight(weight) -> WeightVector:
    return weight if isinstance(weight, WeightVector) else WeightVector(tuple(weight))


def wsm_objective(weight, instance: ProblemInstance) -> np.ndarray:
    """Aggregated cost vector sum_i w_i c_i."""
    weight = _as_weight(weight)
    if weight.p != instance.p:
        raise DimensionError(f"weight has p={weight.p}, instance has p={instance.p}")
    return weight.as_array() @ instance.objectives


def solve_discrete(instance: ProblemInstance, weight) -> ScalarSolution:
    if not isinstance(instance.backend, Discrete):
        raise TypeError("solve_discrete needs a Discrete backend")
    weight = _as_weight(weight)
    cost = wsm_objective(weight, instance)
    pts = instance.backend.points
    values = pts @ cost
    best = int(np.argmin(values))  # first minimiser: ties go to the lowest index
    x = pts[best].copy()
    return ScalarSolution(x, instance.image(x), weight, Status.OPTIMAL, float(values[best]))


def solve_lp(instance: ProblemInstance, weight, max_iter: Optional[int] = None) -> ScalarSolution:
    if not isinstance(instance.backend, LP):
        raise TypeError("solve_lp needs an LP backend")
    weight = _as_weight(weight)
    cost = wsm_objective(weight, instance)
    lp = instance.backend
    res = simplex.solve_lp(cost, lp.A, lp.b, lp.sense, lp.bounds, max_iter=max_iter)
    if res.status is not simplex.LPStatus.OPTIMAL:
        return ScalarSolution(None, None, weight, Status(res.status.value))
    return ScalarSolution(
        res.x, instance.image(res.x), weight, Status.OPTIMAL, res.objective, res.reduced_costs
    )


def solve(instance: ProblemInstance, weight) -> ScalarSolution:
    if isinstance(instance.backend, Discrete):
        return solve_discrete(instance, weight)
    return solve_lp(instance, weight)


def _weights_of(batch) -> list:
    if hasattr(batch, "weights") and isinstance(batch.weights, np.ndarray):
        return [WeightVector(tuple(row)) for row in batch.weights]
    return [_as_weight(w) for w in batch]


def solve_batch(instance: ProblemInstance, batch, parallelism: int = 1) -> list:
    """Solve every weight of ``batch`` (a WeightBatch or a sequence of weights).

    Results come back in batch order whatever the parallelism.  A failing solve
    is re-raised as :class:`SolveFailedError` carrying its batch index.
    """
    weights = _weights_of(batch)
    for w in weights:
        if w.p != instance.p:
            raise DimensionError(f"weight has p={w.p}, instance has p={instance.p}")

    def run(item):
        i, w = item
        try:
            return solve(instance, w)
        except WSWeightsError as exc:
            raise SolveFailedError(f"solve {i} failed: {exc}", weight=w, index=i) from exc

    if parallelism <= 1:
        return [run(item) for item in enumerate(weights)]
    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(run, enumerate(weights)))
