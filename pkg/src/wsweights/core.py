"""Shared domain types: weight vectors, grid cells, complementary pairings."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import ConfigError, DegenerateSampleError, DimensionError

SUM_TOL = 1e-12

#: Objective-space point, c(x) for some feasible x.
ObjectivePoint = tuple


@dataclass(frozen=True)
class WeightVector:
    """A point on the unit simplex, used as the weights of a weighted sum."""

    weights: tuple

    def __post_init__(self):
        w = tuple(float(v) for v in self.weights)
        object.__setattr__(self, "weights", w)
        if len(w) < 2:
            raise DimensionError(f"weight vector needs p >= 2 components, got {len(w)}")
        if any(not math.isfinite(v) or v < 0.0 for v in w):
            raise DegenerateSampleError(f"weights must be finite and nonnegative: {w}")
        if abs(math.fsum(w) - 1.0) > SUM_TOL:
            raise DegenerateSampleError(f"weights sum to {math.fsum(w)!r}, not 1")

    @property
    def p(self) -> int:
        return len(self.weights)

    def __len__(self):
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=float)

    @property
    def is_positive(self) -> bool:
        return all(v > 0.0 for v in self.weights)


@dataclass(frozen=True)
class Subinterval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (0.0 <= self.lo < self.hi <= 1.0):
            raise DimensionError(f"invalid subinterval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def __contains__(self, value) -> bool:
        return self.lo <= value <= self.hi


@dataclass(frozen=True)
class IntervalPairing:
    """Grid cells matched so that each pair's endpoints are complementary.

    ``index_pairs`` holds the 0-based grid indices behind ``pairs``; ``center_index``
    is the unmatched middle cell for odd depth.
    """

    pairs: tuple
    odd_center: Optional[Subinterval] = None
    index_pairs: tuple = ()
    center_index: Optional[int] = None


@dataclass(frozen=True)
class SamplerConfig:
    """Every tunable the sampling and refinement strategies use.

    ``seed`` is ``None`` when a caller supplied its own random generator.
    ``beta`` selects a Beta(a, b) law for the p = 2 random approach instead of
    the uniform one.
    """

    p: int = 2
    d: int = 10
    s: int = 1
    delta: float = 0.05
    tau: float = 0.0
    rho: float = 0.0
    alpha: Optional[tuple] = None
    seed: Optional[int] = 0
    beta: Optional[tuple] = None
    budget: int = 10**6
    max_depth: int = 12

    def __post_init__(self):
        if self.alpha is not None:
            object.__setattr__(self, "alpha", tuple(float(a) for a in self.alpha))
        if self.beta is not None:
            object.__setattr__(self, "beta", tuple(float(b) for b in self.beta))
        if self.p < 2:
            raise ConfigError(f"p must be >= 2, got {self.p}")
        if self.d < 1:
            raise ConfigError(f"d must be >= 1, got {self.d}")
        if self.s < 1:
            raise ConfigError(f"s must be >= 1, got {self.s}")
        if not self.delta >= 0:
            raise ConfigError(f"delta must be >= 0, got {self.delta}")
        if not self.tau >= 0:
            raise ConfigError(f"tau must be >= 0, got {self.tau}")
        if not 0.0 <= self.rho <= 1.0:
            raise ConfigError(f"rho must lie in [0, 1], got {self.rho}")
        if self.alpha is not None:
            if len(self.alpha) != self.p:
                raise ConfigError(f"alpha has {len(self.alpha)} entries, expected p={self.p}")
            if any(not a > 0 or not math.isfinite(a) for a in self.alpha):
                raise ConfigError(f"alpha entries must be positive: {self.alpha}")
        if self.beta is not None:
            if len(self.beta) != 2 or any(not b > 0 or not math.isfinite(b) for b in self.beta):
                raise ConfigError(f"beta needs two positive parameters, got {self.beta}")
        if self.seed is not None and (int(self.seed) != self.seed or self.seed < 0):
            raise ConfigError(f"seed must be an unsigned integer, got {self.seed}")
        if self.budget < 1:
            raise ConfigError(f"budget must be >= 1, got {self.budget}")
        if self.max_depth < 1:
            raise ConfigError(f"max_depth must be >= 1, got {self.max_depth}")


def normalise(values: Sequence[float]) -> WeightVector:
    """Scale strictly positive values so they sum to one.

    >>> normalise([1.0, 3.0]).weights
    (0.25, 0.75)
    """
    vals = [float(v) for v in values]
    if len(vals) < 2:
        raise DimensionError(f"need at least 2 values to normalise, got {len(vals)}")
    if any(not v > 0.0 or not math.isfinite(v) for v in vals):
        raise DegenerateSampleError(f"normalise needs strictly positive values: {vals}")
    total = math.fsum(vals)
    return WeightVector(tuple(v / total for v in vals))


def normalise_rows(values: np.ndarray) -> np.ndarray:
    """Row-wise version of :func:`normalise` for 2-D arrays of positive samples."""
    values = np.asarray(values, dtype=float)
    if values.ndim != 2 or values.shape[1] < 2:
        raise DimensionError(f"expected an (n, p>=2) array, got shape {values.shape}")
    if not np.all(values > 0.0):
        raise DegenerateSampleError("normalise needs strictly positive values")
    return values / values.sum(axis=1, keepdims=True)


def grid_edges(d: int) -> np.ndarray:
    """Boundaries k/d for k = 0..d, each computed by a single division."""
    if d < 1:
        raise DimensionError(f"depth d must be >= 1, got {d}")
    return np.arange(d + 1) / d


def grid(d: int) -> list:
    edges = grid_edges(d)
    return [Subinterval(float(edges[k]), float(edges[k + 1])) for k in range(d)]


def pair_intervals(d: int) -> IntervalPairing:
    """Pair cell k with cell d-1-k; odd depth leaves the middle cell unpaired."""
    if d < 2:
        raise DimensionError(f"pairing needs d >= 2, got {d}")
    cells = grid(d)
    index_pairs = tuple((k, d - 1 - k) for k in range(d // 2))
    pairs = tuple((cells[a], cells[b]) for a, b in index_pairs)
    if d % 2:
        center = math.ceil(d / 2) - 1
        return IntervalPairing(pairs, cells[center], index_pairs, center)
    return IntervalPairing(pairs, None, index_pairs, None)


def midpoint(cell: Subinterval) -> float:
    return (cell.lo + cell.hi) / 2
