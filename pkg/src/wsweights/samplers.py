"""Weight-vector generation strategies for weighted sum scalarisation.

Every sampler takes ``seed`` as either an integer (a fresh PCG64 generator is
built from it) or an already constructed generator.  Anything exposing the
subset of the :class:`numpy.random.Generator` API a sampler uses will do; the
grid samplers only call ``uniform``, ``permutation`` and ``choice``, which
makes it easy to feed hand-picked draws through them.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (
    SamplerConfig,
    WeightVector,
    grid_edges,
    normalise_rows,
)
from .errors import (
    BudgetExceededError,
    ConfigError,
    DimensionError,
    EmptySelectionError,
)

DEFAULT_BUDGET = 10**6
_MAX_COUNT = 2**63 - 1


class Strategy(str, enum.Enum):
    UNIFORM_INCREMENT = "uniform"
    RANDOM = "random"
    DIRICHLET = "dirichlet"
    LHS = "lhs"
    SLHS = "slhs"
    ADAPTIVE = "adaptive"


@dataclass(frozen=True)
class WeightBatch:
    """A block of weight vectors stored as an ``(n, p)`` array.

    ``cells`` records, for the grid-based samplers, the 0-based grid cell each
    raw component was drawn from; ``raw`` holds the pre-normalisation samples.
    """

    weights: np.ndarray
    strategy: Strategy
    config: SamplerConfig
    cells: Optional[np.ndarray] = None
    raw: Optional[np.ndarray] = None

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 2 or w.shape[1] < 2:
            raise DimensionError(f"weights must be (n, p>=2), got shape {w.shape}")
        if w.size and (np.any(w < 0) or np.any(np.abs(w.sum(axis=1) - 1.0) > 1e-12)):
            raise ConfigError("batch contains a vector off the unit simplex")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return self.weights.shape[0]

    @property
    def p(self) -> int:
        return self.weights.shape[1]

    @property
    def vectors(self) -> list:
        return [WeightVector(tuple(row)) for row in self.weights]

    @property
    def raw_sums(self) -> Optional[np.ndarray]:
        return None if self.raw is None else self.raw.sum(axis=1)


def make_rng(seed):
    if seed is None or isinstance(seed, (int, np.integer)):
        return np.random.default_rng(seed)
    if isinstance(seed, (list, tuple)) and all(isinstance(v, (int, np.integer)) for v in seed):
        return np.random.default_rng(list(seed))
    if hasattr(seed, "uniform"):
        return seed
    raise ConfigError(f"cannot build a random generator from {seed!r}")


def _seed_value(seed):
    return int(seed) if isinstance(seed, (int, np.integer)) else None


def _draw_open(rng, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Uniform draws on the open cells (lo, hi); redraws anything landing on lo."""
    lo = np.ascontiguousarray(lo, dtype=float)
    hi = np.ascontiguousarray(hi, dtype=float)
    out = np.asarray(rng.uniform(lo, hi), dtype=float).reshape(lo.shape)
    bad = (out <= lo) | (out >= hi)
    while np.any(bad):
        out[bad] = np.asarray(rng.uniform(lo[bad], hi[bad]), dtype=float)
        bad = (out <= lo) | (out >= hi)
    return out


# -- uniform increment -------------------------------------------------------


def count_uniform(p: int, d: int) -> int:
    """Number of lattice weights with spacing 1/d on the (p-1)-simplex.

    Stars and bars: C(d+p-1, p-1).  Raises OverflowError past 2**63-1; use
    :func:`log10_count_uniform` for larger cases.
    """
    if p < 2 or d < 1:
        raise DimensionError(f"need p >= 2 and d >= 1, got p={p}, d={d}")
    count = math.comb(d + p - 1, p - 1)
    if count > _MAX_COUNT:
        raise OverflowError(f"C({d + p - 1}, {p - 1}) exceeds 2**63-1")
    return count


def log10_count_uniform(p: int, d: int) -> float:
    if p < 2 or d < 1:
        raise DimensionError(f"need p >= 2 and d >= 1, got p={p}, d={d}")
    return (math.lgamma(d + p) - math.lgamma(p) - math.lgamma(d + 1)) / math.log(10)


def uniform_compositions(p: int, d: int):
    """Yield nonnegative integer p-tuples summing to d, lexicographic in the first p-1."""

    def rec(prefix, remaining, slots):
        if slots == 1:
            yield prefix + (remaining,)
            return
        for k in range(remaining + 1):
            yield from rec(prefix + (k,), remaining - k, slots - 1)

    yield from rec((), d, p)


def enumerate_uniform(p: int, d: int, budget: int = DEFAULT_BUDGET) -> WeightBatch:
    count = count_uniform(p, d)
    if count > budget:
        raise BudgetExceededError(f"{count} lattice weights exceed budget {budget}")
    ints = np.array(list(uniform_compositions(p, d)), dtype=np.int64).reshape(count, p)
    weights = ints / d
    cfg = SamplerConfig(p=p, d=d, seed=None, budget=budget)
    return WeightBatch(weights, Strategy.UNIFORM_INCREMENT, cfg)


# -- random / Dirichlet ------------------------------------------------------


def _log_standard_gamma(alpha: np.ndarray, n: int, rng) -> np.ndarray:
    """log of Gamma(alpha_k, 1) draws, shape (n, K), by Marsaglia-Tsang.

    Shapes below one are boosted: G(a) = G(a + 1) * U**(1/a), kept in log space
    so tiny shapes do not underflow to zero.
    """
    alpha = np.asarray(alpha, dtype=float)
    shape = (n, alpha.size)
    a = np.broadcast_to(np.where(alpha < 1.0, alpha + 1.0, alpha), shape)
    dd = a - 1.0 / 3.0
    c = 1.0 / np.sqrt(9.0 * dd)
    out = np.empty(shape)
    pending = np.ones(shape, dtype=bool)
    while pending.any():
        idx = np.nonzero(pending)
        dk, ck = dd[idx], c[idx]
        x = rng.standard_normal(dk.size)
        u = rng.uniform(size=dk.size)
        v = (1.0 + ck * x) ** 3
        ok = v > 0
        logv = np.log(np.where(ok, v, 1.0))
        accept = ok & (np.log(u) < 0.5 * x * x + dk - dk * v + dk * logv)
        rows, cols = idx[0][accept], idx[1][accept]
        out[rows, cols] = np.log(dk[accept]) + logv[accept]
        pending[rows, cols] = False
    small = alpha < 1.0
    if small.any():
        u = rng.uniform(size=(n, int(small.sum())))
        out[:, small] += np.log(u) / alpha[small]
    return out


def standard_gamma(alpha, size: int, seed=None) -> np.ndarray:
    """Gamma(alpha, 1) variates; scalar or per-column shape parameters."""
    alpha = np.atleast_1d(np.asarray(alpha, dtype=float))
    if np.any(~(alpha > 0)):
        raise ConfigError(f"gamma shape must be positive, got {alpha}")
    out = np.exp(_log_standard_gamma(alpha, size, make_rng(seed)))
    return out[:, 0] if alpha.size == 1 else out


def _dirichlet_rows(alpha: np.ndarray, n: int, rng) -> np.ndarray:
    logg = _log_standard_gamma(alpha, n, rng)
    logg -= logg.max(axis=1, keepdims=True)
    g = np.exp(logg)
    return g / g.sum(axis=1, keepdims=True)


def sample_dirichlet(alpha, n: int, seed=0) -> WeightBatch:
    alpha = tuple(float(a) for a in alpha)
    if len(alpha) < 2:
        raise DimensionError(f"Dirichlet needs K >= 2 parameters, got {len(alpha)}")
    if any(not a > 0 or not math.isfinite(a) for a in alpha):
        raise ConfigError(f"Dirichlet parameters must be positive, got {alpha}")
    if n < 1:
        raise ConfigError(f"n must be >= 1, got {n}")
    rows = _dirichlet_rows(np.array(alpha), n, make_rng(seed))
    cfg = SamplerConfig(p=len(alpha), alpha=alpha, seed=_seed_value(seed))
    return WeightBatch(rows, Strategy.DIRICHLET, cfg)


def sample_random(p: int, n: int, config: Optional[SamplerConfig] = None, seed=None) -> WeightBatch:
    """Random weights: first component uniform or Beta for p = 2, Dirichlet otherwise.

    ``seed`` overrides ``config.seed`` when given.
    """
    config = config or SamplerConfig(p=p)
    if config.p != p:
        raise ConfigError(f"config is for p={config.p}, requested p={p}")
    if n < 1:
        raise ConfigError(f"n must be >= 1, got {n}")
    seed = config.seed if seed is None else seed
    if p >= 3:
        alpha = config.alpha or (1.0,) * p
        batch = sample_dirichlet(alpha, n, seed)
        return WeightBatch(batch.weights, Strategy.RANDOM, config)
    rng = make_rng(seed)
    if config.beta is None:
        lam = rng.uniform(size=n)
    else:
        lam = _dirichlet_rows(np.array(config.beta), n, rng)[:, 0]
    return WeightBatch(np.column_stack([lam, 1.0 - lam]), Strategy.RANDOM, config)


# -- Latin hypercube, p = 2 ---------------------------------------------------


def _round_cells(d: int) -> np.ndarray:
    """Cell index for each draw of one round: every cell once, the middle twice when d is odd."""
    cells = np.arange(d)
    if d % 2:
        cells = np.insert(cells, d // 2, d // 2)
    return cells


def sample_lhs_p2(d: int, s: int = 1, seed=0) -> WeightBatch:
    if d < 2:
        raise DimensionError(f"LHS needs d >= 2, got {d}")
    if s < 1:
        raise ConfigError(f"s must be >= 1, got {s}")
    rng = make_rng(seed)
    edges = grid_edges(d)
    cells = _round_cells(d)
    raw, src = [], []
    for _ in range(s):
        vals = _draw_open(rng, edges[cells], edges[cells + 1])
        order = np.asarray(rng.permutation(cells.size))
        raw.append(vals[order].reshape(-1, 2))
        src.append(cells[order].reshape(-1, 2))
    raw = np.vstack(raw)
    cfg = SamplerConfig(p=2, d=d, s=s, seed=_seed_value(seed))
    return WeightBatch(normalise_rows(raw), Strategy.LHS, cfg, np.vstack(src), raw)


def sample_slhs_p2(d: int, seed=0, replicates: int = 1) -> WeightBatch:
    """Structured LHS for two objectives.

    One draw per grid cell (two from the middle cell when d is odd), drawn in
    ascending cell order; cell k is combined with cell d-1-k and the pair is
    normalised.  The normalised components stay inside their source cells.

    ``replicates`` stacks that many independent rounds, in draw order, so
    large Monte Carlo checks run in one vectorised pass.
    """
    if d < 2:
        raise DimensionError(f"SLHS needs d >= 2, got {d}")
    if replicates < 1:
        raise ConfigError(f"replicates must be >= 1, got {replicates}")
    rng = make_rng(seed)
    edges = grid_edges(d)
    cells = _round_cells(d)
    lo = np.broadcast_to(edges[cells], (replicates, cells.size))
    hi = np.broadcast_to(edges[cells + 1], (replicates, cells.size))
    vals = _draw_open(rng, lo, hi)
    # same pairing as pair_intervals(d), built directly on indices
    low = np.arange(d // 2)
    src = np.column_stack([low, d - 1 - low])
    first = np.searchsorted(cells, np.arange(d))
    cols = first[src]
    if d % 2:
        k = (d + 1) // 2 - 1
        src = np.vstack([src, [k, k]])
        cols = np.vstack([cols, [first[k], first[k] + 1]])
    raw = vals[:, cols].reshape(-1, 2)
    src = np.tile(src, (replicates, 1))
    cfg = SamplerConfig(p=2, d=d, seed=_seed_value(seed))
    return WeightBatch(normalise_rows(raw), Strategy.SLHS, cfg, src, raw)


# -- p >= 3 ------------------------------------------------------------------


def sample_lhs_general(p: int, d: int, s: int = 1, seed=0) -> WeightBatch:
    """LHS on p weights: each column holds one draw per cell, columns shuffled independently."""
    if p < 3:
        raise DimensionError(f"general LHS is for p >= 3, got p={p}")
    if d < 2:
        raise DimensionError(f"LHS needs d >= 2, got {d}")
    if s < 1:
        raise ConfigError(f"s must be >= 1, got {s}")
    rng = make_rng(seed)
    edges = grid_edges(d)
    lo = np.repeat(edges[:-1, None], p, axis=1)
    hi = np.repeat(edges[1:, None], p, axis=1)
    raw, src = [], []
    for _ in range(s):
        vals = _draw_open(rng, lo, hi)
        idx = np.column_stack([np.asarray(rng.permutation(d)) for _ in range(p)])
        raw.append(np.take_along_axis(vals, idx, axis=0))
        src.append(idx)
    raw = np.vstack(raw)
    cfg = SamplerConfig(p=p, d=d, s=s, seed=_seed_value(seed))
    return WeightBatch(normalise_rows(raw), Strategy.LHS, cfg, np.vstack(src), raw)


def midpoint_multisets(p: int, d: int, delta: float):
    """Nondecreasing cell-index p-tuples whose midpoints sum to within delta of 1.

    Midpoint of cell k is (2k+1)/(2d), so the sum is (2K+p)/(2d) with K the
    index sum; the test is done on that exact form.
    """
    if p < 1 or d < 1:
        raise DimensionError(f"need p >= 1 and d >= 1, got p={p}, d={d}")
    # slack absorbs rounding in delta*2d for boundary-exact deltas
    lo_total = math.ceil((2 * d * (1.0 - delta) - p) / 2 - 1e-9)
    hi_total = math.floor((2 * d * (1.0 + delta) - p) / 2 + 1e-9)
    lo_total = max(lo_total, 0)
    hi_total = min(hi_total, p * (d - 1))
    if lo_total > hi_total:
        return

    def rec(prefix, start, slots, total):
        if slots == 0:
            if lo_total <= total <= hi_total:
                yield prefix
            return
        for k in range(start, d):
            # remaining slots take values >= k
            if total + k * slots > hi_total:
                break
            if total + k + (d - 1) * (slots - 1) < lo_total:
                continue
            yield from rec(prefix + (k,), k, slots - 1, total + k)

    yield from rec((), 0, p, 0)


def sample_slhs_general(p: int, d: int, delta: float, budget: int = DEFAULT_BUDGET, seed=0) -> WeightBatch:
    """Structured LHS for p >= 3 objectives.

    Picks multisets of p grid cells with midpoint sum in [1-delta, 1+delta]
    (a uniform subset of size ``budget`` when there are more), draws one value
    per chosen cell, shuffles each tuple's objective order and normalises.
    """
    if p < 3:
        raise DimensionError(f"general SLHS is for p >= 3, got p={p}")
    if d < 2:
        raise DimensionError(f"SLHS needs d >= 2, got {d}")
    if not delta >= 0:
        raise ConfigError(f"delta must be >= 0, got {delta}")
    if budget < 1:
        raise ConfigError(f"budget must be >= 1, got {budget}")
    rng = make_rng(seed)
    tuples = list(midpoint_multisets(p, d, delta))
    if not tuples:
        raise EmptySelectionError(
            f"no {p}-cell multiset at d={d} has midpoint sum within {delta} of 1"
        )
    cells = np.array(tuples, dtype=np.int64)
    if len(cells) > budget:
        keep = np.sort(np.asarray(rng.choice(len(cells), size=budget, replace=False)))
        cells = cells[keep]
    # argsort of iid uniforms gives an independent uniform permutation per row
    order = np.argsort(np.asarray(rng.uniform(size=cells.shape)), axis=1)
    cells = np.take_along_axis(cells, order, axis=1)
    edges = grid_edges(d)
    raw = _draw_open(rng, edges[cells], edges[cells + 1])
    cfg = SamplerConfig(p=p, d=d, delta=delta, seed=_seed_value(seed), budget=budget)
    return WeightBatch(normalise_rows(raw), Strategy.SLHS, cfg, cells, raw)


def slhs_sum_bound(p: int, d: int, delta: float) -> float:
    """Half-width of the interval around 1 that raw SLHS sums fall in."""
    return delta + p / (2 * d)


def multiset_count(p: int, d: int) -> int:
    """Number of p-multisets from d cells, C(d+p-1, p)."""
    return math.comb(d + p - 1, p)

