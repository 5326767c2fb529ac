"""Weight-vector sampling and weighted sum scalarisation for multi-objective problems."""

__version__ = "0.1.0"

from .core import (
    IntervalPairing,
    SamplerConfig,
    Subinterval,
    WeightVector,
    grid,
    midpoint,
    normalise,
    pair_intervals,
)
from .diagnostics import QQData, growth_table, inverse_normal_cdf, qq_data, summary_stats
from .errors import (
    BudgetExceededError,
    ConfigError,
    DegenerateSampleError,
    DimensionError,
    DomainError,
    EmptyArchiveError,
    EmptySelectionError,
    SolveFailedError,
    SolverStalledError,
    WSWeightsError,
)
from .pareto import (
    Archive,
    adaptive_search,
    adaptive_search_general,
    adaptive_search_p2,
    archive_insert,
    dominates,
    filter_nondominated,
    redundancy_ratio,
    strictly_dominates,
)
from .samplers import (
    Strategy,
    WeightBatch,
    count_uniform,
    enumerate_uniform,
    sample_dirichlet,
    sample_lhs_general,
    sample_lhs_p2,
    sample_random,
    sample_slhs_general,
    sample_slhs_p2,
)
from .scalarise import (
    LP,
    Discrete,
    ProblemInstance,
    ScalarSolution,
    Status,
    solve,
    solve_batch,
    solve_discrete,
    solve_lp,
    wsm_objective,
)
