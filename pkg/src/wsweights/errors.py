"""Exception hierarchy shared across the package."""


class WSWeightsError(Exception):
    """Base class for all errors raised by wsweights."""


class DimensionError(WSWeightsError, ValueError):
    """Mismatched or out-of-range dimensions (p, d, n, vector lengths)."""


class DegenerateSampleError(WSWeightsError, ValueError):
    """Sample values that cannot be normalised or summarised."""


class ConfigError(WSWeightsError, ValueError):
    """A tunable lies outside its admissible range."""


class BudgetExceededError(WSWeightsError):
    """A request would generate more weights or solves than the budget allows."""


class EmptySelectionError(WSWeightsError):
    """No grid-cell tuple satisfies the midpoint-sum tolerance."""


class SolverStalledError(WSWeightsError):
    """The simplex method hit its pivot cap."""


class SolveFailedError(WSWeightsError):
    """A scalarised solve did not return an optimal point where one is required."""

    def __init__(self, message, weight=None, index=None):
        super().__init__(message)
        self.weight = weight
        self.index = index


class EmptyArchiveError(WSWeightsError):
    """Ratio requested from an archive with no solves."""


class DomainError(WSWeightsError, ValueError):
    """Argument outside the domain of a mathematical function."""
