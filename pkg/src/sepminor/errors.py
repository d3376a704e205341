"""Exception types shared across the package."""


class GraphError(ValueError):
    """Invalid graph construction input (range, self-loop, duplicate edge)."""


class BudgetExceeded(ValueError):
    """An exhaustive operation was asked to run past its configured size budget."""


class GenerationError(RuntimeError):
    """A randomized generator exhausted its retry budget."""


class InfeasibleConstruction(ValueError):
    """Witness construction parameters do not satisfy the feasibility condition."""


class AlgorithmFailure(AssertionError):
    """A self-verifying algorithm produced output that failed its own check.

    This always indicates a bug, never a valid outcome.
    """


class FitError(ValueError):
    """Not enough usable data points, or degenerate data, for an exponent fit."""
