"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class KinkError(ValueError):
    """A classical derivative was requested exactly at a kink radius."""


class ProfileError(ValueError):
    """A radial profile violates a construction invariant."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature could not reach the requested tolerance."""


class SolverError(RuntimeError):
    """The Gram system stayed unsolvable through every jitter escalation."""

    def __init__(self, message, jitter_history=(), condition_estimate=None):
        super().__init__(message)
        self.jitter_history = tuple(jitter_history)
        self.condition_estimate = condition_estimate
