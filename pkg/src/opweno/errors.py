"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Invalid grid extents, unknown scheme/problem, or out-of-range parameter."""


class DataError(ValueError):
    """Non-finite values encountered in user-supplied data."""


class StateError(RuntimeError):
    """Solver state became nonphysical (NaN/Inf, or rho/p <= 0).

    Carries the time step index at which the problem was detected.
    """

    def __init__(self, message, step=None):
        if step is not None:
            message = f"{message} (step {step})"
        super().__init__(message)
        self.step = step
