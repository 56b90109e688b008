"""Exception types, grouped by the exit-code family the CLI maps them to."""


class ConfigError(ValueError):
    """Bad or inconsistent configuration (CLI exit code 2)."""


class SnapshotError(RuntimeError):
    """Corrupt, truncated or unsupported snapshot file (CLI exit code 3)."""


class NumericsError(RuntimeError):
    """Numerical failure: NaN, non-convergence, untrustworthy integral (CLI exit code 4)."""


class ConvergenceError(NumericsError):
    """Iterative solver did not converge; carries the iteration count."""

    def __init__(self, message, iterations=None):
        super().__init__(message)
        self.iterations = iterations


class SingularLiftError(NumericsError):
    """Too many cells sit on the singular set of the rotation lift."""
