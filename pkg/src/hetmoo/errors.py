"""Exception types shared across the package."""


class InsufficientDataError(ValueError):
    """Raised when a model is asked to train on fewer points than it needs."""


class NumericalDegeneracyError(RuntimeError):
    """Raised when a linear-algebra step fails even after regularization."""


class InternalConsistencyError(RuntimeError):
    """Raised when a run violates one of its own bookkeeping invariants."""


class PlanError(ValueError):
    """Raised for malformed experiment plan files.

    Carries the offending line number when one is known.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
