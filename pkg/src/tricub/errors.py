"""Exception types shared across the package."""


class GraphFormatError(ValueError):
    """Raised when graph text cannot be decoded."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotCubicError(ValueError):
    pass


class SearchInconclusive(RuntimeError):
    """A bounded search stopped before it could give a definitive answer.

    ``best`` carries whatever partial result the search had (an upper bound,
    a certificate found so far), or None.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
