class InvalidArgument(ValueError):
    """Input violates an operation's precondition."""


class ResourceLimitError(RuntimeError):
    """A configured size limit would be exceeded."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class Unsupported(ValueError):
    """Input is well formed but outside what the engine can decide."""
