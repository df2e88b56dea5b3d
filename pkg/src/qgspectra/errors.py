"""Exception types shared across the package."""


class UnsupportedInputError(ValueError):
    """An input is outside the documented domain of an operation."""


class VerificationError(RuntimeError):
    """A result failed one of its mandatory self-checks."""


class InternalError(RuntimeError):
    """An internal consistency invariant broke; this is a bug, not bad input."""
