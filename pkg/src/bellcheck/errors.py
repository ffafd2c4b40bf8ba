"""Exception types shared across the package."""


class ModelError(RuntimeError):
    """A hidden-variable model misbehaved while generating trials.

    Raised when ``sample_lambda`` fails on its own domain or when a
    response function returns something other than -1 or +1.
    """


class ResourceLimitError(RuntimeError):
    """An enumeration guard was exceeded (e.g. too many GHZ variables)."""


class BoundViolationError(RuntimeError):
    """Internal consistency check failed: a single-distribution CHSH
    value left [-2, 2]. This indicates a bug, not a physical violation."""
