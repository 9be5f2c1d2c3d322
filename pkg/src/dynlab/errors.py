"""Exception types shared across the package."""


class DegenerateModelError(ValueError):
    """Raised when a parameter combination makes the admission model undefined."""


class ShapeViolationError(ValueError):
    """Raised when an update map has more fixed points than an S-shaped map can."""


class NumericError(RuntimeError):
    """Raised when an iterative numerical routine fails to converge or bracket."""
