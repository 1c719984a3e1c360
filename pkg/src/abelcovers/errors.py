"""Exception types shared across the package.

The CLI maps them onto exit codes: :class:`InputError` -> 1,
:class:`BoundExceeded` -> 2, :class:`InvariantViolation` -> 3.
"""


class InputError(ValueError):
    """Malformed or inconsistent input data."""


class DimensionError(InputError):
    """Objects of incompatible shapes were combined."""


class BoundExceeded(RuntimeError):
    """A configured size bound would be exceeded by an enumeration."""


class Unsupported(InputError):
    """The input lies outside what the library can decide."""


class InvariantViolation(RuntimeError):
    """Two independent computations that must agree did not."""
