"""Exception hierarchy shared by all mmvkit modules."""


class MMVError(Exception):
    """Base class for every error raised by mmvkit."""


class DomainError(MMVError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class PoleError(DomainError):
    """The requested value sits on a pole."""


class UnsupportedError(DomainError):
    """The input is valid mathematics but outside what this package implements."""


class TruncationError(MMVError):
    """A truncated q-expansion is too short for the requested precision."""


class InsufficientPrecisionError(MMVError):
    """The working precision is too low for the requested search or check."""


class InconsistencyError(MMVError):
    """Numerical data that should be consistent is not (e.g. non-constant ratios)."""
