"""High-precision multiple modular values of level one."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DomainError,
    InconsistencyError,
    InsufficientPrecisionError,
    MMVError,
    PoleError,
    TruncationError,
    UnsupportedError,
)
from .numerics import PrecisionContext  # noqa: E402

__all__ = [
    "__version__",
    "PrecisionContext",
    "MMVError",
    "DomainError",
    "PoleError",
    "UnsupportedError",
    "TruncationError",
    "InsufficientPrecisionError",
    "InconsistencyError",
]
