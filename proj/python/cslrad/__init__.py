"""CSL spontaneous photon emission from a bound or free charge."""

from ._core import *  # noqa: F401,F403
from ._core import (
    ConfigError,
    ConvergenceError,
    DomainError,
    KernelRealityError,
    ValidationError,
)

__all__ = [name for name in dir() if not name.startswith("_")]
