"""Utility modules for amortized-bounds."""

from .errors import (
    AmortizedBoundsError,
    ContractError,
    MalformedTrace,
    MalformedScript,
    ConfigurationError,
)
from .cache import LRUCache

__all__ = [
    "AmortizedBoundsError",
    "ContractError",
    "MalformedTrace",
    "MalformedScript",
    "ConfigurationError",
    "LRUCache",
]
