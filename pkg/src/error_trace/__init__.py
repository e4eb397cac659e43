"""Error handling and custom exceptions"""
from src.error_trace.exceptions import (
    BellBoxException,
    ValidationError,
    AllZeroStateError,
    DomainError,
    NonConvergenceError,
    NotEntangledError,
    EmptySweepError,
    BoxFormatError
)

__all__ = [
    "BellBoxException",
    "ValidationError",
    "AllZeroStateError",
    "DomainError",
    "NonConvergenceError",
    "NotEntangledError",
    "EmptySweepError",
    "BoxFormatError"
]
