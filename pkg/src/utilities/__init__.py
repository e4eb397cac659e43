"""Utility functions and helpers"""
from src.utilities.logger import get_logger, setup_logging

__all__ = [
    "get_logger",
    "setup_logging"
]
