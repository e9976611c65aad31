"""Utility functions and helpers."""

from .config import Config
from .logger import setup_logger
from .data_store import ResultStore

__all__ = ["Config", "setup_logger", "ResultStore"]
