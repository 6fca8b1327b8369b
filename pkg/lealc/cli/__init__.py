"""
CLI commands package initialization
"""

from .batch import register as register_batch
from .check import register as register_check

__all__ = ["register_batch", "register_check"]
