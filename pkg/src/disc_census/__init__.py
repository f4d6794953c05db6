"""Exact polynomial and field discriminants, bounded-height censuses, and a CLI."""

from .errors import BudgetExceeded, ConditionFailed, DiscCensusError, InternalInconsistency, InvalidInput
from .poly_core import MonicIntPoly, discriminant

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "ConditionFailed",
    "DiscCensusError",
    "InternalInconsistency",
    "InvalidInput",
    "MonicIntPoly",
    "discriminant",
]
