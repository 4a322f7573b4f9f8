"""Exact arithmetic for highest-weight modules of Virasoro-type Lie algebras."""
from __future__ import annotations

from .errors import BudgetExceeded, ConsistencyError, DomainError, HwError, SpecMismatchError, ValidationError
from .liealg import (
    AlgebraElement,
    Heisenberg,
    HeisenbergVirasoro,
    HigherRankVirasoro,
    Symbol,
    Virasoro,
    algebra_by_name,
    bracket,
    sl2,
    sl3,
)
from .modules import HighestWeight, heisenberg_module_new, k0_new, verma_new
from .scalars import QuadInt, QuadRational, Scalar

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement", "BudgetExceeded", "ConsistencyError", "DomainError", "Heisenberg", "HeisenbergVirasoro",
    "HighestWeight", "HigherRankVirasoro", "HwError", "QuadInt", "QuadRational", "Scalar", "SpecMismatchError",
    "Symbol", "ValidationError", "Virasoro", "algebra_by_name", "bracket", "heisenberg_module_new", "k0_new",
    "sl2", "sl3", "verma_new",
]
