"""Symbolic real functions, operator application and exact zero testing."""

from .classes import (
    Constant,
    CosetIndicator,
    LatticeFunction,
    LinComb,
    Polynomial,
    SymbolicFunction,
    TrigPoly,
    WindowTable,
    combine,
)
from .ops import apply_operator, evaluate, sample_trig
from .rules import Rule
from .zerotest import find_witness, functions_equal, zero_test

__all__ = [
    "Constant",
    "CosetIndicator",
    "LatticeFunction",
    "LinComb",
    "Polynomial",
    "Rule",
    "SymbolicFunction",
    "TrigPoly",
    "WindowTable",
    "apply_operator",
    "combine",
    "evaluate",
    "find_witness",
    "functions_equal",
    "sample_trig",
    "zero_test",
]
