"""Solvability decisions, certificates and constructive solvers."""

from .delta import solve_delta_system
from .elimination import build_rows, echelon
from .finite import solve_finite, solve_vanishing_on, syzygy_certificates, window_solve
from .polynomial import default_degree_bound, solve_polynomial
from .supnorm import LowerBound, SupNormResult, min_sup_norm_on_window, verify_lower_bound
from .system import (
    Certificate,
    EquationSystem,
    Inconclusive,
    Solution,
    Unsolvable,
    VanishingSet,
    Window,
    check_on_window,
    deduce,
    rhs_vanishes_off,
    verify_certificate,
)
from .twoterm import TwoTermForm, normalize_two_term, two_term_base_compare

__all__ = [
    "Certificate",
    "EquationSystem",
    "Inconclusive",
    "LowerBound",
    "Solution",
    "SupNormResult",
    "TwoTermForm",
    "Unsolvable",
    "VanishingSet",
    "Window",
    "build_rows",
    "check_on_window",
    "deduce",
    "default_degree_bound",
    "echelon",
    "min_sup_norm_on_window",
    "normalize_two_term",
    "rhs_vanishes_off",
    "solve_delta_system",
    "solve_finite",
    "solve_polynomial",
    "solve_vanishing_on",
    "syzygy_certificates",
    "two_term_base_compare",
    "verify_certificate",
    "verify_lower_bound",
    "window_solve",
]
