"""Exact workbench for finite systems of difference equations over the reals."""

from .errors import (
    ContextError,
    DiffsysError,
    LatticeError,
    RepresentabilityError,
    ResourceError,
    ShapeError,
    UndecidedError,
)
from .exact import BasisContext, CyclotomicNumber, FormalReal, Lattice
from .operators import DifferenceOperator, LaurentPoly
from .functions import (
    Constant,
    CosetIndicator,
    LatticeFunction,
    LinComb,
    Polynomial,
    Rule,
    SymbolicFunction,
    TrigPoly,
    WindowTable,
    apply_operator,
    evaluate,
    find_witness,
    functions_equal,
    zero_test,
)
from .solver import (
    Certificate,
    EquationSystem,
    Inconclusive,
    Solution,
    Unsolvable,
    VanishingSet,
    Window,
    deduce,
    min_sup_norm_on_window,
    normalize_two_term,
    solve_delta_system,
    solve_finite,
    solve_polynomial,
    solve_vanishing_on,
    syzygy_certificates,
    two_term_base_compare,
    verify_certificate,
)

__version__ = "0.1.0"
