from .formal import BasisContext, FormalReal, as_fraction, formal_real_arith, render_rational
from .lattice import Lattice, lattice_from_generators, lattice_member
from .cyclotomic import CyclotomicNumber, cyclotomic_arith, cyclotomic_polynomial, primitive_phase

__all__ = [
    "BasisContext",
    "CyclotomicNumber",
    "FormalReal",
    "Lattice",
    "as_fraction",
    "cyclotomic_arith",
    "cyclotomic_polynomial",
    "formal_real_arith",
    "lattice_from_generators",
    "lattice_member",
    "primitive_phase",
    "render_rational",
]
