"""Executable versions of the explicit constructions, each with a checked report."""

from .bset import BSetContext, bset_predicate, bset_properties, bset_shift_difference
from .constructions import (
    BOUNDED_LP_VALUE,
    arbitrary_functions_report,
    bounded_norm_report,
    bounded_subsystem_solution,
    build_arbitrary_functions_system,
    build_bounded_norm_system,
    build_darboux_system,
    build_periodicity_family,
    build_unbounded_system,
    darboux_report,
    periodicity_report,
    prefix_deduction,
    sc_polynomial_system,
    sc_polynomial_witness,
    unbounded_report,
    unbounded_subsystem_solution,
)
from .report import Claim, GalleryReport
from .trig import build_trig_escape_system


def _trig_report(n: int = 4, samples: int = 200_000, seed: int = 0xD1FF):
    return build_trig_escape_system(n, samples, seed)[2]


# name -> (runner, {parameter: (type, default)})
GALLERY = {
    "arbitrary": (arbitrary_functions_report, {"n": (int, 3), "radius": (int, 4)}),
    "bounded": (bounded_norm_report, {"n": (int, 3), "radius": (int, 2)}),
    "unbounded": (unbounded_report, {"n": (int, 4), "radius": (int, 4)}),
    "periodicity": (periodicity_report, {"k": (int, 5)}),
    "trig": (_trig_report, {"n": (int, 4), "samples": (int, 200_000), "seed": (int, 0xD1FF)}),
    "darboux": (darboux_report, {"k": (int, 2), "radius": (int, 4)}),
    "poly-sc": (sc_polynomial_witness, {}),
    "bset": (bset_properties, {"k": (int, 8), "trials": (int, 1000), "seed": (int, 0xD1FF)}),
}


def run_gallery(name: str, **params) -> GalleryReport:
    if name not in GALLERY:
        raise KeyError(name)
    runner, spec = GALLERY[name]
    unknown = set(params) - set(spec)
    if unknown:
        raise TypeError(f"unknown parameter(s) for {name}: {', '.join(sorted(unknown))}")
    return runner(**params)


__all__ = [
    "BOUNDED_LP_VALUE",
    "BSetContext",
    "Claim",
    "GALLERY",
    "GalleryReport",
    "arbitrary_functions_report",
    "bounded_norm_report",
    "bounded_subsystem_solution",
    "bset_predicate",
    "bset_properties",
    "bset_shift_difference",
    "build_arbitrary_functions_system",
    "build_bounded_norm_system",
    "build_darboux_system",
    "build_periodicity_family",
    "build_trig_escape_system",
    "build_unbounded_system",
    "darboux_report",
    "periodicity_report",
    "prefix_deduction",
    "run_gallery",
    "sc_polynomial_system",
    "sc_polynomial_witness",
    "unbounded_report",
    "unbounded_subsystem_solution",
]
