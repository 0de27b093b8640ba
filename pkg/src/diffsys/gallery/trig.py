"""The dyadic cosine system.

With C(x) = cos(2 pi x) and E(j, n) = Delta_{2^-n} C(2^j x) the system is

    Delta_{2^-n} f = h_n = sum_{j<n} c_j E(j, n),   n = 1, 2, ...

E(j, n) vanishes for j >= n, so the finite sum F_n = sum_{j<n} c_j C(2^j x)
solves the first n equations.  The c_j are chosen (c_0 = 1, then doubling)
so that |h_n| > 1 on a large part of [0, 1].
"""

from __future__ import annotations

import time
from fractions import Fraction

import numpy as np

from ..exact import BasisContext
from ..functions import TrigPoly, apply_operator, combine, sample_trig, zero_test
from ..operators import DifferenceOperator
from ..solver import EquationSystem
from .report import GalleryReport

SEED = 0xD1FF
SAMPLES = 200_000
TARGET = 0.55
COEFF_CAP = 2**64
MAX_N = 8

_CTX = BasisContext.numbered(0)


def dyadic_cos(j: int) -> TrigPoly:
    """C(2^j x)."""
    return TrigPoly.cos(2**j)


def step(n: int) -> DifferenceOperator:
    return DifferenceOperator.delta(_CTX.rational(Fraction(1, 2**n)))


def e_term(j: int, n: int):
    """E(j, n) = Delta_{2^-n} C(2^j x), exactly."""
    return apply_operator(step(n), dyadic_cos(j))


def h_term(coeffs, n: int):
    return combine([(coeffs[j], e_term(j, n)) for j in range(n)])


def partial_solution(coeffs, n: int):
    return combine([(coeffs[j], dyadic_cos(j)) for j in range(n)])


def sample_points(samples: int = SAMPLES, seed: int = SEED) -> np.ndarray:
    return np.random.default_rng(seed).random(samples)


def measure_estimate(h, xs) -> float:
    """Fraction of the sample points with |h(x)| > 1."""
    return float(np.mean(np.abs(sample_trig(h, xs)) > 1))


def grid_condition(h, xs, n: int) -> bool:
    """Every interval [t, t + 1/n] (t on a grid of step 1/(4n)) holds a sample with |h| > 1."""
    hot = np.sort(xs[np.abs(sample_trig(h, xs)) > 1])
    if not len(hot):
        return False
    for t in np.linspace(0.0, 1.0 - 1.0 / n, 4 * (n - 1) + 1 if n > 1 else 1):
        i = np.searchsorted(hot, t)
        if i == len(hot) or hot[i] > t + 1.0 / n:
            return False
    return True


def choose_coefficients(n_max: int, xs, category: bool = True):
    """c_0 = 1 and, for n >= 2, the least power of two c_{n-1} that meets the targets.

    Returns (coefficients, measures, status) where status is None or the
    index n whose search hit the cap.
    """
    coeffs = [Fraction(1)]
    measures = [measure_estimate(h_term(coeffs, 1), xs)]
    for n in range(2, n_max + 1):
        c = 1
        while True:
            trial = coeffs + [Fraction(c)]
            h = h_term(trial, n)
            m = measure_estimate(h, xs)
            if m >= TARGET and (not category or grid_condition(h, xs, n)):
                break
            c *= 2
            if c > COEFF_CAP:
                return coeffs, measures, n
        coeffs = trial
        measures.append(m)
    return coeffs, measures, None


def build_trig_escape_system(n_max: int = 4, samples: int = SAMPLES, seed: int = SEED, category: bool = True):
    """(c_j, the first n_max equations, report)."""
    if not 1 <= n_max <= MAX_N:
        raise ValueError(f"n_max must be between 1 and {MAX_N}")
    if samples < 10_000:
        raise ValueError("use at least 10^4 samples")
    t0 = time.perf_counter()
    rep = GalleryReport("trig", {"n_max": n_max, "samples": samples, "seed": seed})
    xs = sample_points(samples, seed)
    coeffs, measures, capped = choose_coefficients(n_max, xs, category)
    if capped is not None:
        rep.add(f"coefficient search for n={capped}", "inconclusive", {"reason": f"c_{capped - 1} would exceed 2^64"})
    n_done = len(coeffs)
    rep.parameters["coefficients"] = ", ".join(str(c) for c in coeffs)

    top = max(n_max, 1)
    vanish = all(zero_test(e_term(j, n)) for n in range(1, top + 1) for j in range(n, top + 1))
    nonzero = all(not zero_test(e_term(j, n)) for n in range(1, top + 1) for j in range(n))
    rep.add(f"E(j, n) = 0 exactly for n <= j <= {top}", vanish, {})
    rep.add(f"E(j, n) != 0 for j < n <= {top}", nonzero, {})

    system = EquationSystem([(step(n), h_term(coeffs, n)) for n in range(1, n_done + 1)], _CTX, f"trig(n={n_done})")
    for n in range(1, n_done + 1):
        f = partial_solution(coeffs, n)
        ok = all(zero_test(combine([(1, apply_operator(op, f)), (-1, g)])) for op, g in system.equations[:n])
        rep.add(f"sum_(j<{n}) c_j C(2^j x) solves the first {n} equations", ok, {"solution": f.render()})

    for n, m in enumerate(measures, start=1):
        rep.add(
            f"sampled measure of |h_{n}| > 1 is at least {TARGET}",
            m >= TARGET,
            {"estimate": m, "samples": samples},
        )
    if category:
        for n in range(1, n_done + 1):
            rep.add(
                f"every length 1/{n} interval meets |h_{n}| > 1 (sampled grid)",
                grid_condition(h_term(coeffs, n), xs, n),
                {"grid_step": f"1/{4 * n}"},
            )
    rep.runtime = time.perf_counter() - t0
    return coeffs, system, rep
