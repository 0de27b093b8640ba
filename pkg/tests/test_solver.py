from fractions import Fraction
from itertools import product

import pytest

from diffsys import (
    BasisContext,
    Certificate,
    Constant,
    CosetIndicator,
    DifferenceOperator,
    EquationSystem,
    Inconclusive,
    Lattice,
    Polynomial,
    ShapeError,
    Solution,
    Unsolvable,
    VanishingSet,
    Window,
    apply_operator,
    deduce,
    evaluate,
    functions_equal,
    min_sup_norm_on_window,
    normalize_two_term,
    solve_delta_system,
    solve_finite,
    solve_polynomial,
    solve_vanishing_on,
    syzygy_certificates,
    two_term_base_compare,
    verify_certificate,
    zero_test,
)
from diffsys.functions import combine
from diffsys.gallery import build_arbitrary_functions_system, build_unbounded_system, prefix_deduction
from diffsys.solver import check_on_window, verify_lower_bound, window_solve

from oracles import components, count_positive, poly_value, shift_vector, window_sup_norm_lp

CTX = BasisContext.numbered(2)
B1, B2 = CTX.basis()
Q = BasisContext.numbered(0)
ONE = Q.rational(1)
D = DifferenceOperator.delta
T = DifferenceOperator.translation
ID = DifferenceOperator.identity


def minus(f, g):
    return combine([(1, f), (-1, g)])


# -- deduce / verify --------------------------------------------------------------

def test_deduce_telescoping_pair():
    g1 = CosetIndicator.of([B2])
    s = EquationSystem([(D(B1), g1), (D(B2), Constant(1))], CTX)
    op, g = deduce(s, [(T(B2), 0), (ID(CTX), 1)])
    assert op == D(B1 + B2)
    assert functions_equal(g, combine([(1, apply_operator(T(B2), g1)), (1, Constant(1))]))


def test_deduce_arbitrary_loop():
    s = build_arbitrary_functions_system(3)
    a1, a2, _ = [op.delta_shift() for op, _ in s.equations]
    op, g = deduce(s, [(T(s.ctx.zero()), 0), (T(a1), 1), (T(a1 + a2), 2)])
    assert op.is_zero and functions_equal(g, Constant(3))


def test_deduce_identity():
    s = EquationSystem([(D(B1), Constant(2))], CTX)
    assert deduce(s, [(ID(CTX), 0)]) == (D(B1), Constant(2))
    with pytest.raises(IndexError):
        deduce(s, [(ID(CTX), 3)])


def test_verify_certificate_cases():
    s = build_arbitrary_functions_system(3)
    a1, a2, _ = [op.delta_shift() for op, _ in s.equations]
    cert = Certificate.from_entries(s, [(T(s.ctx.zero()), 0), (T(a1), 1), (T(a1 + a2), 2)])
    assert verify_certificate(s, cert)
    bad = Certificate.from_entries(s, [(ID(s.ctx), 0)])
    assert bad.combined_operator == D(a1) and not verify_certificate(s, bad)
    # a tampered right-hand side is rejected
    forged = Certificate(cert.entries, cert.combined_operator, Constant(4))
    assert not verify_certificate(s, forged)


@pytest.mark.parametrize("n", range(2, 7))
def test_prefix_deduction_value(n):
    s = build_unbounded_system(n)
    cert = prefix_deduction(s, n)
    # f(a_1 + ... + a_n) - f(0) = n; the operator is not zero (see the ledger)
    assert cert.value_at_zero() == n
    assert cert.combined_operator == T(sum(s.ctx.basis()[1:], s.ctx.basis()[0])) - ID(s.ctx)
    assert not verify_certificate(s, cert)


# -- delta solver -----------------------------------------------------------------

def test_delta_solver_arbitrary_three():
    s = build_arbitrary_functions_system(3)
    res = solve_delta_system(s, Window(4))
    assert isinstance(res, Unsolvable)
    assert verify_certificate(s, res.cert)
    assert res.cert.combined_operator.is_zero and functions_equal(res.cert.combined_rhs, Constant(3))


def test_delta_solver_subsystem_is_k1_plus_k2():
    s = build_arbitrary_functions_system(3).subsystem([0, 1])
    res = solve_delta_system(s, Window(5))
    assert isinstance(res, Solution)
    table = res.f
    base = table.values[(0, 0)]
    for (k1, k2), v in table.values.items():
        assert v - base == k1 + k2
    assert check_on_window(s, table, Window(5))


def test_delta_solver_homogeneous():
    s = EquationSystem([(D(B1), Constant(0))], CTX)
    res = solve_delta_system(s)
    assert isinstance(res, Solution) and set(res.f.values.values()) == {0}


def test_delta_solver_shape_error():
    s = EquationSystem([(T(B1), Constant(0))], CTX)
    with pytest.raises(ShapeError):
        solve_delta_system(s)


# -- syzygies ---------------------------------------------------------------------

def test_koszul_syzygy():
    g1 = CosetIndicator.of([B2])
    g2 = CosetIndicator.of([B1])
    s = EquationSystem([(D(B1), g1), (D(B2), g2)], CTX)
    certs = syzygy_certificates(s)
    assert len(certs) == 1
    cert = certs[0]
    assert cert.combined_operator.is_zero
    mult = {i: a for a, i in cert.entries}
    # (A_0, A_1) = u * (Delta_b2, -Delta_b1) for a unit u = c T_s
    units = []
    for c, sh in mult[0].terms:
        units += [T(sh - B2, c), T(sh, -c)]
    assert any(u.compose(D(B2)) == mult[0] and u.compose(D(B1)).scale(-1) == mult[1] for u in units)
    # the combined right-hand side is the cocycle expression up to that unit
    cocycle = minus(apply_operator(D(B2), g1), apply_operator(D(B1), g2))
    assert zero_test(cocycle) and zero_test(cert.combined_rhs)


def test_arbitrary_syzygy_contains_telescoping():
    s = build_arbitrary_functions_system(3)
    certs = syzygy_certificates(s)
    assert certs
    assert any(verify_certificate(s, c) for c in certs)
    good = [c for c in certs if verify_certificate(s, c)]
    # up to a unit the right-hand side is the constant 3
    assert any(abs(evaluate(c.combined_rhs, s.ctx.zero())) == 3 for c in good)


def test_single_equation_has_no_syzygy():
    s = EquationSystem([(D(B1), CosetIndicator.of([B2]))], CTX)
    assert syzygy_certificates(s) == []


# -- solve_finite -------------------------------------------------------------------

def test_contradictory_pair():
    s = EquationSystem([(D(ONE), Constant(1)), (D(ONE), Constant(0))], Q)
    res = solve_finite(s)
    assert isinstance(res, Unsolvable) and verify_certificate(s, res.cert)
    assert res.cert.combined_operator.is_zero
    assert abs(evaluate(res.cert.combined_rhs, Q.zero())) == 1


def test_unbounded_subsystem_matches_count():
    n = 4
    s = build_unbounded_system(n)
    for J in [(0,), (0, 2), (1, 2, 3)]:
        res = solve_finite(s.subsystem(J), Window(3))
        assert isinstance(res, Solution)
        table = res.f
        base = table.values[(0,) * table.lattice.rank]
        for x, v in table.items():
            assert v - base == count_positive(shift_vector(x), J)


def test_antiperiodic_window():
    op = DifferenceOperator.canonicalize([(1, B1), (1, CTX.zero())], CTX)
    s = EquationSystem([(op, Constant(0))], CTX)
    res = solve_finite(s, Window(4))
    assert isinstance(res, Solution)
    assert set(res.f.values.values()) == {0}
    assert check_on_window(s, res.f, Window(4))


def test_finite_general_shape_solution():
    # f(x + b1) + 2 f(x) = chi(<b1>)
    op = DifferenceOperator.canonicalize([(1, B1), (2, CTX.zero())], CTX)
    s = EquationSystem([(op, CosetIndicator.of([B1]))], CTX)
    res = solve_finite(s, Window(4))
    assert isinstance(res, Solution) and check_on_window(s, res.f, Window(4))


def test_finite_general_shape_unsolvable():
    # f(x + 2b1) - f(x) = 1 and f(x + b1) + f(x) = 0 contradict each other:
    # the second gives f(x + 2b1) = f(x)
    op1 = DifferenceOperator.canonicalize([(1, 2 * B1), (-1, CTX.zero())], CTX)
    op2 = DifferenceOperator.canonicalize([(1, B1), (1, CTX.zero())], CTX)
    s = EquationSystem([(op1, Constant(1)), (op2, Constant(0))], CTX)
    res = solve_finite(s)
    assert isinstance(res, Unsolvable) and verify_certificate(s, res.cert)


def test_empty_system():
    res = solve_finite(EquationSystem([], CTX))
    assert isinstance(res, Solution)


def test_syzygy_budget_is_inconclusive():
    ops = [DifferenceOperator.canonicalize([(1, 3 * B1), (2, B2), (-1, CTX.zero())], CTX),
           DifferenceOperator.canonicalize([(1, 2 * B1 + B2), (1, B1), (-3, CTX.zero())], CTX)]
    s = EquationSystem([(ops[0], Constant(1)), (ops[1], Constant(2))], CTX)
    res = solve_finite(s, Window(2), max_pairs=1)
    assert isinstance(res, (Inconclusive, Unsolvable))
    if isinstance(res, Unsolvable):
        assert verify_certificate(s, res.cert)


# -- sup-norm LP --------------------------------------------------------------------

def test_minsup_homogeneous_is_zero():
    s = EquationSystem([(D(B1), Constant(0))], CTX)
    assert min_sup_norm_on_window(s, Window(2)).value == 0


def test_minsup_bounded_n3_against_float_lp():
    from diffsys.gallery import build_bounded_norm_system

    s = build_bounded_norm_system(3)
    res = min_sup_norm_on_window(s, Window(2))
    assert res.exact and res.value == Fraction(3, 2)
    assert verify_lower_bound(s, Window(2), res.bound) == res.value
    assert check_on_window(s, res.witness, Window(2))
    assert max(abs(v) for v in res.witness.values.values()) == res.value
    stencils = [[(1, tuple(int(i == j) for j in range(3))), (-1, (0, 0, 0))] for i in range(3)]
    oracle = window_sup_norm_lp(3, 2, stencils, lambda i, p: Fraction(1) if p[i] == 0 else 0)
    assert abs(oracle - 1.5) < 1e-7


def test_minsup_monotone_in_window():
    s = EquationSystem([(D(B1), CosetIndicator.of([B2])), (D(B2), Constant(0))], CTX)
    vals = [min_sup_norm_on_window(s, Window(r)).value for r in (1, 2, 3)]
    assert vals == sorted(vals)


def test_minsup_infeasible_returns_certificate():
    s = EquationSystem([(D(ONE), Constant(1)), (D(ONE), Constant(0))], Q)
    res = min_sup_norm_on_window(s, Window(2))
    assert not res.feasible and verify_certificate(s, res.certificate)


def test_minsup_subsystem_at_most_one():
    from diffsys.gallery import bounded_subsystem_solution, build_bounded_norm_system

    s = build_bounded_norm_system(3).subsystem([0, 1])
    res = min_sup_norm_on_window(s, Window(2))
    f = bounded_subsystem_solution(3, [0, 1])
    assert res.value <= 1
    lat = s.shift_lattice
    sup = max(abs(evaluate(f, lat.point(k))) for k in product(range(-2, 3), repeat=lat.rank))
    assert res.value <= sup <= 1


# -- polynomial ansatz ------------------------------------------------------------------

def test_polynomial_examples():
    s1 = EquationSystem([(D(ONE), Constant(1))], Q)
    assert solve_polynomial(s1) == Polynomial([0, 1])
    s2 = EquationSystem([(D(ONE), Polynomial([0, 2]))], Q)
    p = solve_polynomial(s2)
    assert p == Polynomial([0, -1, 1])
    for x in range(-5, 6):
        assert poly_value(p.coeffs, x + 1) - poly_value(p.coeffs, x) == 2 * x
    s3 = EquationSystem([(D(ONE), Constant(1)), (D(ONE), Constant(0))], Q)
    assert solve_polynomial(s3) is None


def test_polynomial_degree_bound():
    s = EquationSystem([(D(ONE), Polynomial([0, 0, 3]))], Q)
    assert solve_polynomial(s, 1) is None
    p = solve_polynomial(s)
    assert p is not None and functions_equal(apply_operator(D(ONE), p), Polynomial([0, 0, 3]))


# -- vanishing constraints ----------------------------------------------------------------

def test_vanishing_examples():
    lat = Lattice.from_generators([B1])
    s = EquationSystem([(D(B1), Constant(0))], CTX)
    res = solve_vanishing_on(s, VanishingSet(cosets=(CosetIndicator(lat),)), Window(3))
    assert isinstance(res, Solution) and set(res.f.values.values()) == {0}

    vs = VanishingSet(cosets=(CosetIndicator(lat),))
    s2 = EquationSystem([(T(B1), Constant(1))], CTX)
    res2 = solve_vanishing_on(s2, vs, Window(3))
    assert isinstance(res2, Unsolvable)
    assert verify_certificate(s2, res2.cert, vs)
    assert all(vs.contains(sh) for sh in res2.cert.combined_operator.shifts)
    assert evaluate(res2.cert.combined_rhs, CTX.zero()) != 0


def test_vanishing_off_lattice_point_indicator():
    point = CosetIndicator(Lattice.trivial(CTX))
    s = EquationSystem([(D(B1), apply_operator(D(B1), point))], CTX)
    vs = VanishingSet(off_lattice=Lattice.from_generators([B1]))
    res = solve_vanishing_on(s, vs, Window(4))
    assert isinstance(res, Solution) and res.f.off == 0
    c = res.f.values[(0,)] - 1
    for (k,), v in res.f.values.items():
        assert v == (1 if k == 0 else 0) + c


# -- two-term equations ---------------------------------------------------------------------

def test_base_compare_examples():
    assert two_term_base_compare(4, 2, 2, 1) == "equal"
    assert two_term_base_compare(9, 2, 3, 1) == "equal"
    assert two_term_base_compare(2, 1, 3, 1) == "distinct"


def test_base_compare_properties():
    cases = [(Fraction(a), Fraction(b)) for a in (2, 3, Fraction(1, 2), -4, 9) for b in (1, 2, Fraction(1, 2), -1)]
    for a, b in cases:
        assert two_term_base_compare(a, b, a, b) == "equal"
        for a2, b2 in cases:
            assert two_term_base_compare(a, b, a2, b2) == two_term_base_compare(a2, b2, a, b)
            for k in range(1, 6):
                assert two_term_base_compare(a**k, k * b, a2, b2) == two_term_base_compare(a, b, a2, b2)


def test_normalize_two_term():
    def eq(a):
        return DifferenceOperator.canonicalize([(1, ONE), (-a, Q.zero())], Q)

    t = normalize_two_term(eq(2), Constant(0))
    assert t.kind == "delta" and t.base == (2, 1)
    t = normalize_two_term(eq(-1), Constant(0))
    assert t.kind == "antiperiodic" and t.base == (1, 1)
    t = normalize_two_term(eq(1), Polynomial([0, 1]))
    assert t.kind == "delta" and t.base == (1, 1) and t.scale_is_one
    assert t.operator == D(ONE) and functions_equal(t.rhs_exact, Polynomial([0, 1]))


# -- soundness and exclusivity on a batch of systems ---------------------------------------------

def _batch():
    point = CosetIndicator(Lattice.trivial(CTX))
    yield EquationSystem([(D(B1), Constant(1)), (D(B2), Constant(1)), (D(-B1 - B2), Constant(1))], CTX)
    yield EquationSystem([(D(B1), CosetIndicator.of([B2])), (D(B2), CosetIndicator.of([B1]))], CTX)
    yield EquationSystem([(D(B1), apply_operator(D(B1), point)), (D(B2), apply_operator(D(B2), point))], CTX)
    yield EquationSystem([(DifferenceOperator.canonicalize([(1, B1), (1, CTX.zero())], CTX), Constant(1))], CTX)
    yield EquationSystem([(D(2 * B1), Constant(1)), (D(B1), Constant(0))], CTX)


def test_soundness_and_exclusivity():
    w = Window(3)
    for s in _batch():
        res = solve_finite(s, w)
        other = window_solve(s, w)
        if isinstance(res, Solution):
            assert check_on_window(s, res.f, w)
            assert not isinstance(other, Unsolvable)
        else:
            assert isinstance(res, Unsolvable) and verify_certificate(s, res.cert)
            assert not isinstance(other, Solution)


def test_component_oracle_sanity():
    comp = components(1, 3, [(2,)])
    assert len(set(comp.values())) == 2
