import json
from fractions import Fraction

import pytest

from diffsys import (
    BasisContext,
    Constant,
    DifferenceOperator,
    Solution,
    Unsolvable,
    Window,
    apply_operator,
    evaluate,
    find_witness,
    functions_equal,
    solve_delta_system,
    solve_finite,
    verify_certificate,
    zero_test,
)
from diffsys.gallery import (
    GALLERY,
    BSetContext,
    bset_predicate,
    bset_properties,
    bset_shift_difference,
    build_arbitrary_functions_system,
    build_bounded_norm_system,
    build_darboux_system,
    build_periodicity_family,
    build_trig_escape_system,
    build_unbounded_system,
    run_gallery,
    sc_polynomial_witness,
)
from diffsys.gallery.bset import in_symmetric_difference
from diffsys.gallery.trig import e_term, h_term, measure_estimate, sample_points

from oracles import cos2pi

D = DifferenceOperator.delta


def test_arbitrary_shapes():
    s = build_arbitrary_functions_system(3)
    assert len(s) == 3 and s.shift_lattice.rank == 2
    s2 = build_arbitrary_functions_system(2)
    b1 = s2.ctx.basis()[0]
    assert [op for op, _ in s2.equations] == [D(b1), D(-b1)]
    res = solve_delta_system(s2)
    assert isinstance(res, Unsolvable)
    assert functions_equal(res.cert.combined_rhs, Constant(2))
    with pytest.raises(ValueError):
        build_arbitrary_functions_system(1)


def test_bounded_shapes():
    s = build_bounded_norm_system(3)
    assert len(s) == 3 and s.shift_lattice.rank == 3
    for op, g in s.equations:
        assert evaluate(g, s.ctx.zero()) == 1  # 2/(n-1) at the origin


def test_unbounded_small_case():
    s = build_unbounded_system(2)
    for i in range(2):
        assert isinstance(solve_finite(s.subsystem([i])), Solution)


def test_periodicity_family():
    fs, s = build_periodicity_family(5)
    b = s.ctx.basis()
    f3 = fs[b[2]]
    g = apply_operator(D(b[2]), f3)
    w = find_witness(g)
    assert w is not None and evaluate(g, w) != 0
    assert evaluate(g, s.ctx.zero()) != 0
    assert zero_test(apply_operator(D(b[1]), f3))
    fs2, s2 = build_periodicity_family(2)
    c1, c2 = s2.ctx.basis()
    assert zero_test(apply_operator(D(c2), fs2[c1]))
    assert not zero_test(apply_operator(D(c1), fs2[c1]))
    with pytest.raises(ValueError):
        build_periodicity_family(9)


def test_trig_first_level():
    xs = sample_points(200_000)
    h1 = h_term([Fraction(1)], 1)
    m = measure_estimate(h1, xs)
    assert abs(m - 2 / 3) < 0.01
    # h_1 = -2 cos(2 pi x), checked against floats
    for x in (Fraction(1, 10), Fraction(1, 3), Fraction(2, 7)):
        assert abs(float(evaluate(h1, x)) + 2 * cos2pi(1, x)) < 1e-12


def test_trig_exactness_and_report():
    coeffs, system, rep = build_trig_escape_system(4)
    assert rep.passed and len(coeffs) == 4 and len(system) == 4
    for n in range(1, 9):
        for j in range(n, 9):
            assert zero_test(e_term(j, n))


def test_trig_bad_parameters():
    with pytest.raises(ValueError):
        build_trig_escape_system(9)
    with pytest.raises(ValueError):
        build_trig_escape_system(2, samples=100)


def test_darboux_cases():
    ctx = BasisContext.numbered(2)
    b1, b2 = ctx.basis()
    for bs in ([b1], [b1, b2]):
        s = build_darboux_system(bs, ctx)
        res = solve_finite(s, Window(3))
        assert isinstance(res, Solution)
        c = res.f.values[(0,) * len(bs)] - 1
        for x, v in res.f.items():
            assert v == (1 if x.is_zero else 0) + c
    empty = build_darboux_system([], ctx)
    assert len(empty) == 0 and isinstance(solve_finite(empty), Solution)


def test_sc_polynomial():
    rep = sc_polynomial_witness()
    assert rep.passed
    sols = [c.evidence.get("solution") for c in rep.claims[:2]]
    assert sols == ["poly(0, 1)", "poly(0)"]


def test_bset_examples():
    ctx = BasisContext.numbered(8)
    b = ctx.basis()
    bc = BSetContext(ctx)
    assert bset_predicate(bc, 3 * b[0] - 2 * b[2]) == "inMinusB"
    assert bc.phi(3 * b[0] - 2 * b[2]) == -2
    assert bset_predicate(bc, -b[0] + b[3] * Fraction(1, 2)) == "inB"
    assert bset_predicate(bc, ctx.zero()) == "zero"
    assert not in_symmetric_difference(bc, 5 * b[6], b[1])
    v = b[1] - b[0]
    assert bc.in_b(v) and not bc.in_b(v - b[1])
    assert in_symmetric_difference(bc, v, b[1]) and bc.top_index(v) <= bc.top_index(b[1])
    assert bset_shift_difference(bc, b[1], trials=500).passed
    with pytest.raises(ValueError):
        bset_shift_difference(bc, -b[1])


def test_bset_report():
    rep = bset_properties(8, 1000)
    assert rep.passed and len(rep.claims) == 4


@pytest.mark.parametrize("name", sorted(GALLERY))
def test_every_gallery_entry_passes(name):
    rep = run_gallery(name)
    assert rep.passed and not rep.inconclusive
    doc = rep.to_json()
    json.dumps(doc)
    assert "runtime" not in doc
    assert rep.to_text().startswith(name)


def test_gallery_reproducible():
    a = run_gallery("bset").to_json()
    b = run_gallery("bset").to_json()
    assert a == b
    t1 = run_gallery("trig", n=2, samples=20_000).to_json()
    t2 = run_gallery("trig", n=2, samples=20_000).to_json()
    assert t1 == t2


def test_full_arbitrary_certificates():
    for n in range(2, 5):
        s = build_arbitrary_functions_system(n)
        res = solve_finite(s)
        assert isinstance(res, Unsolvable) and verify_certificate(s, res.cert)
