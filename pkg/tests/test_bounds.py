import random

import pytest

import pairlab as pl
from pairlab.bounds import (
    check_bounds,
    check_bounds_custom,
    frobenius_descent,
    scan_bounds,
    verify_descent,
    verify_homomorphism,
)
from pairlab.curve import point_add, scalar_mul
from pairlab.dweight import DParams, d_weight
from pairlab.errors import DomainError, InconclusiveError
from pairlab.funcfield import (
    evaluate,
    func_inv,
    func_mul,
    make_const,
    make_coord,
    make_line,
    make_vertical,
)


@pytest.fixture(scope="module")
def toy_params():
    return DParams(5, 2)


@pytest.fixture(scope="module")
def fy(toy_ctx):
    return make_coord(toy_ctx.curve, "y")


def test_descent_d_one_is_f(toy_ctx, fy, toy_params):
    res = frobenius_descent(fy, 1, toy_params)
    assert res.witness.weight == 1
    assert res.witness.a_digits == (1, 0)
    assert res.actual_deg == fy.deg
    for P in toy_ctx.g1[1:]:
        assert evaluate(res.func, P) == evaluate(fy, P)


def test_descent_d_q_is_single_twist(toy_ctx, fy, toy_params):
    res = frobenius_descent(fy, toy_ctx.record.q, toy_params)
    assert res.witness.weight == 1
    assert res.witness.a_digits == (0, 1)
    assert res.actual_deg == fy.deg  # twisting preserves degree


def test_descent_toy_example(toy_ctx, fy, toy_params):
    # D(8) = 4 over M = 24, witness 3*q^0 + 1*q^1
    res = frobenius_descent(fy, 8, toy_params)
    assert d_weight(8, toy_params)[0] == 4
    assert res.claimed_bound == fy.deg * 4
    assert res.actual_deg <= res.claimed_bound
    check = verify_descent(toy_ctx.curve, fy, res, list(toy_ctx.g1))
    assert check.passed and check.mismatches == ()


def test_descent_constant_function(toy_ctx, toy_params):
    c = make_const(toy_ctx.curve, 3)
    res = frobenius_descent(c, 8, toy_params)
    assert res.claimed_bound == 0 and res.actual_deg == 0
    expected = toy_ctx.ext.scalar(3) ** 8
    for P in toy_ctx.g1:
        assert evaluate(res.func, P) == expected


def test_descent_d_multiple_of_m_collapses(toy_ctx, fy, toy_params):
    res = frobenius_descent(fy, toy_params.m, toy_params)
    assert res.witness.weight == 0
    assert res.actual_deg == 0
    one = toy_ctx.ext.one()
    for P in toy_ctx.g1:
        assert evaluate(res.func, P) == one
    check = verify_descent(toy_ctx.curve, fy, res, list(toy_ctx.g1))
    assert check.passed


def test_descent_random_d_sweep(toy_ctx, fy, toy_params):
    rng = random.Random(7)
    for _ in range(20):
        d = rng.randrange(0, toy_params.m)
        res = frobenius_descent(fy, d, toy_params)
        assert res.actual_deg <= res.claimed_bound
        check = verify_descent(toy_ctx.curve, fy, res, list(toy_ctx.g1))
        assert check.passed


def test_descent_cancellation_reported():
    # zeros of x are Frobenius-stable here, so twisted copies cancel fully
    recs = pl.scan_corpus([11], k_max=2, r_min=3)
    rec = next(r for r in recs if (r.a, r.b) == (0, 2))
    ctx = pl.build_context(rec)
    fx = make_coord(ctx.curve, "x")
    params = DParams(rec.q, rec.k)
    res = frobenius_descent(fx, rec.d, params)
    assert res.actual_deg < res.claimed_bound
    assert res.cancellation == res.claimed_bound - res.actual_deg
    check = verify_descent(ctx.curve, fx, res, list(ctx.g1))
    assert check.passed  # the pointwise identity survives cancellation


def test_descent_line_function():
    # the toy r = 3 context is degenerate for lines (G1 = {O, P, -P} always
    # meets the support), so use an r = 5 context
    recs = pl.scan_corpus([19], k_max=2, r_min=5)
    ctx = pl.build_context(next(r for r in recs if r.k == 2))
    E = ctx.curve
    ln = make_line(E, ctx.p1, scalar_mul(E, ctx.p1, 2))
    params = DParams(ctx.record.q, ctx.record.k)
    res = frobenius_descent(ln, 13, params)
    check = verify_descent(E, ln, res, list(ctx.g1))
    assert check.passed and check.checked >= 2


def test_descent_params_must_match(fy):
    with pytest.raises(ValueError):
        frobenius_descent(fy, 8, DParams(7, 2))


def test_verify_descent_inconclusive_for_x_on_toy(toy_ctx, toy_params):
    # G1 of the toy curve sits at x = 0: every point is a zero or pole of x
    fx = make_coord(toy_ctx.curve, "x")
    res = frobenius_descent(fx, 8, toy_params)
    with pytest.raises(InconclusiveError):
        verify_descent(toy_ctx.curve, fx, res, list(toy_ctx.g1))


def test_check_bounds_toy_numbers(toy_record):
    rep = check_bounds(toy_record, f_deg=3, d=8, mode="corollary")
    assert (rep.D_d, rep.c, rep.d1, rep.D_d1) == (4, 1, 2, 2)
    assert rep.prop2_lhs == 24 and rep.prop3_lhs == 12 and rep.corollary_lhs == 6
    assert rep.prop2_pass and rep.prop3_pass and rep.corollary_pass
    assert rep.lemma_ok
    assert rep.passed_for("corollary")


def test_check_bounds_mode_validation(toy_record):
    with pytest.raises(ValueError):
        check_bounds(toy_record, 3, 8, mode="prop9")
    with pytest.raises(ValueError):
        check_bounds(toy_record, 0, 8, mode="prop2")
    rec_k1 = pl.CurveRecord(q=7, a=0, b=5, n=6, r=3, k=1, d=2)
    with pytest.raises(DomainError):
        check_bounds(rec_k1, 3, 2, mode="corollary")
    rep = check_bounds(rec_k1, 3, 2, mode="prop3")
    assert rep.corollary_pass is None  # not applicable at k = 1


def test_check_bounds_thresholds_are_exact(toy_record):
    # pass flags compare 6*lhs >= r and 12*lhs >= r in integers
    rep = check_bounds(toy_record, f_deg=3, d=8, mode="prop3")
    assert rep.prop3_pass == (6 * rep.prop3_lhs >= toy_record.r)
    assert rep.corollary_pass == (12 * rep.corollary_lhs >= toy_record.r)


def test_homomorphism_check_accepts_miller_function(toy_ctx):
    # f_{r,P2} restricted to G1 is a homomorphism into mu_r
    E = toy_ctx.curve
    P2 = toy_ctx.p2
    f = make_line(E, P2, P2)
    P2_2 = point_add(E, P2, P2)
    f = func_mul(f, make_line(E, P2_2, P2))
    f = func_mul(f, func_inv(make_vertical(E, P2_2)))
    assert f.deg == toy_ctx.record.r
    assert verify_homomorphism(toy_ctx, f, toy_ctx.d)
    rep = check_bounds_custom(toy_ctx, f, toy_ctx.d, mode="prop3")
    assert rep.prop3_pass


def test_homomorphism_check_rejects_coordinate(toy_ctx):
    fx = make_coord(toy_ctx.curve, "x")
    assert not verify_homomorphism(toy_ctx, fx, toy_ctx.d)
    with pytest.raises(DomainError):
        check_bounds_custom(toy_ctx, fx, toy_ctx.d, mode="prop3")


def test_scan_bounds_empty():
    scan = scan_bounds([])
    assert scan.reports == () and scan.ok
    assert scan.min_prop3_ratio is None


def test_scan_bounds_small_corpus():
    corpus = pl.scan_corpus([5, 7], k_max=2, r_min=3)
    scan = scan_bounds(corpus)
    assert scan.ok and not scan.violations
    assert len(scan.reports) == len(corpus)
    for rep in scan.reports:
        assert rep.deg_f == rep.record.r
        assert rep.prop2_pass and rep.prop3_pass
        assert rep.lemma_ok
        if rep.record.k >= 2:
            assert rep.corollary_pass
        else:
            assert rep.corollary_pass is None
    assert "violations=0" in scan.summary_line()


def test_scan_bounds_toy_ratios():
    corpus = pl.scan_corpus([5], k_max=2, r_min=3)
    scan = scan_bounds(corpus)
    from fractions import Fraction
    assert scan.min_prop3_ratio == Fraction(24)
    assert scan.min_corollary_ratio == Fraction(24)


def test_scan_bounds_deterministic():
    corpus = pl.scan_corpus([5, 7, 11], k_max=3, r_min=3)
    a = scan_bounds(corpus)
    b = scan_bounds(corpus)
    assert a.reports == b.reports
    assert [r.csv_row() for r in a.reports] == [r.csv_row() for r in b.reports]


def test_bound_report_csv_row(toy_record):
    rep = check_bounds(toy_record, 3, 8, mode="prop2")
    row = rep.csv_row()
    assert len(row) == len(rep.CSV_COLUMNS)
    assert row[:6] == [5, 0, 1, 3, 2, 8]
    assert row[-3:] == ["true", "true", "true"]
