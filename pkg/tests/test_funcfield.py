import pytest

import pairlab as pl
from pairlab.curve import CurvePoint, frobenius_point, point_add, point_neg, scalar_mul
from pairlab.errors import ConsistencyError, IndeterminateError, PoleError
from pairlab.funcfield import (
    ConjugateCluster,
    Divisor,
    evaluate,
    func_inv,
    func_mul,
    func_pow,
    make_const,
    make_coord,
    make_line,
    make_vertical,
    twist,
)

O = CurvePoint.infinity()


@pytest.fixture(scope="module")
def E(f25):
    return pl.Curve(f25.scalar(0), f25.scalar(1))


@pytest.fixture(scope="module")
def pts(E):
    return pl.enumerate_points(E)


@pytest.fixture(scope="module")
def P(toy_ctx):
    return toy_ctx.p1


def test_vertical_divisor(E, P):
    v = make_vertical(E, P)
    assert v.deg == 2
    assert v.div.multiplicity(P) == 1
    assert v.div.multiplicity(point_neg(E, P)) == 1
    assert v.div.multiplicity(O) == -2
    assert v.div.degree() == 0


def test_vertical_at_two_torsion(E, f25):
    T = CurvePoint(f25.scalar(4), f25.scalar(0))  # (4, 0) is 2-torsion
    v = make_vertical(E, T)
    assert v.div.multiplicity(T) == 2
    assert v.div.multiplicity(O) == -2
    assert v.deg == 2


def test_vertical_at_infinity_rejected(E):
    with pytest.raises(ValueError):
        make_vertical(E, O)


def test_line_divisor_and_vanishing(E, pts):
    aff = [p for p in pts if not p.is_infinity]
    Pp, Qq = aff[0], aff[3]
    if Pp.x == Qq.x:
        Qq = aff[4]
    ln = make_line(E, Pp, Qq)
    R = point_neg(E, point_add(E, Pp, Qq))
    for Z in (Pp, Qq, R):
        assert evaluate(ln, Z).is_zero
    assert ln.div.multiplicity(O) == -3
    assert ln.deg == 3


def test_line_tangent_at_two_torsion_is_vertical(E, f25):
    T = CurvePoint(f25.scalar(4), f25.scalar(0))
    assert make_line(E, T, T).div == make_vertical(E, T).div


def test_line_through_infinity_normalizes(E, P):
    assert make_line(E, P, O).div == make_vertical(E, P).div
    assert make_line(E, O, P).div == make_vertical(E, P).div
    with pytest.raises(ValueError):
        make_line(E, O, O)


def test_coord_degrees(E):
    assert make_coord(E, "x").deg == 2
    assert make_coord(E, "y").deg == 3
    with pytest.raises(ValueError):
        make_coord(E, "z")


def test_coord_x_cluster_when_b_not_square(f5):
    # 2 is not a square mod 5, so x vanishes at conjugate points
    E5 = pl.Curve(f5.scalar(0), f5.scalar(2))
    fx = make_coord(E5, "x")
    assert fx.deg == 2
    clusters = [p for p in fx.div.support() if isinstance(p, ConjugateCluster)]
    assert len(clusters) == 1 and clusters[0].degree == 2


def test_coord_y_two_torsion_split(E, f25):
    fy = make_coord(E, "y")
    zeros = [p for p, m in fy.div.places() if m > 0]
    assert all(isinstance(p, CurvePoint) and p.y.is_zero for p in zeros)
    assert len(zeros) == 3  # x^3 + 1 splits over F_25


def test_const_function(E, pts):
    c = make_const(E, 3)
    assert c.deg == 0
    assert len(c.div) == 0
    for Z in pts:
        assert evaluate(c, Z) == E.params.scalar(3)
    with pytest.raises(ValueError):
        make_const(E, 0)


def test_mul_inverse_cancels(E, P):
    v = make_vertical(E, P)
    prod = func_mul(v, func_inv(v))
    assert len(prod.div) == 0
    assert prod.deg == 0


def test_pow_scales_divisor(E, P):
    v = make_vertical(E, P)
    assert func_pow(v, 3).deg == 6
    assert func_pow(v, -2).deg == 4
    assert func_pow(v, 0).deg == 0
    assert func_inv(v).div == -v.div


def test_product_degree_matches_divisor_oracle(E, P, pts):
    fx = make_coord(E, "x")
    v = make_vertical(E, P)
    prod = func_mul(fx, v)
    # independent oracle: accumulate the two divisors by hand
    acc = {}
    for place, m in list(fx.div.places()) + list(v.div.places()):
        acc[place] = acc.get(place, 0) + m
    expected = sum(m for m in acc.values() if m > 0)
    assert prod.deg == expected
    assert prod.deg <= fx.deg + v.deg


def test_evaluate_vertical_zeros_and_pole(E, P):
    v = make_vertical(E, P)
    assert evaluate(v, P).is_zero
    assert evaluate(v, point_neg(E, P)).is_zero
    with pytest.raises(PoleError):
        evaluate(v, O)
    with pytest.raises(PoleError):
        evaluate(func_inv(v), P)


def test_evaluate_indeterminate(E, P):
    v = make_vertical(E, P)
    prod = func_mul(v, func_inv(v))
    with pytest.raises(IndeterminateError):
        evaluate(prod, P)
    fx = make_coord(E, "x")
    with pytest.raises(IndeterminateError):
        evaluate(func_mul(fx, func_inv(fx)), CurvePoint(E.params.zero(), E.params.one()))


def test_evaluate_at_infinity_uses_divisor(E, P):
    v = make_vertical(E, P)
    with pytest.raises(PoleError):
        evaluate(v, O)
    assert evaluate(func_inv(v), O).is_zero
    with pytest.raises(IndeterminateError):
        evaluate(func_mul(v, func_inv(make_coord(E, "x"))), O)


def test_evaluate_product_equals_product_of_primitives(E, pts, P):
    fx = make_coord(E, "x")
    fy = make_coord(E, "y")
    v = make_vertical(E, P)
    prod = func_mul(func_mul(fx, fy), func_pow(v, 2))
    for Z in pts[5:15]:
        if Z.is_infinity:
            continue
        try:
            got = evaluate(prod, Z)
        except (PoleError, IndeterminateError):
            continue
        assert got == evaluate(fx, Z) * evaluate(fy, Z) * evaluate(v, Z) ** 2


def test_zero_pole_witness_on_rational_support(E, P, pts):
    funcs = [
        make_coord(E, "x"),
        make_coord(E, "y"),
        make_vertical(E, P),
        make_line(E, P, scalar_mul(E, P, 2)),
        func_inv(make_vertical(E, P)),
    ]
    for f in funcs:
        for place, mult in f.div.places():
            if not isinstance(place, CurvePoint) or place.is_infinity:
                continue
            if mult > 0:
                assert evaluate(f, place).is_zero
            else:
                with pytest.raises(PoleError):
                    evaluate(f, place)


def test_divisor_degree_zero_invariant(E, P):
    fx = make_coord(E, "x")
    fy = make_coord(E, "y")
    chain = func_mul(func_pow(fx, 3), func_inv(func_pow(fy, 2)))
    assert chain.div.degree() == 0
    assert twist(chain, 1).div.degree() == 0
    with pytest.raises(ConsistencyError):
        pl.TrackedFunction(E, fx.expr, Divisor({O: 1}))


def test_twist_identity_is_noop(E, P):
    fy = make_coord(E, "y")
    assert twist(fy, 0) is fy
    assert twist(fy, E.params.k) is fy


def test_twist_fixes_base_field_functions(E, pts, P):
    # coefficients all lie in F_q, so the twist acts as the identity
    ln = make_line(E, P, scalar_mul(E, P, 2))
    for f in (make_coord(E, "x"), ln):
        tf = twist(f, 1)
        assert tf.div == f.div
        for Z in pts:
            if Z.is_infinity:
                continue
            try:
                a = evaluate(f, Z)
            except (PoleError, IndeterminateError):
                continue
            assert evaluate(tf, Z) == a


def test_twist_defining_identity_exhaustive(E, pts, P, toy_ctx):
    # evaluate(twist(f, i), pi^i(P)) = evaluate(f, P)^(q^i), all points, all i
    q = E.params.q
    v2 = make_vertical(E, toy_ctx.p2)  # coefficients genuinely in F_25
    funcs = [
        make_coord(E, "x"),
        make_coord(E, "y"),
        make_line(E, P, scalar_mul(E, P, 2)),
        v2,
        func_mul(make_coord(E, "x"), func_inv(v2)),
    ]
    assert len(pts) <= 100
    for f in funcs:
        for i in range(E.params.k):
            tf = twist(f, i)
            assert tf.deg == f.deg
            for Z in pts:
                if Z.is_infinity:
                    continue
                try:
                    base = evaluate(f, Z)
                except (PoleError, IndeterminateError):
                    continue
                assert evaluate(tf, frobenius_point(E, Z, i)) == base ** (q ** i)


def test_twist_moves_divisor_points(E, toy_ctx):
    v2 = make_vertical(E, toy_ctx.p2)
    tv = twist(v2, 1)
    expected = frobenius_point(E, toy_ctx.p2, 1)
    assert tv.div.multiplicity(expected) == 1


def test_twist_requires_base_field_curve(f25):
    t = f25.element((0, 1))
    E_t = pl.Curve(t, f25.scalar(1) + t)  # coefficients not Frobenius-fixed
    if (4 * t ** 3 + 27 * (f25.scalar(1) + t) ** 2).is_zero:
        pytest.skip("singular pick")
    fx = make_coord(E_t, "x")
    with pytest.raises(ValueError):
        twist(fx, 1)


def test_nonconstant_functions_have_positive_degree(E, P):
    for f in (make_coord(E, "x"), make_coord(E, "y"), make_vertical(E, P)):
        assert f.deg >= 1
