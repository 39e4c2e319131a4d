import pytest
from hypothesis import given, settings, strategies as st

import pairlab as pl
from pairlab.errors import DivisibilityError, SizeCapError
from pairlab.field import FieldElement, FieldParams, element_at, elements, field_arith


# ---------------------------------------------------------------------------
# independent oracle: multiply coefficient lists over Z, reduce by the monic
# modulus with long division, coefficients mod q

def poly_oracle_mul(params, a, b):
    q, k = params.q, params.k
    prod = [0] * (2 * k)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            prod[i + j] += ai * bj
    mod = params.modulus_poly
    for idx in range(len(prod) - 1, k - 1, -1):
        c = prod[idx] % q
        for j in range(k + 1):
            prod[idx - k + j] -= c * mod[j]
        assert prod[idx] % q == 0
    return tuple(v % q for v in prod[:k])


@pytest.mark.parametrize("q,k", [(2, 2), (2, 3), (5, 2), (7, 3), (11, 2), (3, 4)])
def test_mul_matches_integer_poly_oracle(q, k):
    params = pl.build_extension(q, k)
    import random
    rng = random.Random(q * 100 + k)
    for _ in range(60):
        x = element_at(params, rng.randrange(params.order))
        y = element_at(params, rng.randrange(params.order))
        assert (x * y).coeffs == poly_oracle_mul(params, x.coeffs, y.coeffs)


def test_f4_multiplication_table():
    params = pl.build_extension(2, 2)
    assert params.modulus_poly == (1, 1, 1)  # the unique irreducible quadratic
    t = params.element((0, 1))
    assert (t * t).coeffs == (1, 1)  # t^2 = t + 1


def test_degree_one_extension_is_base_field():
    params = pl.build_extension(5, 1)
    assert params.modulus_poly == (0, 1)
    x = params.scalar(3)
    assert (x * x).coeffs == (4,)


def test_build_extension_modulus_has_no_root():
    params = pl.build_extension(5, 2)
    c0, c1, c2 = params.modulus_poly
    assert c2 == 1
    for c in range(5):
        assert (c0 + c1 * c + c * c) % 5 != 0


def test_build_extension_deterministic():
    a = pl.build_extension(7, 3)
    b = pl.build_extension(7, 3)
    assert a == b


def test_build_extension_cap():
    with pytest.raises(SizeCapError):
        pl.build_extension(3, 40)


def test_field_params_rejects_reducible_modulus():
    with pytest.raises(ValueError):
        FieldParams(5, 2, (4, 0, 1))  # t^2 + 4 = (t-1)(t+1) mod 5


def test_inverse_and_group_order(f25):
    one = f25.one()
    for idx in range(1, f25.order):
        x = element_at(f25, idx)
        assert x * x.inverse() == one
        assert x ** (f25.order - 1) == one


def test_division_by_zero_raises(f25):
    with pytest.raises(ZeroDivisionError):
        f25.one() / f25.zero()
    with pytest.raises(ZeroDivisionError):
        f25.zero() ** (-1)


def test_negative_exponents(f25):
    x = f25.element((2, 3))
    assert x ** (-2) == (x ** 2).inverse()
    assert x ** 0 == f25.one()


def test_field_arith_dispatch(f25):
    x = f25.element((1, 2))
    y = f25.element((3, 1))
    assert field_arith(x, y, "add") == x + y
    assert field_arith(x, y, "sub") == x - y
    assert field_arith(x, y, "mul") == x * y
    assert field_arith(x, y, "div") == x / y
    assert field_arith(x, 5, "pow") == x ** 5
    with pytest.raises(ValueError):
        field_arith(x, y, "xor")


def test_frobenius_fixes_base_field(f25):
    for c in range(5):
        assert pl.frobenius(f25.scalar(c), 1) == f25.scalar(c)


def test_frobenius_examples():
    params = pl.build_extension(2, 2)
    t = params.element((0, 1))
    assert pl.frobenius(t, 1).coeffs == (1, 1)  # t^2 reduced
    for idx in range(params.order):
        x = element_at(params, idx)
        assert pl.frobenius(x, params.k) == x


@settings(max_examples=60, deadline=None)
@given(ix=st.integers(0, 24), iy=st.integers(0, 24), i=st.integers(0, 5))
def test_frobenius_is_multiplicative(ix, iy, i):
    params = pl.build_extension(5, 2)
    x, y = element_at(params, ix), element_at(params, iy)
    assert pl.frobenius(x * y, i) == pl.frobenius(x, i) * pl.frobenius(y, i)


def test_frobenius_is_additive(f25):
    for ix in range(0, 25, 3):
        for iy in range(0, 25, 4):
            x, y = element_at(f25, ix), element_at(f25, iy)
            assert pl.frobenius(x + y, 1) == pl.frobenius(x, 1) + pl.frobenius(y, 1)


def test_mu_r_generator_trivial(f25):
    assert pl.mu_r_generator(f25, 1) == f25.one()


def test_mu_r_generator_order(f25):
    g = pl.mu_r_generator(f25, 3)
    assert g != f25.one()
    assert g ** 3 == f25.one()
    # exact order: no proper power collapses
    assert g ** 1 != f25.one()
    assert g ** 2 != f25.one()
    powers = {(g ** i).coeffs for i in range(3)}
    assert len(powers) == 3


def test_mu_r_generator_divisibility_error(f5):
    with pytest.raises(DivisibilityError):
        pl.mu_r_generator(f5, 3)  # 3 does not divide 5 - 1


def test_field_element_residues():
    x = FieldElement(7, 10)
    assert x.value == 3
    assert (x + 5).value == 1
    assert (x * 4).value == 5
    assert (x / FieldElement(7, 2)).value == (3 * 4) % 7  # 2^-1 = 4 mod 7
    assert (-x).value == 4
    assert (x ** 6).value == 1


def test_field_element_embed(f25):
    x = FieldElement(5, 3)
    assert x.embed(f25) == f25.scalar(3)
    with pytest.raises(ValueError):
        x.embed(pl.build_extension(7, 2))


def test_elements_enumeration_order(f25):
    seq = list(elements(f25))
    assert len(seq) == 25
    assert seq[0] == f25.zero()
    assert seq[1] == f25.one()
    assert seq[5].coeffs == (0, 1)
    assert len({e.coeffs for e in seq}) == 25
