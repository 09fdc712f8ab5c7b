import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lrcmaps.field import (
    GF,
    FieldError,
    FieldMismatchError,
    FieldSpec,
    enumerate_field,
    field_arith,
    is_irreducible,
    nth_roots_of_unity,
    prime_factors,
)
from lrcmaps.poly import UniPoly, univariate_roots

from conftest import SMALL_Q


def test_gf13_cube_root_of_unity():
    F = GF(13)
    w = F(2) ** 4
    assert w == 3
    assert w**3 == 1


def test_gf8_schoolbook_product():
    F = FieldSpec(2, 3, modulus=(1, 1, 0, 1))
    x, x2 = F.from_code(2), F.from_code(4)  # codes are base-p digit vectors
    assert (x * x2).coeffs == (1, 1, 0)  # x + 1


@pytest.mark.parametrize("q", SMALL_Q)
def test_identities(q):
    F = GF(q)
    for a in F.elements():
        assert a * 1 == a
        assert a + 0 == a


@pytest.mark.parametrize("op", ["add", "sub", "mul", "div", "pow", "neg", "inv"])
def test_field_arith_matches_integers_mod_p(op):
    F = GF(13)
    a, b = F(5), F(7)
    expect = {"add": 12, "sub": 11, "mul": 9, "div": 5 * pow(7, -1, 13) % 13, "pow": pow(5, 7, 13),
              "neg": 8, "inv": pow(5, -1, 13)}[op]
    assert field_arith(a, b, op).code == expect


def test_negative_power_is_inverse_power():
    F = GF(9)
    for a in F.elements()[1:]:
        assert a ** -3 == (a.inv()) ** 3


def test_division_by_zero_and_mixed_fields():
    with pytest.raises(ZeroDivisionError):
        GF(7)(3) / GF(7)(0)
    with pytest.raises(FieldMismatchError):
        GF(7)(1) + GF(9)(1)


def test_enumeration_order():
    assert [e.code for e in enumerate_field(GF(3))] == [0, 1, 2]
    for q in (8, 9):
        F = GF(q)
        els = enumerate_field(F)
        assert len({e.code for e in els}) == q
        assert els[0] == 0
        assert [e.code for e in els[1:]] == [F.pow(F.primitive_code, k) for k in range(q - 1)]
        assert [F.index_of(e.code) for e in els] == list(range(q))


def test_roots_of_unity():
    assert sorted(z.code for z in nth_roots_of_unity(GF(13), 3)) == [1, 3, 9]
    assert [z.code for z in nth_roots_of_unity(GF(9), 1)] == [1]
    assert sorted(z.code for z in nth_roots_of_unity(GF(7), 6)) == [1, 2, 3, 4, 5, 6]
    with pytest.raises(FieldError):
        nth_roots_of_unity(GF(13), 5)


def test_root_extraction_examples():
    G = GF(13)
    assert sorted(r.code for r in univariate_roots(UniPoly(G, [-8, 0, 0, 1]))) == [2, 5, 6]
    for q in (4, 9, 16):
        F = GF(q)
        xq = UniPoly.monomial(F, q) - UniPoly.x(F)
        assert sorted(r.code for r in univariate_roots(xq)) == list(range(q))


def test_hermitian_fibre_roots_sum_to_zero():
    F = GF(9)
    for a in F.elements():
        c = a**4
        f = UniPoly(F, [-c, 1, 0, 1])  # y^3 + y - a^4
        roots = univariate_roots(f)
        assert len(roots) == 3
        assert sum(roots, F.zero) == 0


@pytest.mark.parametrize("q", SMALL_Q)
def test_primitive_has_full_order(q):
    F = GF(q)
    g = F.primitive
    assert g ** (q - 1) == 1
    for p in prime_factors(q - 1):
        assert g ** ((q - 1) // p) != 1


def test_modulus_validation():
    assert is_irreducible([1, 1, 0, 1], 2)
    assert not is_irreducible([1, 0, 1], 2)  # x^2 + 1 = (x + 1)^2
    with pytest.raises(FieldError):
        FieldSpec(2, 2, modulus=(1, 0, 1))
    with pytest.raises(FieldError):
        FieldSpec(6)


@pytest.mark.parametrize("q", (4, 8, 9, 16, 25, 27, 49, 64, 81, 125))
def test_builtin_moduli_irreducible(q):
    F = GF(q)
    assert is_irreducible(F.modulus, F.p)


@pytest.mark.parametrize("q", SMALL_Q)
@given(data=st.data())
def test_group_laws(q, data):
    F = GF(q)
    a = F.from_code(data.draw(st.integers(1, q - 1)))
    i = data.draw(st.integers(0, 2 * (q - 1)))
    j = data.draw(st.integers(0, 2 * (q - 1)))
    assert a * a.inv() == 1
    assert (a**i) * (a**j) == a ** (i + j)


@pytest.mark.parametrize("q", SMALL_Q)
def test_frobenius_additive(q, rng):
    F = GF(q)
    a, b = rng.integers(0, q, 200), rng.integers(0, q, 200)
    lhs = F.vpow(F.vadd(a, b), F.p)
    rhs = F.vadd(F.vpow(a, F.p), F.vpow(b, F.p))
    assert np.array_equal(lhs, rhs)


def test_tables_agree_with_scalar_ops():
    F = GF(16)
    for a, b in itertools.product(range(16), repeat=2):
        assert F.add_table[a, b] == F.add(a, b)
        assert F.mul_table[a, b] == F.mul(a, b)


def test_spec_round_trip():
    F = GF(25)
    G = FieldSpec.from_json(F.to_json())
    assert G == F
    assert np.array_equal(G.element_codes(), F.element_codes())
