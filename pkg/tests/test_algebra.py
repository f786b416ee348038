from fractions import Fraction

import numpy as np
import pytest

import oracle
from cdzero import (
    CDElement, LevelMismatchError, ParseError, PreconditionError, associator, conjugate, format_element, hat,
    inner, is_doubly_pure, is_pure, multiply, norm, norm_sq, parse_element, purity_class,
    quaternion_subalgebra_basis, tilde, trace,
)
from cdzero.algebra import Purity, sign_table
from cdzero.sampling import random_element


def as_list(x):
    return list(x.coords)


@pytest.mark.parametrize("level", [0, 1, 2, 3, 4])
def test_full_basis_table_matches_recursive_oracle(level):
    dim = 1 << level
    for i in range(dim):
        for j in range(dim):
            got = multiply(CDElement.basis(level, i), CDElement.basis(level, j))
            assert as_list(got) == oracle.mul(oracle.basis(dim, i), oracle.basis(dim, j))


def test_sign_table_is_xor_indexed():
    s = sign_table(4)
    for i in range(16):
        for j in range(16):
            prod = multiply(CDElement.basis(4, i), CDElement.basis(4, j))
            assert prod == CDElement.basis(4, i ^ j, int(s[i, j]))


@pytest.mark.parametrize("level", [3, 4, 5, 6])
def test_random_products_match_oracle(rng, level):
    for _ in range(5):
        a = random_element(rng, level)
        b = random_element(rng, level)
        assert as_list(multiply(a, b)) == oracle.mul(as_list(a), as_list(b))


def test_quaternions_are_associative_and_octonions_are_not(rng):
    for _ in range(10):
        x, y, z = (random_element(rng, 2) for _ in range(3))
        assert associator(x, y, z).is_zero()
    e1, e2, e4 = (CDElement.basis(3, i) for i in (1, 2, 4))
    assert not associator(e1, e2, e4).is_zero()


def test_octonions_are_alternative_but_sedenions_are_not(rng):
    for _ in range(10):
        x, y = random_element(rng, 3), random_element(rng, 3)
        assert associator(x, x, y).is_zero()
    a = parse_element("e1 + e10", 4)
    y = parse_element("e4", 4)
    assert not associator(a, a, y).is_zero()


def test_float_path_agrees_with_exact_path(rng):
    a, b = random_element(rng, 5), random_element(rng, 5)
    exact = multiply(a, b).to_numpy()
    approx = multiply(a.to_float(), b.to_float()).to_numpy()
    np.testing.assert_allclose(approx, exact, atol=1e-10)


def test_unary_maps():
    a = parse_element("2 + e1 - 3 e9", 4)
    assert conjugate(a) == parse_element("2 - e1 + 3 e9", 4)
    assert trace(a) == 4  # a + conj(a)
    # tilde(a1, a2) = (-a2, a1), hat swaps halves
    assert tilde(parse_element("e1 + e10", 4)) == parse_element("-e2 + e9", 4)
    assert hat(parse_element("e1 + e10", 4)) == parse_element("e2 + e9", 4)
    assert tilde(tilde(a)) == -a


def test_tilde_is_right_multiplication_by_symplectic_unit(rng):
    for n in (2, 3, 4, 5):
        a = random_element(rng, n)
        assert multiply(a, CDElement.symplectic_unit(n)) == tilde(a)


def test_norms_and_inner_product():
    a = parse_element("3 e1 + 4 e9", 4)
    assert norm_sq(a) == 25
    assert norm(a) == 5
    assert inner(a, parse_element("e1", 4)) == 3
    assert isinstance(norm(parse_element("e1 + e2", 3)), float)


def test_norm_is_multiplicative_up_to_octonions(rng):
    for _ in range(20):
        x, y = random_element(rng, 3), random_element(rng, 3)
        assert norm_sq(multiply(x, y)) == norm_sq(x) * norm_sq(y)


def test_purity_predicates():
    assert is_pure(parse_element("e1 + e8", 4))
    assert not is_doubly_pure(parse_element("e1 + e8", 4))
    assert is_doubly_pure(parse_element("e1 + e10", 4))
    assert not is_pure(parse_element("1 + e1", 4))
    info = purity_class(parse_element("3 e1 + 4 e8", 4))
    assert info.kind is Purity.PURE


def test_quaternion_subalgebra_is_closed():
    basis = quaternion_subalgebra_basis(parse_element("e1 + e10", 4))
    m = np.array([b.to_numpy() for b in basis])
    for x in basis:
        for y in basis:
            v = multiply(x, y).to_numpy()
            resid = v - m.T @ np.linalg.lstsq(m.T, v, rcond=None)[0]
            assert np.abs(resid).max() < 1e-12


def test_quaternion_subalgebra_needs_doubly_pure():
    with pytest.raises(PreconditionError):
        quaternion_subalgebra_basis(parse_element("e1 + e8", 4))


def test_pair_places_second_argument_in_upper_half():
    a = parse_element("e1", 3)
    assert CDElement.pair(a, parse_element("2 e0", 3)) == parse_element("e1 + 2 e8", 4)
    assert CDElement.pair(a, a).halves() == (a, a)


@pytest.mark.parametrize("text,level,expected", [
    ("e1+e10", None, {1: 1, 10: 1}),
    ("3/5 e1 - 4/5*e8", 4, {1: Fraction(3, 5), 8: Fraction(-4, 5)}),
    ("2e2", 3, {2: 2}),
    ("-e5 + e5", 3, {}),
    ("7", 2, {0: 7}),
])
def test_parse(text, level, expected):
    x = parse_element(text, level)
    assert x.support() == expected


def test_parse_infers_smallest_level():
    assert parse_element("e1 + e10").level == 4
    assert parse_element("e7").level == 3


@pytest.mark.parametrize("text", ["", "e", "e1 +", "x", "e1 e2"])
def test_parse_rejects_garbage(text):
    with pytest.raises(ParseError):
        parse_element(text, 3)


def test_index_beyond_level_is_a_level_mismatch():
    with pytest.raises(LevelMismatchError):
        parse_element("e9", 3)


def test_mixed_levels_are_rejected():
    with pytest.raises(LevelMismatchError):
        multiply(CDElement.basis(3, 1), CDElement.basis(4, 1))


def test_format_round_trip(rng):
    for n in (2, 3, 4):
        x = random_element(rng, n)
        assert parse_element(format_element(x), n) == x
    assert format_element(CDElement.zero(3)) == "0"


def test_json_round_trip(rng):
    x = random_element(rng, 4)
    assert CDElement.from_json(x.to_json()) == x
    y = x.to_float()
    assert CDElement.from_json(y.to_json()) == y


def test_float_coordinate_switches_whole_element():
    x = CDElement(2, (1, Fraction(1, 2), 0.25, 0))
    assert not x.exact
    assert CDElement(2, (1, Fraction(1, 2), 0, 0)).exact
    with pytest.raises(TypeError):
        CDElement(1, (True, 0))
