from fractions import Fraction

import numpy as np
import pytest

import oracle
from cdzero import (
    CDElement, PreconditionError, anticommutation_check, assoc_operator, block_decomposition,
    invertibility_test, l_squared_equals_r_squared_check, left_matrix, multiply, o2_action, parse_element,
    right_matrix,
)
from cdzero.operators import (
    OperatorMatrix, Reason, assemble_blocks, det_inequality, is_alternative_matrix, l_squared,
)
from cdzero.sampling import random_circle_point, random_element, random_pure


@pytest.mark.parametrize("level", [2, 3, 4])
def test_left_matrix_matches_oracle(rng, level):
    a = random_element(rng, level)
    lm = left_matrix(a)
    assert lm.rows() == oracle.left_matrix(list(a.coords))


def test_left_and_right_matrices_apply_products(rng):
    a, x = random_element(rng, 4), random_element(rng, 4)
    assert left_matrix(a).apply(x) == multiply(a, x)
    assert right_matrix(x).apply(a) == multiply(a, x)


def test_left_matrix_of_pure_element_is_skew(rng):
    a = random_pure(rng, 5)
    assert left_matrix(a).is_skew()
    assert right_matrix(a).is_skew()


def test_associator_operator(rng):
    a, b, x = (random_pure(rng, 4) for _ in range(3))
    got = assoc_operator(a, b).apply(x)
    want = multiply(multiply(a, x), b) - multiply(a, multiply(x, b))
    assert got == want


def test_block_decomposition_reassembles_squared_left_multiplication(rng):
    for n in (3, 4):
        a, b = random_pure(rng, n), random_pure(rng, n)
        big_a, s = block_decomposition(a, b)
        assert big_a.is_symmetric() and s.is_skew()
        assert l_squared(CDElement.pair(a, b)).equals(assemble_blocks(big_a, s))


def test_block_decomposition_needs_pure_halves():
    with pytest.raises(PreconditionError):
        block_decomposition(parse_element("1 + e1", 3), parse_element("e2", 3))


def test_left_square_equals_right_square(rng):
    for n in (3, 4, 5):
        assert l_squared_equals_r_squared_check(random_pure(rng, n))


def test_anticommutation_with_symplectic_unit(rng):
    from cdzero.sampling import random_doubly_pure
    for n in (3, 4, 5):
        assert anticommutation_check(random_doubly_pure(rng, n))


def test_octonion_units_are_alternative_sedenion_pair_is_not():
    assert is_alternative_matrix(parse_element("e1 + e2", 3))
    assert is_alternative_matrix(parse_element("e5", 4))
    assert not is_alternative_matrix(parse_element("e1 + e10", 4))


def test_invertibility_singular_pair_has_witness():
    v = invertibility_test(parse_element("e1", 3), parse_element("e2", 3))
    assert not v.invertible and v.reason is Reason.KERNEL_VECTOR
    alpha = parse_element("e1 + e10", 4)
    assert multiply(alpha, v.witness).is_zero()


def test_invertibility_generic_pair_is_invertible():
    v = invertibility_test(parse_element("e1", 3), parse_element("e1", 3))
    assert v.invertible
    v = invertibility_test(parse_element("e1 + 2e3", 3), parse_element("e2 - e5", 3))
    assert v.invertible == (left_matrix(parse_element("e1 + 2e3 + e10 - e13", 4)).rank() == 16)


def test_invertibility_float_path_agrees(rng):
    for _ in range(5):
        a, b = random_pure(rng, 3), random_pure(rng, 3)
        exact = invertibility_test(a, b)
        approx = invertibility_test(a.to_float(), b.to_float())
        assert exact.invertible == approx.invertible


def test_circle_action_preserves_squared_left_multiplication(rng):
    a, b = random_pure(rng, 4), random_pure(rng, 4)
    r, s = random_circle_point(rng)
    assert r * r + s * s == 1
    o2_action(a, b, r, s, verify=True)
    o2_action(a, b, r, s, reflect=True, verify=True)
    with pytest.raises(PreconditionError):
        o2_action(a, b, Fraction(1), Fraction(1))


def test_det_inequality_returns_finite_pair(rng):
    lhs, rhs = det_inequality(random_pure(rng, 3), random_pure(rng, 3))
    assert np.isfinite(lhs) and np.isfinite(rhs)


def test_operator_json_round_trip(rng):
    m = left_matrix(random_element(rng, 3))
    assert OperatorMatrix.from_json(m.to_json()).equals(m)


def test_operator_arithmetic():
    ident = OperatorMatrix.identity(4)
    l = left_matrix(parse_element("e1", 2))
    assert (l @ l).equals(-ident)
    assert (l + l).equals(l.scale(2))
    assert (l - l).is_zero()
    assert l.T.equals(-l)
    assert ident.det() == 1 and ident.rank() == 4
