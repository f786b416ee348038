import math
import warnings

import numpy as np
import pytest

import oracle
from cdzero import (
    PreconditionError, eigenspace, is_alternative, is_normed, kernel_dimension_bound_check, local_norm_check,
    multiply, parse_element, spectrum, tilde,
)
from cdzero.sampling import random_doubly_pure


def full_operator_eigenvalues(a):
    """Eigenvalues of -L_u^2 on all of A_n, from the oracle's left matrix and numpy."""
    lm = np.array(oracle.left_matrix(list(a.coords)), dtype=float)
    lm /= math.sqrt(sum(float(c) ** 2 for c in a.coords))
    return np.linalg.eigvalsh(-(lm @ lm))


def expand(report):
    return np.sort(np.concatenate([np.full(c.multiplicity, c.value) for c in report.clusters]))


def test_worked_pair_has_values_zero_one_two():
    r = spectrum(parse_element("e1 + e10", 4))
    assert r.lambdas == pytest.approx((0.0, 1.0, 2.0), abs=1e-10)
    assert [c.multiplicity for c in r.clusters] == [4, 4, 4]
    assert r.contains_zero and r.contains_one and r.exact_checked
    assert r.max_residual <= 1e-10


def test_octonion_unit_has_the_single_value_one():
    r = spectrum(parse_element("e1", 3))
    assert r.lambdas == pytest.approx((1.0,))
    assert not r.contains_zero


def test_basis_element_is_all_ones():
    assert spectrum(parse_element("e5", 4)).lambdas == pytest.approx((1.0, 1.0, 1.0))


@pytest.mark.parametrize("level", [3, 4, 5])
def test_spectrum_matches_full_operator_eigenvalues(rng, level):
    for _ in range(4):
        a = random_doubly_pure(rng, level)
        r = spectrum(a)
        want = full_operator_eigenvalues(a)
        got = np.sort(np.concatenate([expand(r), np.ones(4)]))
        np.testing.assert_allclose(got, want, atol=1e-8)


def test_scale_does_not_change_the_spectrum(rng):
    a = random_doubly_pure(rng, 4)
    np.testing.assert_allclose(spectrum(a * 5).lambdas, spectrum(a).lambdas, atol=1e-10)
    np.testing.assert_allclose(spectrum(tilde(a)).lambdas, spectrum(a).lambdas, atol=1e-10)


@pytest.mark.parametrize("text,level", [("e8", 4), ("e1 + e8", 4), ("0", 4), ("e1", 2), ("1 + e1", 3)])
def test_spectrum_rejects_non_doubly_pure(text, level):
    with pytest.raises(PreconditionError):
        spectrum(parse_element(text, level))


def test_eigenspace_for_value_two_contains_the_mirror_vector():
    a = parse_element("e1 + e10", 4)
    basis = eigenspace(a, 2.0)
    assert basis.dim == 4 and basis.diagnostic is None
    assert basis.contains(parse_element("e7 - e12", 4))
    assert basis.quadruple_residual < 1e-9
    # a(ax) = -|a|^2 * 2 x
    x = parse_element("e7 - e12", 4)
    assert multiply(a, multiply(a, x)) == x * -4


def test_eigenspace_of_zero_is_the_annihilator():
    a = parse_element("e1 + e10", 4)
    basis = eigenspace(a, 0.0)
    assert basis.dim == 4
    assert basis.contains(parse_element("e4 - e15", 4).to_float()) or basis.contains(
        parse_element("e4 + e15", 4).to_float())
    for v in basis.vectors:
        assert np.abs(multiply(a.to_float(), v).to_numpy()).max() < 1e-9


def test_eigenspace_of_absent_value_is_empty_with_diagnostic():
    basis = eigenspace(parse_element("e1", 3), 3.0)
    assert basis.dim == 0 and "not in the spectrum" in basis.diagnostic


def test_alternative_iff_normed(rng):
    for text, level, want in [("e1", 3, True), ("e1 + e2", 3, True), ("e5", 4, True), ("e1 + e10", 4, False)]:
        a = parse_element(text, level)
        assert is_alternative(a) == want == is_normed(a)
    for _ in range(5):
        a = random_doubly_pure(rng, 4)
        assert is_alternative(a) == is_normed(a)


def test_local_norm_ratio_equals_spectral_value():
    a = parse_element("e1 + e10", 4)
    assert local_norm_check(a, parse_element("e7 - e12", 4)) == (False, 2)
    assert local_norm_check(a, parse_element("e4 - e15", 4))[1] in (0, 2)
    ok, value = local_norm_check(a, parse_element("e3", 4))
    assert value == 1 and ok


def test_kernel_dimension_of_worked_pair():
    assert kernel_dimension_bound_check(parse_element("e1 + e10", 4)) >= 8


def test_kernel_dimension_warns_below_eight(rng):
    found = False
    for _ in range(5):
        a = random_doubly_pure(rng, 5)
        with warnings.catch_warnings(record=True) as w:
            warnings.simplefilter("always")
            dim = kernel_dimension_bound_check(a)
        if dim < 8:
            found = True
            assert any(issubclass(x.category, RuntimeWarning) for x in w)
    assert found


def test_report_json_shape():
    obj = spectrum(parse_element("e1 + e10", 4)).to_json()
    assert obj["schema_version"] == 1
    assert set(obj) >= {"level", "lambdas", "clusters", "contains_zero", "contains_one", "tolerance"}
