from fractions import Fraction

import numpy as np
import pytest

import oracle
from cdzero import linalg
from cdzero.jacobi import jacobi_eigh, off_norm


def test_bareiss_rank_and_det_on_small_matrices():
    m = [[2, 4, 1], [1, 2, 3], [3, 6, 4]]
    assert linalg.exact_rank(m) == 2
    assert linalg.exact_det(m) == 0
    assert linalg.exact_det([[2, 1], [1, 3]]) == 5
    assert linalg.exact_det([[0, 1], [1, 0]]) == -1


def test_rank_matches_plain_row_reduction(rng):
    for _ in range(20):
        rows = rng.integers(-3, 4, size=(6, 6))
        rows[3] = rows[0] - 2 * rows[1]
        ints = rows.tolist()
        assert linalg.exact_rank(ints) == oracle.rank([[Fraction(v) for v in r] for r in ints])


def test_det_matches_numpy(rng):
    for _ in range(20):
        m = rng.integers(-5, 6, size=(5, 5))
        assert linalg.exact_det(m.tolist()) == round(np.linalg.det(m))


def test_exact_nullspace_vectors_are_annihilated(rng):
    rows = rng.integers(-4, 5, size=(4, 7)).tolist()
    ns = linalg.exact_nullspace(rows)
    assert len(ns) == 7 - linalg.exact_rank(rows)
    for v in ns:
        assert all(sum(Fraction(r) * x for r, x in zip(row, v)) == 0 for row in rows)


def test_exact_inverse():
    m = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    assert linalg.exact_inverse(m) == [[1, -1], [-1, 2]]
    assert linalg.exact_inverse([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]) is None


def test_float_nullspace_on_ill_conditioned_matrix():
    u, _ = np.linalg.qr(np.random.default_rng(1).normal(size=(8, 8)))
    m = u @ np.diag([1e3, 1e2, 10, 1, 1e-3, 0, 0, 0]) @ u.T
    ns = linalg.float_nullspace(m)
    assert ns.shape == (8, 3)
    assert np.abs(m @ ns).max() < 1e-9


def test_gram_schmidt_drops_dependent_vectors():
    q = linalg.gram_schmidt([np.array([1.0, 0, 0]), np.array([2.0, 0, 0]), np.array([1.0, 1, 0])])
    assert q.shape[0] == 2 or q.shape[1] == 2


@pytest.mark.parametrize("m", [1, 2, 5, 16, 33])
def test_jacobi_matches_numpy(m):
    r = np.random.default_rng(m)
    a = r.normal(size=(m, m))
    a = a + a.T
    w, v = jacobi_eigh(a)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(a), atol=1e-10)
    np.testing.assert_allclose(v.T @ v, np.eye(m), atol=1e-10)
    np.testing.assert_allclose(a @ v, v * w, atol=1e-9)


def test_jacobi_handles_repeated_eigenvalues():
    q, _ = np.linalg.qr(np.random.default_rng(3).normal(size=(12, 12)))
    d = np.repeat([0.0, 1.0, 2.0], 4)
    a = q @ np.diag(d) @ q.T
    w, _ = jacobi_eigh(a)
    np.testing.assert_allclose(w, d, atol=1e-12)
    assert off_norm(np.diag(d)) == 0
