"""Exact integer/rational linear algebra helpers.

Dense matrices on the exact path are stored as integer numpy arrays together
with one common denominator.  Entries stay ``int64`` while an overflow bound
allows it and fall back to Python integers (``dtype=object``) otherwise, so
every result is exact regardless of coefficient growth.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

_INT64_SAFE = 2**62


def lcm_denominator(values: Iterable[Fraction]) -> int:
    den = 1
    for v in values:
        den = math.lcm(den, v.denominator)
    return den


def _max_abs(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    if arr.dtype == object:
        return max(abs(int(v)) for v in arr.flat)
    return int(np.abs(arr).max())


def int_array(values) -> np.ndarray:
    """Integer array, ``int64`` when every entry fits comfortably, else object."""
    arr = np.array(values, dtype=object)
    if arr.size == 0 or _max_abs(arr) < _INT64_SAFE:
        return arr.astype(np.int64)
    return arr


def as_object(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == object:
        return arr
    return arr.astype(object)


def int_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of two integer arrays (int64 or object)."""
    inner = a.shape[-1]
    if a.dtype != object and b.dtype != object:
        bound = _max_abs(a) * _max_abs(b) * max(inner, 1)
        if bound < _INT64_SAFE:
            return a @ b
    out = as_object(a) @ as_object(b)
    return int_array(out) if out.ndim else out


def int_combine(a: np.ndarray, b: np.ndarray, ca: int, cb: int) -> np.ndarray:
    """Exact ``ca*a + cb*b`` for integer arrays."""
    if a.dtype != object and b.dtype != object:
        bound = _max_abs(a) * abs(ca) + _max_abs(b) * abs(cb)
        if bound < _INT64_SAFE:
            return ca * a + cb * b
    return int_array(as_object(a) * ca + as_object(b) * cb)


def reduce_fraction(num: np.ndarray, den: int) -> tuple[np.ndarray, int]:
    """Divide numerator array and denominator by their common gcd."""
    g = den
    for v in num.flat:
        if g == 1:
            break
        g = math.gcd(g, int(v))
    if g > 1:
        num = int_array(as_object(num) // g)
        den //= g
    return num, den


def to_fraction_rows(num: np.ndarray, den: int) -> list[list[Fraction]]:
    return [[Fraction(int(v), den) for v in row] for row in num]


# -- fraction-free elimination ------------------------------------------------

def bareiss_echelon(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int], int]:
    """Fraction-free (Bareiss) row reduction of an integer matrix.

    Returns the echelon form, the pivot columns and the signed determinant
    factor of the row swaps (``+1``/``-1``).  All intermediate values are
    exact integers; each division in the update step is exact.
    """
    m = [list(map(int, r)) for r in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    pivots: list[int] = []
    swap_sign = 1
    prev = 1
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        p = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
            swap_sign = -swap_sign
        piv = m[r][c]
        row_r = m[r]
        for i in range(r + 1, n_rows):
            row_i = m[i]
            f = row_i[c]
            if f == 0:
                # Bareiss step with a zero leading entry still rescales the row.
                if piv != prev:
                    for j in range(c + 1, n_cols):
                        row_i[j] = row_i[j] * piv // prev
                continue
            for j in range(c + 1, n_cols):
                row_i[j] = (row_i[j] * piv - f * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return m, pivots, swap_sign


def exact_rank(rows: Sequence[Sequence[int]]) -> int:
    return len(bareiss_echelon(rows)[1])


def exact_det(rows: Sequence[Sequence[int]]) -> int:
    n = len(rows)
    if n == 0:
        return 1
    ech, piv, sign = bareiss_echelon(rows)
    if len(piv) < n:
        return 0
    return sign * ech[n - 1][n - 1]


def exact_nullspace(rows: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Basis of the right null space of an integer matrix, as rational vectors.

    Each basis vector has a 1 in one free column and 0 in the other free
    columns (reduced-echelon normalization).
    """
    if not rows:
        return []
    n_cols = len(rows[0])
    ech, pivots, _ = bareiss_echelon(rows)
    pivot_set = set(pivots)
    free = [c for c in range(n_cols) if c not in pivot_set]
    basis = []
    for f in free:
        x = [Fraction(0)] * n_cols
        x[f] = Fraction(1)
        for k in range(len(pivots) - 1, -1, -1):
            pc = pivots[k]
            row = ech[k]
            s = sum((row[j] * x[j] for j in range(pc + 1, n_cols) if row[j] and x[j]), Fraction(0))
            x[pc] = -s / row[pc]
        basis.append(x)
    return basis


def fraction_matrix_to_int(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], int]:
    den = lcm_denominator(v for r in rows for v in r)
    return [[int(v * den) for v in r] for r in rows], den


def exact_inverse(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]] | None:
    """Gauss-Jordan inverse over the rationals; ``None`` when singular."""
    n = len(rows)
    aug = [list(map(Fraction, r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if p is None:
            return None
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [vi - f * vc for vi, vc in zip(aug[i], aug[c])]
    return [r[n:] for r in aug]


# -- floating helpers ---------------------------------------------------------

def float_nullspace(m: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Orthonormal kernel basis (columns) from the right singular vectors of ``m``.

    A direction is kept when its singular value is at most
    ``tol * max(1, ||m||_2)``.
    """
    if m.size == 0:
        return np.eye(m.shape[1])
    _, s, vt = np.linalg.svd(m)
    scale = max(1.0, float(s[0]))
    full = np.zeros(vt.shape[0])
    full[: s.size] = s
    return vt[full <= tol * scale].T.copy()


def gram_schmidt(vectors: Iterable[np.ndarray], drop_tol: float = 1e-8) -> np.ndarray:
    """Modified Gram-Schmidt with one re-orthogonalization pass.

    Vectors whose remaining norm falls below ``drop_tol`` are skipped.
    Returns the orthonormal vectors as columns.
    """
    basis: list[np.ndarray] = []
    for v in vectors:
        w = np.array(v, dtype=float)
        for _ in range(2):
            for q in basis:
                w -= (q @ w) * q
        nrm = np.linalg.norm(w)
        if nrm > drop_tol:
            basis.append(w / nrm)
    if not basis:
        return np.zeros((0, 0))
    return np.column_stack(basis)
