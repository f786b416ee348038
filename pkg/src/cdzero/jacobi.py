"""Cyclic Jacobi eigensolver for real symmetric matrices.

Rotations are scheduled in round-robin (tournament) order so that each step
applies ``m/2`` disjoint plane rotations at once; every step is a handful of
vectorized row/column updates.
"""
from __future__ import annotations

import warnings

import numpy as np


def _schedule(m: int) -> list[tuple[np.ndarray, np.ndarray]]:
    players = list(range(m + (m % 2)))
    size = len(players)
    steps = []
    for _ in range(size - 1):
        p, q = [], []
        for i in range(size // 2):
            x, y = players[i], players[size - 1 - i]
            if x < m and y < m:
                p.append(min(x, y))
                q.append(max(x, y))
        steps.append((np.array(p, dtype=int), np.array(q, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return steps


def off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(off * off)))


def jacobi_eigh(a: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a symmetric matrix.

    Iterates full sweeps until the off-diagonal Frobenius norm drops to
    ``tol`` (absolute).  Returns ascending eigenvalues and the matching
    orthonormal eigenvectors as columns.  The input is not modified.
    """
    a = np.array(a, dtype=float, copy=True)
    m = a.shape[0]
    if a.shape != (m, m):
        raise ValueError("square matrix required")
    a = 0.5 * (a + a.T)
    v = np.eye(m)
    if m < 2:
        return np.diag(a).copy(), v
    steps = _schedule(m)
    for _ in range(max_sweeps):
        if off_norm(a) <= tol:
            break
        for p, q in steps:
            apq = a[p, q]
            active = apq != 0.0
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            with np.errstate(over="ignore", divide="ignore"):
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
            big = np.abs(theta) > 1e150
            th = np.where(big, 1.0, theta)
            t = np.where(big, 0.5 / np.where(big, theta, 1.0),
                         np.where(th >= 0, 1.0, -1.0) / (np.abs(th) + np.sqrt(th * th + 1.0)))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rp, rq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * rp - s[:, None] * rq
            a[q, :] = s[:, None] * rp + c[:, None] * rq
            cp, cq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = cp * c - cq * s
            a[:, q] = cp * s + cq * c
            a[p, q] = 0.0
            a[q, p] = 0.0
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = vp * c - vq * s
            v[:, q] = vp * s + vq * c
    else:
        if off_norm(a) > tol:
            warnings.warn(f"Jacobi did not reach off-diagonal norm {tol:g} in {max_sweeps} sweeps",
                          RuntimeWarning, stacklevel=2)
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]
