"""Spectra of doubly pure elements.

For a nonzero doubly pure ``a`` the operator ``-L_u^2`` with ``u = a/|a|`` is
symmetric, preserves the quaternion copy ``H_a`` spanned by
``e_0, a~, a, e~_0`` and its orthogonal complement.  The spectrum of ``a`` is
the list of eigenvalues of ``-L_u^2`` on ``H_a^perp``; every eigenspace has
dimension divisible by four, so each value is listed ``dim/4`` times, for
``2^(n-2) - 1`` values in total.

Spectral values are eigenvalues of ``-L_u^2``, i.e. squared norm ratios:
``x`` in the eigenspace of value ``mu`` satisfies ``|a x| = sqrt(mu) |a| |x|``.
"""
from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg
from .algebra import (
    CDElement, Scalar, is_doubly_pure, is_pure, multiply, norm_sq, quaternion_subalgebra_basis,
    tilde,
)
from .errors import PreconditionError, SpectrumError
from .jacobi import jacobi_eigh
from .operators import SCHEMA_VERSION, OperatorMatrix, is_alternative_matrix, l_squared, left_matrix

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8
TOLERANCE_SWEEP = (1e-6, 1e-7, 1e-8, 1e-9, 1e-10)
NEGATIVE_CLAMP = 1e-10
EXACT_MAX_LEVEL = 4


@dataclass(frozen=True)
class Cluster:
    value: float
    multiplicity: int
    residual: float

    def to_json(self) -> dict:
        return {"lambda": self.value, "multiplicity": self.multiplicity, "residual": self.residual}


@dataclass(frozen=True)
class SpectrumReport:
    level: int
    lambdas: tuple[float, ...]
    clusters: tuple[Cluster, ...]
    contains_zero: bool
    contains_one: bool
    tolerance: float
    exact_checked: bool = False

    @property
    def max_residual(self) -> float:
        return max((c.residual for c in self.clusters), default=0.0)

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "level": self.level,
            "lambdas": list(self.lambdas),
            "clusters": [c.to_json() for c in self.clusters],
            "contains_zero": self.contains_zero,
            "contains_one": self.contains_one,
            "tolerance": self.tolerance,
            "exact_checked": self.exact_checked,
        }


@dataclass(frozen=True)
class EigenspaceBasis:
    value: float
    vectors: tuple[CDElement, ...]
    diagnostic: str | None = None
    quadruple_residual: float = 0.0

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def as_array(self) -> np.ndarray:
        if not self.vectors:
            return np.zeros((0, 0))
        return np.column_stack([v.to_numpy() for v in self.vectors])

    def contains(self, x: CDElement, tol: float = 1e-9) -> bool:
        """Whether ``x`` lies in the span, up to ``tol * |x|``."""
        if not self.vectors:
            return x.is_zero()
        q = self.as_array()
        v = x.to_numpy()
        return bool(np.linalg.norm(v - q @ (q.T @ v)) <= tol * max(1.0, np.linalg.norm(v)))


def _check_spectral_input(a: CDElement) -> None:
    if a.level < 3:
        raise PreconditionError("spectra are defined from level 3 on")
    if a.is_zero() or not is_doubly_pure(a):
        raise PreconditionError(f"{a} is not a nonzero doubly pure element")


def unit_l_squared(a: CDElement) -> np.ndarray:
    """``-L_u^2`` for ``u = a/|a|`` as a float matrix (formed exactly first when possible)."""
    l2 = l_squared(a)
    if l2.exact:
        return -(np.asarray(l2.data, dtype=float) / (l2.denom * float(norm_sq(a))))
    return -l2.to_float() / float(norm_sq(a))


def complement_basis(a: CDElement) -> np.ndarray:
    """Orthonormal basis (columns) of the orthogonal complement of ``H_a``."""
    quad = [q.to_numpy() for q in quaternion_subalgebra_basis(a)]
    ident = np.eye(a.dim)
    q = linalg.gram_schmidt(quad + [ident[i] for i in range(a.dim)])
    comp = q[:, 4:]
    if comp.shape[1] != a.dim - 4:
        raise ArithmeticError("could not complete an orthonormal basis of the complement")
    if np.abs(comp.T @ comp - np.eye(comp.shape[1])).max() > 1e-12:
        raise ArithmeticError("complement basis is not orthonormal to 1e-12")
    return comp


@lru_cache(maxsize=256)
def _decompose(a: CDElement) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    m = unit_l_squared(a)
    q = complement_basis(a)
    restricted = q.T @ m @ q
    w, v = jacobi_eigh(0.5 * (restricted + restricted.T))
    if w.size and w.min() < -NEGATIVE_CLAMP:
        raise SpectrumError(f"negative eigenvalue {w.min():.3e} for a symmetric nonnegative operator")
    w = np.clip(w, 0.0, None)
    vecs = q @ v
    for arr in (w, vecs, m):
        arr.setflags(write=False)
    return w, vecs, m


def cluster_values(values: np.ndarray, tol: float) -> list[list[int]]:
    """Single-linkage grouping of sorted values with gaps ``<= tol``."""
    groups: list[list[int]] = []
    for i, v in enumerate(values):
        if groups and v - values[groups[-1][-1]] <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _exact_membership(a: CDElement) -> tuple[bool, bool]:
    """Exact answers to "0 in Spec" and "1 in Spec" via ranks over Q."""
    la = left_matrix(a)
    zero = la.rank() < a.dim
    shifted = l_squared(a) + OperatorMatrix.identity(a.dim).scale(norm_sq(a))
    one = a.dim - shifted.rank() > 4
    return zero, one


def spectrum(a: CDElement, tol: float = DEFAULT_TOL, exact_max_level: int = EXACT_MAX_LEVEL) -> SpectrumReport:
    """Spectrum of a nonzero doubly pure element of level >= 3.

    Eigenvalues are clustered at ``tol`` (absolute).  If some cluster size is
    not a multiple of four the tolerances of :data:`TOLERANCE_SWEEP` are tried
    in turn; when none yields a consistent clustering :class:`SpectrumError`
    is raised.
    """
    _check_spectral_input(a)
    w, vecs, m = _decompose(a)
    groups = None
    used = tol
    for t in (tol,) + tuple(x for x in TOLERANCE_SWEEP if x != tol):
        g = cluster_values(w, t)
        if all(len(x) % 4 == 0 for x in g):
            groups, used = g, t
            break
    if groups is None:
        sizes = [len(x) for x in cluster_values(w, tol)]
        raise SpectrumError(f"eigenvalue multiplicities {sizes} are not all divisible by 4")
    clusters = []
    lambdas: list[float] = []
    for g in groups:
        value = float(np.mean(w[g]))
        block = vecs[:, g]
        residual = float(np.abs(m @ block - block * value).max())
        clusters.append(Cluster(value, len(g), residual))
        lambdas.extend([value] * (len(g) // 4))
    contains_zero = any(abs(c.value) <= used for c in clusters)
    contains_one = any(abs(c.value - 1.0) <= used for c in clusters)
    exact_checked = False
    if a.exact and a.level <= exact_max_level:
        ez, eo = _exact_membership(a)
        if (ez, eo) != (contains_zero, contains_one):
            log.warning("floating and exact spectral membership disagree for %s: float=%s exact=%s",
                        a, (contains_zero, contains_one), (ez, eo))
        contains_zero, contains_one, exact_checked = ez, eo, True
    return SpectrumReport(a.level, tuple(lambdas), tuple(clusters), contains_zero, contains_one,
                          used, exact_checked)


def _quadruple(u: CDElement, x: CDElement, value: float) -> list[CDElement]:
    if value <= 0:
        return [x, tilde(x)]
    lam = math.sqrt(value)
    ux = multiply(u, x)
    return [x, ux * (-1 / lam), tilde(ux) * (-1 / lam), tilde(x)]


def eigenspace(a: CDElement, value: float, tol: float = DEFAULT_TOL) -> EigenspaceBasis:
    """Orthonormal basis of the eigenspace of ``-L_u^2`` on ``H_a^perp`` for a spectral value.

    A value outside the spectrum yields an empty basis with a diagnostic.
    For each basis vector ``x`` the quadruple ``x, -(u x)/l, -tilde(u x)/l,
    tilde(x)`` (``l = sqrt(value)``) is checked to be orthogonal and to stay
    in the eigenspace; the worst deviation is stored as ``quadruple_residual``.
    """
    report = spectrum(a, tol)
    match = [c for c in report.clusters if abs(c.value - value) <= max(tol, report.tolerance)]
    if not match:
        return EigenspaceBasis(value, (), f"{value} is not in the spectrum (values {report.lambdas})")
    target = match[0].value
    w, vecs, _ = _decompose(a)
    idx = [i for i, x in enumerate(w) if abs(x - target) <= max(tol, report.tolerance)]
    vectors = tuple(CDElement(a.level, tuple(vecs[:, i])) for i in idx)
    basis = EigenspaceBasis(target, vectors)
    q = basis.as_array()
    u = a.to_float() / math.sqrt(float(norm_sq(a)))
    worst = 0.0
    for x in vectors:
        quad = np.column_stack([y.to_numpy() for y in _quadruple(u, x, target)])
        gram = quad.T @ quad
        worst = max(worst, float(np.abs(gram - np.eye(gram.shape[0])).max()))
        worst = max(worst, float(np.abs(quad - q @ (q.T @ quad)).max()))
    if len(vectors) % 4:
        raise SpectrumError(f"eigenspace of {target} has dimension {len(vectors)}, not divisible by 4")
    return EigenspaceBasis(target, vectors, None, worst)


def is_alternative(a: CDElement) -> bool:
    """``a (a x) = a^2 x`` for all ``x``."""
    if a.is_zero() or not is_pure(a):
        raise PreconditionError("need a nonzero pure element")
    return is_alternative_matrix(a)


def is_normed(a: CDElement) -> bool:
    """``|a x| = |a| |x|`` for all ``x``, tested as ``L_a^T L_a = |a|^2 I``."""
    if a.is_zero() or not is_pure(a):
        raise PreconditionError("need a nonzero pure element")
    la = left_matrix(a)
    gram = la.T @ la
    target = OperatorMatrix.identity(a.dim).scale(norm_sq(a))
    return gram.equals(target, 0.0 if a.exact else 1e-10)


def local_norm_check(a: CDElement, x: CDElement, tol: float = 1e-9) -> tuple[bool, Scalar]:
    """``(normed_with, value)`` where ``value = |a x|^2 / (|a|^2 |x|^2)``.

    ``value`` is exact for rational input and equals the spectral value when
    ``x`` lies in an eigenspace.
    """
    if a.is_zero() or not is_doubly_pure(a):
        raise PreconditionError("need a nonzero doubly pure element")
    if x.is_zero():
        raise PreconditionError("x must be nonzero")
    value = norm_sq(multiply(a, x)) / (norm_sq(a) * norm_sq(x))
    if isinstance(value, Fraction):
        return value == 1, value
    return abs(value - 1.0) <= tol, value


def kernel_dimension_bound_check(a: CDElement, tol: float = 1e-8, exact_max_level: int = 6) -> int:
    """Dimension of the kernel of ``x -> a (a x) - (a a) x``.

    Exact rank for rational input up to ``exact_max_level``; floating rank
    otherwise.  A dimension below 8 is reported with a warning.
    """
    if a.is_zero():
        raise PreconditionError("need a nonzero element")
    if a.level < 3:
        raise PreconditionError("need level >= 3")
    if not (a.exact and a.level <= exact_max_level):
        a = a.to_float()
    op = l_squared(a) - left_matrix(multiply(a, a))
    dim = a.dim - op.rank(tol)
    if dim < 8:
        warnings.warn(f"kernel of a(ax) - (aa)x has dimension {dim} < 8 for {a}", RuntimeWarning, stacklevel=2)
    return dim
