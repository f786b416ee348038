"""Left/right multiplication operators as dense matrices.

Column ``j`` of :func:`left_matrix` ``(a)`` is ``a e_j``.  Exact matrices keep
integer numerators and a single denominator; floating matrices are plain
``float64`` arrays.  Mixing the two in an operation yields a floating result.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from numbers import Rational

import numpy as np

from . import linalg
from .algebra import (
    MAX_LEVEL, CDElement, Scalar, is_doubly_pure, is_pure, left_array, norm_sq,
    right_array, tilde,
)
from .errors import LevelMismatchError, PreconditionError

SCHEMA_VERSION = 1


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Square matrix of an operator on ``A_n``.

    ``denom`` is ``None`` for floating matrices; otherwise the entries are
    ``data / denom`` with ``data`` an integer array.
    """

    data: np.ndarray
    denom: int | None = 1
    tag: str = ""

    def __post_init__(self):
        if self.data.ndim != 2 or self.data.shape[0] != self.data.shape[1]:
            raise ValueError("operator matrices are square")
        self.data.setflags(write=False)

    # -- construction ------------------------------------------------------
    @classmethod
    def identity(cls, dim: int, tag: str = "I") -> "OperatorMatrix":
        return cls(np.eye(dim, dtype=np.int64), 1, tag)

    @classmethod
    def from_fractions(cls, rows, tag: str = "") -> "OperatorMatrix":
        ints, den = linalg.fraction_matrix_to_int([[Fraction(v) for v in r] for r in rows])
        return cls(linalg.int_array(ints), den, tag)

    @classmethod
    def block(cls, a: "OperatorMatrix", b: "OperatorMatrix", c: "OperatorMatrix",
              d: "OperatorMatrix", tag: str = "block") -> "OperatorMatrix":
        """``((a, b), (c, d))``."""
        mats = [a, b, c, d]
        if all(m.exact for m in mats):
            den = math.lcm(*(m.denom for m in mats))
            parts = [m._rescaled(den) for m in mats]
            data = np.block([[parts[0], parts[1]], [parts[2], parts[3]]])
            return cls(linalg.int_array(data) if data.dtype == object else data, den, tag)
        f = [m.to_float() for m in mats]
        return cls(np.block([[f[0], f[1]], [f[2], f[3]]]), None, tag)

    # -- basic views ---------------------------------------------------------
    @property
    def exact(self) -> bool:
        return self.denom is not None

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def to_float(self) -> np.ndarray:
        if not self.exact:
            return np.asarray(self.data, dtype=float)
        return np.asarray(self.data, dtype=float) / self.denom

    def entry(self, i: int, j: int) -> Scalar:
        if self.exact:
            return Fraction(int(self.data[i, j]), self.denom)
        return float(self.data[i, j])

    def rows(self) -> list[list[Scalar]]:
        if self.exact:
            return linalg.to_fraction_rows(self.data, self.denom)
        return self.data.tolist()

    def _rescaled(self, den: int) -> np.ndarray:
        f = den // self.denom
        return self.data if f == 1 else linalg.int_combine(self.data, self.data, f, 0)

    def retag(self, tag: str) -> "OperatorMatrix":
        return OperatorMatrix(self.data, self.denom, tag)

    # -- algebra -------------------------------------------------------------
    def _check(self, other: "OperatorMatrix"):
        if other.dim != self.dim:
            raise LevelMismatchError(f"dimension mismatch {self.dim} vs {other.dim}")

    def __matmul__(self, other):
        if isinstance(other, CDElement):
            return self.apply(other)
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        self._check(other)
        tag = f"{self.tag}*{other.tag}" if self.tag and other.tag else ""
        if self.exact and other.exact:
            return OperatorMatrix(linalg.int_matmul(self.data, other.data), self.denom * other.denom, tag)
        return OperatorMatrix(self.to_float() @ other.to_float(), None, tag)

    def _lincomb(self, other: "OperatorMatrix", sign: int, tag: str) -> "OperatorMatrix":
        self._check(other)
        if self.exact and other.exact:
            den = math.lcm(self.denom, other.denom)
            data = linalg.int_combine(self.data, other.data, den // self.denom, sign * (den // other.denom))
            return OperatorMatrix(data, den, tag)
        return OperatorMatrix(self.to_float() + sign * other.to_float(), None, tag)

    def __add__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self._lincomb(other, 1, "composite")

    def __sub__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self._lincomb(other, -1, "composite")

    def __neg__(self):
        if self.exact:
            return OperatorMatrix(linalg.int_combine(self.data, self.data, -1, 0), self.denom, self.tag)
        return OperatorMatrix(-self.data, None, self.tag)

    def scale(self, r: Scalar) -> "OperatorMatrix":
        if self.exact and isinstance(r, Rational):
            r = Fraction(r)
            data = linalg.int_combine(self.data, self.data, r.numerator, 0)
            return OperatorMatrix(data, self.denom * r.denominator, self.tag)
        return OperatorMatrix(self.to_float() * float(r), None, self.tag)

    @property
    def T(self) -> "OperatorMatrix":
        return OperatorMatrix(np.ascontiguousarray(self.data.T), self.denom, f"{self.tag}^T" if self.tag else "")

    def apply(self, x: CDElement) -> CDElement:
        if x.dim != self.dim:
            raise LevelMismatchError("operator and element dimensions differ")
        if self.exact and x.exact:
            num, den = x.scaled_ints()
            out = linalg.int_matmul(self.data, num)
            d = self.denom * den
            return CDElement(x.level, tuple(Fraction(int(v), d) for v in out))
        return CDElement(x.level, tuple(self.to_float() @ x.to_numpy()))

    # -- predicates ------------------------------------------------------------
    def is_zero(self, tol: float = 0.0) -> bool:
        if self.exact:
            return not self.data.any()
        return bool(np.abs(self.data).max(initial=0.0) <= tol)

    def equals(self, other: "OperatorMatrix", tol: float = 0.0) -> bool:
        """Entrywise equality: exact when both sides are exact, else within ``tol``."""
        if other.dim != self.dim:
            return False
        return (self - other).is_zero(tol)

    def is_skew(self, tol: float = 0.0) -> bool:
        return (self + self.T).is_zero(tol)

    def is_symmetric(self, tol: float = 0.0) -> bool:
        return (self - self.T).is_zero(tol)

    # -- linear algebra --------------------------------------------------------
    def rank(self, tol: float = 1e-9) -> int:
        if self.exact:
            return linalg.exact_rank(self.data.tolist())
        return self.dim - linalg.float_nullspace(self.to_float(), tol).shape[1]

    def nullspace(self, tol: float = 1e-9) -> list[CDElement]:
        level = self.dim.bit_length() - 1
        if self.exact:
            return [CDElement(level, v) for v in linalg.exact_nullspace(self.data.tolist())]
        ker = linalg.float_nullspace(self.to_float(), tol)
        return [CDElement(level, tuple(ker[:, k])) for k in range(ker.shape[1])]

    def det(self) -> Scalar:
        if self.exact:
            return Fraction(linalg.exact_det(self.data.tolist()), self.denom ** self.dim)
        return float(np.linalg.det(self.to_float()))

    # -- serialization ---------------------------------------------------------
    def to_json(self) -> dict:
        if self.exact:
            entries = [[str(v) for v in row] for row in self.rows()]
        else:
            entries = self.data.tolist()
        return {"schema_version": SCHEMA_VERSION, "tag": self.tag, "dim": self.dim,
                "exact": self.exact, "entries": entries}

    @classmethod
    def from_json(cls, obj: dict) -> "OperatorMatrix":
        if obj["exact"]:
            return cls.from_fractions([[Fraction(v) for v in r] for r in obj["entries"]], obj.get("tag", ""))
        return cls(np.array(obj["entries"], dtype=float), None, obj.get("tag", ""))

    def to_text(self) -> str:
        """Plain whitespace-aligned grid, one row per line."""
        cells = [[str(v) for v in row] for row in self.rows()]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)

    def __repr__(self) -> str:
        kind = "exact" if self.exact else "float"
        return f"OperatorMatrix(dim={self.dim}, {kind}, tag={self.tag!r})"


def _warn_cost(level: int) -> None:
    if level > MAX_LEVEL:
        warnings.warn(f"materializing {1 << level}x{1 << level} matrices above the default level cap",
                      RuntimeWarning, stacklevel=3)


def left_matrix(a: CDElement) -> OperatorMatrix:
    _warn_cost(a.level)
    data, den = left_array(a)
    return OperatorMatrix(data, den, "L")


def right_matrix(b: CDElement) -> OperatorMatrix:
    _warn_cost(b.level)
    data, den = right_array(b)
    return OperatorMatrix(data, den, "R")


def l_squared(a: CDElement) -> OperatorMatrix:
    la = left_matrix(a)
    return (la @ la).retag("L^2")


def _require_pure(*elems: CDElement) -> None:
    for e in elems:
        if not is_pure(e):
            raise PreconditionError(f"{e} is not pure")


def _require_same_level(a: CDElement, b: CDElement) -> None:
    if a.level != b.level:
        raise LevelMismatchError(f"level mismatch: A_{a.level} vs A_{b.level}")


def assoc_operator(a: CDElement, b: CDElement) -> OperatorMatrix:
    """The associator map ``S(x) = (a x) b - a (x b)`` for pure ``a``, ``b``."""
    _require_same_level(a, b)
    _require_pure(a, b)
    la, rb = left_matrix(a), right_matrix(b)
    return (rb @ la - la @ rb).retag("S")


def block_decomposition(a: CDElement, b: CDElement) -> tuple[OperatorMatrix, OperatorMatrix]:
    """Blocks ``(A, S)`` with ``A = L_a^2 + R_b^2`` such that
    ``L_{(a,b)}^2 = ((A, -S), (S, A))``."""
    _require_same_level(a, b)
    _require_pure(a, b)
    if a.is_zero() or b.is_zero():
        raise PreconditionError("block decomposition needs nonzero a and b")
    la, rb = left_matrix(a), right_matrix(b)
    big_a = (la @ la + rb @ rb).retag("A")
    s = (rb @ la - la @ rb).retag("S")
    return big_a, s


def assemble_blocks(big_a: OperatorMatrix, s: OperatorMatrix) -> OperatorMatrix:
    return OperatorMatrix.block(big_a, -s, s, big_a, "L^2")


def l_squared_equals_r_squared_check(a: CDElement) -> bool:
    """True iff ``L_a^2 == R_a^2``; rejects impure ``a``."""
    _require_pure(a)
    la, ra = left_matrix(a), right_matrix(a)
    return (la @ la).equals(ra @ ra, 1e-10)


def anticommutation_check(a: CDElement) -> bool:
    """``L_a``/``R_a`` anticommute with the symplectic unit's and with ``a~``'s
    multiplication operators (exact on rational input)."""
    if a.level < 1 or not is_doubly_pure(a):
        raise PreconditionError(f"{a} is not doubly pure")
    tol = 0.0 if a.exact else 1e-10
    e0t = CDElement.symplectic_unit(a.level)
    at = tilde(a)
    for make in (left_matrix, right_matrix):
        m = make(a)
        for other in (make(e0t), make(at)):
            if not (m @ other + other @ m).is_zero(tol):
                return False
    return True


class Reason(Enum):
    DET_NONZERO = "DetNonzero"
    KERNEL_VECTOR = "KernelVectorFound"
    SCHUR = "SchurCriterion"


@dataclass(frozen=True)
class InvertibilityVerdict:
    invertible: bool
    reason: Reason
    witness: CDElement | None = None
    det_log_abs: float = float("nan")
    exact: bool = True
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "invertible": self.invertible,
            "reason": self.reason.value,
            "witness": None if self.witness is None else self.witness.to_json(),
            "det_log_abs": self.det_log_abs,
            "exact": self.exact,
        }


def _log_abs(x: Scalar) -> float:
    if x == 0:
        return float("-inf")
    if isinstance(x, Fraction):
        return math.log(abs(x.numerator)) - math.log(x.denominator)
    return math.log(abs(x))


def invertibility_test(a: CDElement, b: CDElement, exact_max_level: int = 4,
                       tol: float = 1e-9) -> InvertibilityVerdict:
    """Decide whether ``L_{(a,b)}`` is invertible for pure nonzero ``a``, ``b``.

    With ``A`` invertible the Schur complement ``A + S A^-1 S`` decides (it is
    singular exactly when -1 is an eigenvalue of ``(A^-1 S)^2``).  Otherwise the
    rank of the full left-multiplication matrix is computed directly.  A
    singular verdict carries a kernel witness.  Pairs of level up to
    ``exact_max_level`` with rational input use exact arithmetic throughout.
    """
    _require_same_level(a, b)
    _require_pure(a, b)
    if a.is_zero() or b.is_zero():
        raise PreconditionError("invertibility test needs nonzero a and b")
    if a.level < 3:
        raise PreconditionError("invertibility test needs level >= 3")
    alpha = CDElement.pair(a, b)
    use_exact = alpha.exact and alpha.level <= exact_max_level
    if not use_exact:
        a, b, alpha = a.to_float(), b.to_float(), alpha.to_float()
    big_a, s = block_decomposition(a, b)
    details: dict = {}
    if use_exact:
        det_a = big_a.det()
        a_invertible = det_a != 0
    else:
        w = np.linalg.eigvalsh(-big_a.to_float())
        a_invertible = bool(w.min() > tol * max(1.0, w.max()))
    if a_invertible:
        if use_exact:
            inv = OperatorMatrix.from_fractions(linalg.exact_inverse(big_a.rows()), "A^-1")
            schur = big_a + s @ inv @ s
            det_schur = schur.det()
            invertible = det_schur != 0
            det_l2 = det_a * det_schur
            det_log = _log_abs(det_l2)
        else:
            fa, fs = big_a.to_float(), s.to_float()
            m = np.linalg.solve(fa, fs)
            mu = np.linalg.eigvals(m @ m)
            dist = float(np.min(np.abs(mu + 1.0))) if mu.size else float("inf")
            details["min_distance_to_minus_one"] = dist
            invertible = dist > 1e-8
            sign_a, log_a = np.linalg.slogdet(fa)
            sign_s, log_s = np.linalg.slogdet(fa + fs @ np.linalg.solve(fa, fs))
            det_log = float(log_a + log_s) if sign_s != 0 else float("-inf")
        if invertible:
            return InvertibilityVerdict(True, Reason.SCHUR, None, det_log / 2, use_exact, details)
    else:
        la = left_matrix(alpha)
        if la.rank(tol) == la.dim:
            det_log = _log_abs(la.det()) if use_exact else float(np.linalg.slogdet(la.to_float())[1])
            return InvertibilityVerdict(True, Reason.DET_NONZERO, None, det_log, use_exact, details)
    kernel = left_matrix(alpha).nullspace(tol)
    if not kernel:
        raise ArithmeticError("singular verdict without a kernel vector; tighten the tolerance")
    witness = kernel[0]
    return InvertibilityVerdict(False, Reason.KERNEL_VECTOR, witness, float("-inf"), use_exact, details)


def o2_action(a: CDElement, b: CDElement, r: Scalar, s: Scalar, reflect: bool = False,
              verify: bool = False) -> tuple[CDElement, CDElement]:
    """Rotate (``(ra - sb, sa + rb)``) or reflect (``(ra + sb, sa - rb)``) a pair.

    ``r^2 + s^2`` must be 1: exactly for rational ``r``, ``s``, else within
    1e-12.  With ``verify=True`` the squared left multiplication of the image
    is compared with that of ``(a, b)`` (rotation) or ``(b, a)`` (reflection).
    """
    _require_same_level(a, b)
    if isinstance(r, Rational) and isinstance(s, Rational):
        if Fraction(r) ** 2 + Fraction(s) ** 2 != 1:
            raise PreconditionError("r^2 + s^2 must equal 1")
    elif abs(float(r) ** 2 + float(s) ** 2 - 1.0) > 1e-12:
        raise PreconditionError("r^2 + s^2 must equal 1 within 1e-12")
    if reflect:
        out = (a * r + b * s, a * s - b * r)
        ref = CDElement.pair(b, a)
    else:
        out = (a * r - b * s, a * s + b * r)
        ref = CDElement.pair(a, b)
    if verify:
        img = CDElement.pair(*out)
        tol = 0.0 if img.exact and ref.exact else 1e-10
        if not l_squared(img).equals(l_squared(ref), tol):
            raise ArithmeticError("squared left multiplication changed under the O(2) action")
    return out


def det_inequality(a: CDElement, b: CDElement) -> tuple[float, float]:
    """``(det(-A), det(-L_a^2) + det(-R_b^2))`` in floating point."""
    big_a, _ = block_decomposition(a, b)
    la, rb = left_matrix(a).to_float(), right_matrix(b).to_float()
    lhs = float(np.linalg.det(-big_a.to_float()))
    rhs = float(np.linalg.det(-(la @ la)) + np.linalg.det(-(rb @ rb)))
    return lhs, rhs


def is_alternative_matrix(a: CDElement) -> bool:
    """``L_a^2 == a^2 I`` with ``a^2 = -|a|^2`` for pure ``a``."""
    l2 = l_squared(a)
    ident = OperatorMatrix.identity(l2.dim).scale(-norm_sq(a))
    return l2.equals(ident, 0.0 if a.exact else 1e-10)
