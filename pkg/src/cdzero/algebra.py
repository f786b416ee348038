"""Exact arithmetic in the Cayley-Dickson algebras A_n = R^(2^n).

Elements carry ``2**level`` coordinates with respect to the basis
``e_0, ..., e_{2^n - 1}``.  For ``n >= 1`` the first half of the basis is
``(e_i, 0)`` and the second half is ``(0, e_i)`` in ``A_{n-1} x A_{n-1}``, so
``e_{2^(n-1)}`` is the symplectic unit.  The product is the doubling rule

    (a, b)(x, y) = (a x - conj(y) b,  y a + b conj(x))

Coordinates are :class:`fractions.Fraction` whenever the input is rational; a
float anywhere switches the whole element to floating coordinates.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from numbers import Rational, Real
from typing import Iterable, Mapping, Union

import numpy as np

from .errors import LevelMismatchError, ParseError, PreconditionError
from .linalg import int_array, int_matmul, lcm_denominator

Scalar = Union[Fraction, float]

MAX_LEVEL = 10

__all__ = [
    "CDElement", "Purity", "PurityInfo", "MAX_LEVEL",
    "sign_table", "multiply", "conjugate", "tilde", "hat", "trace", "inner",
    "norm_sq", "norm", "associator", "purity_class", "is_pure", "is_doubly_pure",
    "quaternion_subalgebra_basis", "parse_element", "exact_sqrt",
]


def _coerce(values: Iterable) -> tuple:
    vals = list(values)
    if any(isinstance(v, (bool, np.bool_)) for v in vals):
        raise TypeError("boolean coordinates are not allowed")
    if all(isinstance(v, Rational) for v in vals):
        return tuple(Fraction(v) for v in vals)
    for v in vals:
        if not isinstance(v, Real):
            raise TypeError(f"coordinate {v!r} is not a real number")
    return tuple(float(v) for v in vals)


def exact_sqrt(x: Scalar) -> Scalar:
    """Square root, exact when ``x`` is the square of a rational."""
    if isinstance(x, Fraction):
        if x < 0:
            raise ValueError("square root of a negative number")
        p, q = math.isqrt(x.numerator), math.isqrt(x.denominator)
        if p * p == x.numerator and q * q == x.denominator:
            return Fraction(p, q)
        return math.sqrt(x)
    return math.sqrt(x)


@dataclass(frozen=True)
class CDElement:
    """An element of ``A_level``; immutable."""

    level: int
    coords: tuple

    def __post_init__(self):
        if self.level < 0:
            raise ValueError("level must be nonnegative")
        coords = _coerce(self.coords)
        if len(coords) != 1 << self.level:
            raise ValueError(f"A_{self.level} needs {1 << self.level} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, level: int) -> "CDElement":
        return cls(level, (0,) * (1 << level))

    @classmethod
    def basis(cls, level: int, index: int, coeff: Scalar = 1) -> "CDElement":
        if not 0 <= index < 1 << level:
            raise ValueError(f"e{index} is not a basis element of A_{level}")
        c = [0] * (1 << level)
        c[index] = coeff
        return cls(level, c)

    @classmethod
    def unit(cls, level: int) -> "CDElement":
        return cls.basis(level, 0)

    @classmethod
    def symplectic_unit(cls, level: int) -> "CDElement":
        if level < 1:
            raise PreconditionError("the symplectic unit needs level >= 1")
        return cls.basis(level, 1 << (level - 1))

    @classmethod
    def from_terms(cls, level: int, terms: Mapping[int, Scalar]) -> "CDElement":
        c: list = [0] * (1 << level)
        for i, v in terms.items():
            if not 0 <= i < 1 << level:
                raise ValueError(f"e{i} is not a basis element of A_{level}")
            c[i] = c[i] + v
        return cls(level, c)

    @classmethod
    def from_array(cls, arr) -> "CDElement":
        arr = list(arr)
        level = len(arr).bit_length() - 1
        if 1 << level != len(arr):
            raise ValueError("length must be a power of two")
        return cls(level, arr)

    @classmethod
    def pair(cls, first: "CDElement", second: "CDElement") -> "CDElement":
        """The element ``(first, second)`` of ``A_{n+1}``."""
        _check_levels(first, second)
        if first.exact != second.exact:
            first, second = first.to_float(), second.to_float()
        return cls(first.level + 1, first.coords + second.coords)

    # -- views -----------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def exact(self) -> bool:
        return isinstance(self.coords[0], Fraction)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def halves(self) -> tuple["CDElement", "CDElement"]:
        if self.level == 0:
            raise PreconditionError("A_0 has no half blocks")
        h = self.dim // 2
        return CDElement(self.level - 1, self.coords[:h]), CDElement(self.level - 1, self.coords[h:])

    def support(self) -> dict[int, Scalar]:
        return {i: c for i, c in enumerate(self.coords) if c}

    def to_float(self) -> "CDElement":
        if not self.exact:
            return self
        return CDElement(self.level, tuple(float(c) for c in self.coords))

    def to_numpy(self) -> np.ndarray:
        return np.array([float(c) for c in self.coords])

    def scaled_ints(self) -> tuple[np.ndarray, int]:
        """Integer numerators over a common denominator (exact elements only)."""
        if not self.exact:
            raise PreconditionError("scaled_ints needs an exact element")
        den = lcm_denominator(self.coords)
        return int_array([c.numerator * (den // c.denominator) for c in self.coords]), den

    # -- arithmetic ------------------------------------------------------
    def _binop(self, other: "CDElement", op) -> "CDElement":
        _check_levels(self, other)
        a, b = self, other
        if a.exact != b.exact:
            a, b = a.to_float(), b.to_float()
        return CDElement(self.level, tuple(op(x, y) for x, y in zip(a.coords, b.coords)))

    def __add__(self, other):
        if not isinstance(other, CDElement):
            return NotImplemented
        return self._binop(other, lambda x, y: x + y)

    def __sub__(self, other):
        if not isinstance(other, CDElement):
            return NotImplemented
        return self._binop(other, lambda x, y: x - y)

    def __neg__(self):
        return CDElement(self.level, tuple(-c for c in self.coords))

    def scale(self, r: Scalar) -> "CDElement":
        if self.exact and isinstance(r, Rational):
            r = Fraction(r)
        elif isinstance(r, Fraction):
            r = float(r)
        return CDElement(self.level, tuple(r * c for c in self.coords))

    def __mul__(self, other):
        if isinstance(other, CDElement):
            return multiply(self, other)
        if isinstance(other, Real):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Real):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Rational) and self.exact:
            return self.scale(1 / Fraction(other))
        if isinstance(other, Real):
            return self.scale(1.0 / float(other))
        return NotImplemented

    # -- text / json -----------------------------------------------------
    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"CDElement({self.level}, {format_element(self)!r})"

    def to_json(self) -> dict:
        if self.exact:
            coords = [str(c) for c in self.coords]
        else:
            coords = list(self.coords)
        return {"level": self.level, "coords": coords}

    @classmethod
    def from_json(cls, obj: Mapping) -> "CDElement":
        coords = [Fraction(c) if isinstance(c, str) else c for c in obj["coords"]]
        return cls(int(obj["level"]), coords)


def _check_levels(a: CDElement, b: CDElement) -> None:
    if a.level != b.level:
        raise LevelMismatchError(f"level mismatch: A_{a.level} vs A_{b.level}")


# -- multiplication tables ------------------------------------------------------

@lru_cache(maxsize=None)
def sign_table(level: int) -> np.ndarray:
    """``S[i, j]`` with ``e_i e_j = S[i, j] e_{i xor j}`` in ``A_level``.

    Built by applying the doubling rule to basis blocks:
    ``S_n = [[S, S^T], [S C, -S^T C]]`` where ``C`` negates every column but
    the first (conjugation of a basis element).
    """
    s = np.ones((1, 1), dtype=np.int8)
    for _ in range(level):
        c = -np.ones(s.shape[0], dtype=np.int8)
        c[0] = 1
        s = np.block([[s, s.T], [s * c[None, :], -(s.T * c[None, :])]])
    s.setflags(write=False)
    return s


@lru_cache(maxsize=None)
def _left_pattern(level: int) -> tuple[np.ndarray, np.ndarray]:
    n = 1 << level
    k = np.arange(n)
    idx = k[:, None] ^ k[None, :]
    sgn = sign_table(level)[idx, k[None, :]]
    return idx, sgn


@lru_cache(maxsize=None)
def _right_pattern(level: int) -> tuple[np.ndarray, np.ndarray]:
    n = 1 << level
    k = np.arange(n)
    idx = k[:, None] ^ k[None, :]
    sgn = sign_table(level)[k[None, :], idx]
    return idx, sgn


def left_array(a: CDElement) -> tuple[np.ndarray, int | None]:
    """Matrix of ``x -> a x`` as (numerators, denominator) or (floats, None)."""
    idx, sgn = _left_pattern(a.level)
    if a.exact:
        num, den = a.scaled_ints()
        return num[idx] * sgn.astype(num.dtype), den
    return a.to_numpy()[idx] * sgn, None


def right_array(b: CDElement) -> tuple[np.ndarray, int | None]:
    """Matrix of ``x -> x b``; same storage convention as :func:`left_array`."""
    idx, sgn = _right_pattern(b.level)
    if b.exact:
        num, den = b.scaled_ints()
        return num[idx] * sgn.astype(num.dtype), den
    return b.to_numpy()[idx] * sgn, None


def multiply(a: CDElement, b: CDElement) -> CDElement:
    """Cayley-Dickson product ``a b``; exact on rational inputs."""
    _check_levels(a, b)
    if a.exact and b.exact:
        la, da = left_array(a)
        nb, db = b.scaled_ints()
        out = int_matmul(la, nb)
        den = da * db
        return CDElement(a.level, tuple(Fraction(int(v), den) for v in out))
    la, _ = left_array(a.to_float())
    return CDElement(a.level, tuple(la @ b.to_numpy()))


def associator(x: CDElement, y: CDElement, z: CDElement) -> CDElement:
    """``(x y) z - x (y z)``."""
    return multiply(multiply(x, y), z) - multiply(x, multiply(y, z))


def conjugate(a: CDElement) -> CDElement:
    return CDElement(a.level, (a.coords[0],) + tuple(-c for c in a.coords[1:]))


def tilde(a: CDElement) -> CDElement:
    """``(a1, a2) -> (-a2, a1)``, i.e. right multiplication by the symplectic unit."""
    lo, hi = a.halves()
    return CDElement.pair(-hi, lo)


def hat(a: CDElement) -> CDElement:
    """Swap of the two half blocks, ``(a1, a2) -> (a2, a1)``."""
    lo, hi = a.halves()
    return CDElement.pair(hi, lo)


def trace(a: CDElement) -> Scalar:
    return 2 * a.coords[0]


def inner(a: CDElement, b: CDElement) -> Scalar:
    _check_levels(a, b)
    if a.exact and b.exact:
        return sum((x * y for x, y in zip(a.coords, b.coords) if x and y), Fraction(0))
    return float(np.dot(a.to_numpy(), b.to_numpy()))


def norm_sq(a: CDElement) -> Scalar:
    return inner(a, a)


def norm(a: CDElement) -> Scalar:
    """Euclidean norm; a Fraction when the squared norm is a rational square."""
    return exact_sqrt(norm_sq(a))


def normalized(a: CDElement) -> CDElement:
    if a.is_zero():
        raise PreconditionError("cannot normalize the zero element")
    return a / norm(a)


# -- purity ----------------------------------------------------------------------

class Purity(Enum):
    REAL = "Real"
    PURE = "Pure"
    DOUBLY_PURE = "DoublyPure"
    MIXED = "Mixed"


@dataclass(frozen=True)
class PurityInfo:
    """Purity class plus, for pure elements with a symplectic component, the
    decomposition ``a = r c + s e~_0`` with ``c`` doubly pure, ``||c|| = ||a||``
    and ``r^2 + s^2 = 1``."""

    kind: Purity
    r: Scalar | None = None
    s: Scalar | None = None
    c: CDElement | None = None

    @property
    def is_pure(self) -> bool:
        return self.kind in (Purity.PURE, Purity.DOUBLY_PURE)

    @property
    def is_doubly_pure(self) -> bool:
        return self.kind is Purity.DOUBLY_PURE


def is_pure(a: CDElement) -> bool:
    return a.coords[0] == 0


def is_doubly_pure(a: CDElement) -> bool:
    return a.coords[0] == 0 and (a.level == 0 or a.coords[a.dim // 2] == 0)


def symplectic_part(a: CDElement) -> tuple[CDElement, Scalar]:
    """Split a pure element as ``p + t e~_0`` with ``p`` doubly pure."""
    h = a.dim // 2
    t = a.coords[h]
    coords = list(a.coords)
    coords[h] = 0 * t
    return CDElement(a.level, coords), t


def purity_class(a: CDElement) -> PurityInfo:
    if a.coords[0] != 0:
        if all(c == 0 for c in a.coords[1:]):
            return PurityInfo(Purity.REAL)
        return PurityInfo(Purity.MIXED)
    if is_doubly_pure(a):
        return PurityInfo(Purity.DOUBLY_PURE)
    p, t = symplectic_part(a)
    na = norm(a)
    if p.is_zero():
        # tie-break: first doubly pure basis element
        c = CDElement.basis(a.level, 1, na)
        return PurityInfo(Purity.PURE, 0 * na, t / na, c)
    npn = norm(p)
    return PurityInfo(Purity.PURE, npn / na, t / na, p * (na / npn))


def quaternion_subalgebra_basis(a: CDElement) -> tuple[CDElement, CDElement, CDElement, CDElement]:
    """Orthonormal basis ``(e_0, a~/|a|, a/|a|, e~_0)`` of the quaternion copy
    spanned by a nonzero doubly pure ``a``."""
    if a.is_zero() or not is_doubly_pure(a) or a.level < 1:
        raise PreconditionError("need a nonzero doubly pure element")
    u = normalized(a)
    e0 = CDElement.unit(a.level)
    e0t = CDElement.symplectic_unit(a.level)
    if not u.exact:
        e0, e0t = e0.to_float(), e0t.to_float()
    return e0, tilde(u), u, e0t


# -- text syntax ---------------------------------------------------------------

_TERM = re.compile(
    r"""(?P<sign>[+-]?)
        (?P<coef>\d*\.?\d+(?:[eE][+-]?\d+)?\*|\d+/\d+\*?|\d*\.\d+\*?|\d+\*?)?
        (?:e(?P<idx>\d+))?""",
    re.VERBOSE,
)


def parse_element(text: str, level: int | None = None) -> CDElement:
    """Parse ``"e1 + 2e10 - 1/2 e16"``-style text.

    Whitespace is ignored.  A bare number is a multiple of ``e_0``.  Floating
    coefficients in scientific notation need an explicit ``*`` before the
    basis name (``1.5e-3*e4``).  With ``level=None`` the smallest level that
    holds every index is used.
    """
    s = "".join(text.split())
    if not s:
        raise ParseError("empty element text")
    terms: dict[int, Scalar] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse element text at {s[pos:]!r}")
        sign, coef, idx = m.group("sign"), m.group("coef"), m.group("idx")
        if not sign and not first:
            raise ParseError(f"missing '+' or '-' before {s[pos:]!r}")
        if coef is None and idx is None:
            raise ParseError(f"dangling sign in {text!r}")
        if coef is not None and coef.endswith("*") and idx is None:
            raise ParseError(f"'*' without basis name in {text!r}")
        c_text = (coef or "1").rstrip("*")
        if "." in c_text or "e" in c_text.lower():
            value: Scalar = float(c_text)
        else:
            value = Fraction(c_text)
        if sign == "-":
            value = -value
        i = int(idx) if idx is not None else 0
        terms[i] = terms.get(i, 0) + value
        pos = m.end()
        first = False
    need = max(terms).bit_length() if terms and max(terms) > 0 else 0
    if level is None:
        level = need
    elif need > level:
        raise LevelMismatchError(f"e{max(terms)} does not exist in A_{level}")
    return CDElement.from_terms(level, terms)


def _format_coef(c: Scalar) -> str:
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return "" if c == 1 else str(c)
        return f"{c} "
    return f"{c!r}*"


def format_element(a: CDElement) -> str:
    parts = []
    for i, c in enumerate(a.coords):
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        body = f"{_format_coef(mag)}e{i}"
        if not parts:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts) if parts else "0"
