"""Stiefel and non-trivial elements.

A pair ``(a, b)`` of pure elements of ``A_n`` is a Stiefel element of
``A_{n+1}`` when ``a`` is orthogonal to ``b`` and ``|a| = |b| != 0``.  It is
non-trivial when moreover both are doubly pure and ``b`` lies in
``H_a^perp``, i.e. ``b`` is also orthogonal to ``a~``.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .algebra import (
    CDElement, Scalar, hat, inner, is_doubly_pure, is_pure, multiply, norm, norm_sq, symplectic_part, tilde,
)
from .errors import PreconditionError
from .operators import SCHEMA_VERSION
from .sampling import random_doubly_pure, random_pure
from .zerodiv import annihilator, project_out_h

TOL = 1e-9


class CaseTag(Enum):
    NON_TRIVIAL = "NonTrivial"
    TILDE_PARTNER = "TildePartnerCase"
    PURE_PROMOTION = "PurePromotionCase"
    UNCLASSIFIED = "Unclassified"


def _is_zero(x: Scalar, tol: float = TOL) -> bool:
    return x == 0 if isinstance(x, Fraction) else abs(x) <= tol


def _scalar_json(x: Scalar):
    return str(x) if isinstance(x, Fraction) else x


@dataclass(frozen=True)
class StiefelClassification:
    is_stiefel: bool
    is_nontrivial: bool
    witness_inner_products: tuple[Scalar, Scalar, Scalar]
    case_tag: CaseTag | None

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "is_stiefel": self.is_stiefel,
            "is_nontrivial": self.is_nontrivial,
            "witness_inner_products": [_scalar_json(v) for v in self.witness_inner_products],
            "case_tag": self.case_tag.value if self.case_tag else None,
        }


def _require_pure_pair(a: CDElement, b: CDElement) -> None:
    if a.level != b.level:
        raise PreconditionError("a and b must have the same level")
    if not (is_pure(a) and is_pure(b)):
        raise PreconditionError("a and b must be pure")


def pair_inner_product_check(alpha: CDElement, chi: CDElement, tol: float = TOL) -> Scalar:
    """Common value of ``<alpha, chi>``, ``<a, x> + <b, y>`` and the real part
    of ``-(alpha chi + chi alpha)/2``, for ``alpha = (a, b)``, ``chi = (x, y)``
    with pure halves.  Raises ``ArithmeticError`` if they disagree."""
    if alpha.level != chi.level or alpha.level < 1:
        raise PreconditionError("alpha and chi must have the same level >= 1")
    (a, b), (x, y) = alpha.halves(), chi.halves()
    if not all(is_pure(v) for v in (a, b, x, y)):
        raise PreconditionError("the halves of alpha and chi must be pure")
    direct = inner(alpha, chi)
    split = inner(a, x) + inner(b, y)
    sym = (multiply(alpha, chi) + multiply(chi, alpha)) * Fraction(-1, 2) if alpha.exact and chi.exact \
        else (multiply(alpha, chi) + multiply(chi, alpha)) * -0.5
    expected = CDElement.unit(alpha.level) * direct
    if alpha.exact and chi.exact:
        ok = direct == split and sym == expected
    else:
        scale = max(1.0, math.sqrt(float(norm_sq(alpha)) * float(norm_sq(chi))))
        ok = abs(direct - split) <= tol * scale and \
            np.abs(sym.to_numpy() - expected.to_numpy()).max() <= tol * scale
    if not ok:
        raise ArithmeticError(f"split inner product identity fails for {alpha}, {chi}")
    return direct


def _promotion_pattern(a: CDElement, b: CDElement, tol: float) -> bool:
    # a = p + t e~0, b = q + u e~0 has the form (r c -+ s e~0, s c +- r e~0)
    # exactly when u^2 = |p|^2 and -u q = t p
    p, t = symplectic_part(a)
    q, u = symplectic_part(b)
    lhs = q * (-u)
    rhs = p * t
    if a.exact and b.exact:
        return u * u == norm_sq(p) and lhs == rhs
    scale = max(1.0, float(norm_sq(a)))
    return abs(float(u) ** 2 - float(norm_sq(p))) <= tol * scale and \
        np.abs(lhs.to_numpy() - rhs.to_numpy()).max() <= tol * scale


def classify(a: CDElement, b: CDElement, tol: float = TOL) -> StiefelClassification:
    """Stiefel predicates for the pair ``(a, b)`` and, for Stiefel pairs, the
    known zero-divisor family it belongs to (``case_tag`` is ``None`` otherwise)."""
    _require_pure_pair(a, b)
    if a.level < 3:
        raise PreconditionError("level must be >= 3")
    ab = inner(a, b)
    tab = inner(tilde(a), b)
    dn = norm_sq(a) - norm_sq(b)
    scale = max(1.0, float(norm_sq(a)))
    stiefel = _is_zero(ab, tol * scale) and _is_zero(dn, tol * scale) and not a.is_zero()
    both_dp = is_doubly_pure(a) and is_doubly_pure(b)
    nontrivial = stiefel and both_dp and _is_zero(tab, tol * scale)
    tag = None
    if stiefel:
        if nontrivial:
            tag = CaseTag.NON_TRIVIAL
        elif both_dp:
            # b in H_a with b orthogonal to a and of equal norm forces b = +-a~
            resid = b - tilde(a) * (1 if float(tab) > 0 else -1)
            in_h = resid.is_zero() if resid.exact else float(norm_sq(resid)) <= tol * scale
            tag = CaseTag.TILDE_PARTNER if in_h else CaseTag.UNCLASSIFIED
        elif _promotion_pattern(a, b, tol):
            tag = CaseTag.PURE_PROMOTION
        else:
            tag = CaseTag.UNCLASSIFIED
    return StiefelClassification(stiefel, nontrivial, (ab, tab, dn), tag)


@dataclass(frozen=True)
class HermitianValue:
    """``re + i im`` with components in the scalar type of the inputs."""

    re: Scalar
    im: Scalar

    def conjugate(self) -> "HermitianValue":
        return HermitianValue(self.re, -self.im)

    def times_i(self) -> "HermitianValue":
        return HermitianValue(-self.im, self.re)

    def is_zero(self, tol: float = 0.0) -> bool:
        return _is_zero(self.re, tol) and _is_zero(self.im, tol)

    def close_to(self, other: "HermitianValue", tol: float = 0.0) -> bool:
        return HermitianValue(self.re - other.re, self.im - other.im).is_zero(tol)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        return f"{self.re} + {self.im}i" if self.im >= 0 else f"{self.re} - {-self.im}i"


def hermitian_form(x: CDElement, y: CDElement) -> HermitianValue:
    """``2<x, y> - 2i <x~, y>`` on doubly pure elements."""
    if x.level != y.level:
        raise PreconditionError("x and y must have the same level")
    if not (is_doubly_pure(x) and is_doubly_pure(y)):
        raise PreconditionError("x and y must be doubly pure")
    return HermitianValue(2 * inner(x, y), -2 * inner(tilde(x), y))


def stiefel_to_nontrivial(alpha: CDElement) -> tuple[CDElement, CDElement]:
    """``(alpha, hat(alpha))`` for a Stiefel element ``alpha = (a, b)``; checked to be non-trivial."""
    if alpha.level < 4:
        raise PreconditionError("alpha must have level >= 4")
    a, b = alpha.halves()
    _require_pure_pair(a, b)
    if not classify(a, b).is_stiefel:
        raise PreconditionError(f"{alpha} is not a Stiefel element")
    out = (alpha, hat(alpha))
    if not classify(*out).is_nontrivial:
        raise ArithmeticError(f"(alpha, hat(alpha)) is not non-trivial for {alpha}")
    return out


# -- sweep -------------------------------------------------------------------------

SWEEP_KINDS = ("stiefel", "nontrivial", "tilde", "promotion", "mixed")


def _equalize(a: CDElement, b: CDElement) -> CDElement:
    """Rescale ``b`` to the norm of ``a``; exact when the ratio is a rational square."""
    ratio = norm_sq(a) / norm_sq(b)
    if isinstance(ratio, Fraction):
        p, q = math.isqrt(ratio.numerator), math.isqrt(ratio.denominator)
        if p * p == ratio.numerator and q * q == ratio.denominator:
            return b * Fraction(p, q)
    return b.to_float() * math.sqrt(float(ratio))


def promotion_partner(a: CDElement) -> CDElement:
    """``t c - |p| e~_0`` for ``a = p + t e~_0`` and ``c = |a| p/|p|`` (``c = |a| e_1`` if ``p = 0``).

    This is the partner produced by :func:`construct_promote_pure`, without
    any zero-divisor certification.
    """
    p, t = symplectic_part(a)
    e0t = CDElement.symplectic_unit(a.level)
    if p.is_zero():
        return CDElement.basis(a.level, 1) * t
    n = norm(p)
    if isinstance(n, Fraction) and isinstance(t, Fraction):
        return p * (t / n) - e0t * n
    return p.to_float() * (float(t) / float(n)) - e0t.to_float() * float(n)


def _draw_pair(rng: np.random.Generator, level: int, kind: str) -> tuple[CDElement, CDElement]:
    while True:
        if kind == "stiefel":
            a = random_pure(rng, level)
            b = random_pure(rng, level)
            b = b - a * (inner(a, b) / norm_sq(a))
        elif kind == "nontrivial":
            a = random_doubly_pure(rng, level)
            b = project_out_h(a, random_doubly_pure(rng, level))
        elif kind == "tilde":
            a = random_doubly_pure(rng, level)
            b = tilde(a) * int(rng.choice((-1, 1)))
        else:
            a = random_pure(rng, level)
            b = promotion_partner(a)
        if not b.is_zero():
            return a, _equalize(a, b)


def sweep_stiefel_zero_divisors(level: int, count: int, seed: int, kind: str = "stiefel") -> dict:
    """Draw ``count`` Stiefel elements of ``A_{level+1}`` and tally which are zero divisors.

    Each draw has its own generator spawned from ``seed``, so a run is
    reproducible and independent of evaluation order.  ``kind`` selects the
    sampler; ``"mixed"`` cycles through the other four.
    """
    if level < 3:
        raise PreconditionError("level must be >= 3")
    if kind not in SWEEP_KINDS:
        raise PreconditionError(f"kind must be one of {SWEEP_KINDS}")
    kinds = SWEEP_KINDS[:-1] if kind == "mixed" else (kind,)
    streams = np.random.SeedSequence(seed).spawn(count) if count else []
    by_case: Counter = Counter()
    dims: Counter = Counter()
    zero_divisors = 0
    unclassified_zd = []
    failures = []
    for i, ss in enumerate(streams):
        rng = np.random.default_rng(ss)
        a, b = _draw_pair(rng, level, kinds[i % len(kinds)])
        cls = classify(a, b)
        tag = cls.case_tag.value if cls.case_tag else "NotStiefel"
        by_case[tag] += 1
        alpha = CDElement.pair(a, b)
        dim = annihilator(alpha, check=False).dim
        dims[dim] += 1
        if dim:
            zero_divisors += 1
            if cls.case_tag is CaseTag.UNCLASSIFIED:
                unclassified_zd.append({"index": i, "alpha": str(alpha), "annihilator_dim": dim})
        else:
            failures.append({"index": i, "alpha": str(alpha), "case": tag, "annihilator_dim": 0})
    return {
        "schema_version": SCHEMA_VERSION,
        "level": level,
        "count": count,
        "seed": seed,
        "kind": kind,
        "zero_divisors": zero_divisors,
        "by_case": dict(sorted(by_case.items())),
        "annihilator_dims": {str(k): v for k, v in sorted(dims.items())},
        "unclassified_zero_divisors": unclassified_zd,
        "failures": failures,
    }
