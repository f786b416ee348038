"""Zero-divisor constructors and annihilators.

Every constructor returns a :class:`ZeroDivisorPair` whose product has been
checked: exactly zero for rational input, or with relative residual
``|alpha chi| / (|alpha| |chi|) <= 1e-9`` on the floating path.  A pair that
fails the check raises :class:`CertificationError`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction

import numpy as np

from .algebra import (
    CDElement, Scalar, exact_sqrt, hat, inner, is_doubly_pure, is_pure, multiply, norm, norm_sq,
    purity_class, tilde,
)
from .errors import CertificationError, PreconditionError
from .operators import SCHEMA_VERSION, OperatorMatrix, l_squared, left_matrix, right_matrix

CERT_TOL = 1e-9
MEMBERSHIP_TOL = 1e-9


class Construction(Enum):
    ORTHOGONAL = "Orthogonal_H_perp"
    TILDE_PARTNER = "TildePartner"
    SPECTRAL = "SpectralLambda"
    PURE_PROMOTION = "PurePromotion"
    KERNEL_SOLVE = "KernelSolve"


@dataclass(frozen=True)
class ZeroDivisorPair:
    alpha: CDElement
    chi: CDElement
    construction: Construction
    residual: Scalar

    @property
    def level(self) -> int:
        return self.alpha.level

    def to_json(self, with_annihilator: bool = True) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "level": self.level,
            "alpha": str(self.alpha),
            "chi": str(self.chi),
            "construction": self.construction.value,
            "residual": str(self.residual) if isinstance(self.residual, Fraction) else self.residual,
        }
        if with_annihilator:
            out["annihilator_dim"] = annihilator(self.alpha).dim
        return out


@dataclass(frozen=True)
class Annihilator:
    element: CDElement
    basis: tuple[CDElement, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "element": str(self.element),
            "level": self.element.level,
            "dim": self.dim,
            "basis": [str(b) for b in self.basis],
        }


def relative_residual(alpha: CDElement, chi: CDElement) -> Scalar:
    """``|alpha chi| / (|alpha| |chi|)``; ``Fraction(0)`` for an exactly zero product."""
    prod = multiply(alpha, chi)
    if prod.exact and prod.is_zero():
        return Fraction(0)
    return math.sqrt(float(norm_sq(prod)) / (float(norm_sq(alpha)) * float(norm_sq(chi))))


def certify(alpha: CDElement, chi: CDElement, construction: Construction,
            tol: float = CERT_TOL) -> ZeroDivisorPair:
    if alpha.is_zero() or chi.is_zero():
        raise CertificationError("zero-divisor pair has a zero member")
    res = relative_residual(alpha, chi)
    exact = alpha.exact and chi.exact
    if (exact and res != 0) or (not exact and res > tol):
        raise CertificationError(
            f"{construction.value}: product of {alpha} and {chi} is not zero (relative residual {float(res):.3e})")
    return ZeroDivisorPair(alpha, chi, construction, res)


# -- H_a and its complement -----------------------------------------------------

def _require_doubly_pure(a: CDElement, what: str = "a") -> None:
    if a.is_zero() or not is_doubly_pure(a):
        raise PreconditionError(f"{what} = {a} must be a nonzero doubly pure element")
    if a.level < 3:
        raise PreconditionError(f"{what} must have level >= 3")


def _h_generators(a: CDElement) -> list[CDElement]:
    # e0, e~0, a, a~ are mutually orthogonal, so projecting against them needs no normalization
    gens = [CDElement.unit(a.level), CDElement.symplectic_unit(a.level), a, tilde(a)]
    if not a.exact:
        gens = [g.to_float() for g in gens]
    return gens


def project_out_h(a: CDElement, x: CDElement) -> CDElement:
    """Orthogonal projection of ``x`` onto ``H_a^perp`` (exact for rational input)."""
    for g in _h_generators(a):
        x = x - g * (inner(x, g) / norm_sq(g))
    return x


def h_offset(a: CDElement, x: CDElement) -> float:
    """Relative size of the ``H_a`` component of ``x``."""
    parts = [float(inner(x, g)) ** 2 / float(norm_sq(g)) for g in _h_generators(a)]
    return math.sqrt(sum(parts) / float(norm_sq(x)))


def in_h_perp(a: CDElement, x: CDElement, tol: float = MEMBERSHIP_TOL) -> bool:
    gens = _h_generators(a)
    if a.exact and x.exact:
        return all(inner(x, g) == 0 for g in gens)
    return h_offset(a, x) <= tol


def complement_vector(a: CDElement) -> CDElement:
    """First nonzero projection of a standard basis vector onto ``H_a^perp``."""
    for i in range(1, a.dim):
        e = CDElement.basis(a.level, i)
        x = project_out_h(a, e if a.exact else e.to_float())
        if (x.exact and not x.is_zero()) or (not x.exact and float(norm_sq(x)) > 1e-6):
            return x
    raise PreconditionError(f"H_a^perp is trivial for {a}")


# -- constructors ------------------------------------------------------------

def _norms_equal(a: CDElement, b: CDElement, tol: float = MEMBERSHIP_TOL) -> bool:
    na, nb = norm_sq(a), norm_sq(b)
    if a.exact and b.exact:
        return na == nb
    return abs(float(na) - float(nb)) <= tol * max(float(na), float(nb))


def construct_orthogonal(a: CDElement, b: CDElement) -> ZeroDivisorPair:
    """``(a, b)`` annihilated by ``(a~, b~)`` for ``b`` in ``H_a^perp`` with ``|a| = |b|``."""
    _require_doubly_pure(a)
    if b.level != a.level:
        raise PreconditionError("a and b must have the same level")
    if b.is_zero() or not in_h_perp(a, b):
        raise PreconditionError(f"b = {b} is not a nonzero element of H_a^perp")
    if not _norms_equal(a, b):
        raise PreconditionError(f"norms differ: |a|^2 = {norm_sq(a)}, |b|^2 = {norm_sq(b)}")
    alpha = CDElement.pair(a, b)
    chi = CDElement.pair(tilde(a), tilde(b))
    return certify(alpha, chi, Construction.ORTHOGONAL)


def construct_tilde_partner(a: CDElement, sign: int, x: CDElement | None = None) -> ZeroDivisorPair:
    """``(a, sign a~)`` annihilated by ``(x, -sign x~)`` for ``x`` in ``H_a^perp``."""
    _require_doubly_pure(a)
    if sign not in (1, -1):
        raise PreconditionError("sign must be +1 or -1")
    if x is None:
        x = complement_vector(a)
    if x.level != a.level or x.is_zero() or not in_h_perp(a, x):
        raise PreconditionError(f"x = {x} is not a nonzero element of H_a^perp")
    alpha = CDElement.pair(a, tilde(a) * sign)
    chi = CDElement.pair(x, tilde(x) * (-sign))
    return certify(alpha, chi, Construction.TILDE_PARTNER)


def _spectral_scale(a: CDElement, x: CDElement, value: float) -> tuple[Scalar, Scalar]:
    """Return ``(q, k)`` with ``a(ax) = -q x`` and ``k = sqrt(q)``.

    ``q`` is ``value * |a|^2``; for rational ``a`` and ``x`` it is recomputed
    exactly from the Rayleigh quotient, and ``k`` is exact when ``q`` is a
    rational square.
    """
    aax = multiply(a, multiply(a, x))
    if a.exact and x.exact:
        q = -inner(aax, x) / norm_sq(x)
        if aax + x * q == CDElement.zero(a.level):
            return q, exact_sqrt(q)
        raise PreconditionError(f"x = {x} is not an eigenvector of -L_a^2")
    q = value * float(norm_sq(a))
    resid = np.linalg.norm(aax.to_numpy() + q * x.to_numpy())
    if resid > 1e-8 * max(1.0, q) * np.linalg.norm(x.to_numpy()):
        raise PreconditionError(f"x is not in the eigenspace of {value} (residual {resid:.3e})")
    return q, math.sqrt(q)


def construct_spectral(a: CDElement, value: float, x: CDElement | None = None, sign: int = 1,
                       tol: float = 1e-8) -> tuple[ZeroDivisorPair, ZeroDivisorPair]:
    """Zero divisor ``(a, sign k e~_0)`` from a nonzero spectral value.

    ``value`` is an eigenvalue of ``-L_u^2`` on ``H_a^perp`` (``u = a/|a|``)
    and ``k = sqrt(value) |a|``; for unit ``a`` this is ``(a, +-lambda e~_0)``
    with ``lambda = sqrt(value)``.  ``x`` must lie in the eigenspace; by
    default the first computed eigenvector is used.  Returns the pair with
    ``chi = (a x, -sign k x~)`` and the pair with the alternate annihilating
    vector ``-chi/k = (-(a x)/k, sign x~)``; both are certified.
    """
    from .spectrum import eigenspace, spectrum

    _require_doubly_pure(a)
    if sign not in (1, -1):
        raise PreconditionError("sign must be +1 or -1")
    if value <= tol:
        raise PreconditionError("the spectral value must be nonzero; use construct_promote_pure for 0")
    report = spectrum(a, tol)
    if not any(abs(c.value - value) <= tol for c in report.clusters):
        raise PreconditionError(f"{value} is not in the spectrum {list(report.lambdas)}")
    if x is None:
        x = _exact_eigenvector(a, value)
    if x is None:
        x = eigenspace(a, value, tol).vectors[0]
    if x.level != a.level or x.is_zero() or not in_h_perp(a, x, 1e-8):
        raise PreconditionError(f"x = {x} is not a nonzero element of H_a^perp")
    q, k = _spectral_scale(a, x, value)
    e0t = CDElement.symplectic_unit(a.level)
    ax = multiply(a, x)
    alpha = CDElement.pair(a, e0t * (sign * k))
    chi = CDElement.pair(ax, tilde(x) * (-sign * k))
    alt = CDElement.pair(ax * (-1 / k if isinstance(k, float) else Fraction(-1) / k), tilde(x) * sign)
    return (certify(alpha, chi, Construction.SPECTRAL), certify(alpha, alt, Construction.SPECTRAL))


def _exact_eigenvector(a: CDElement, value: float, max_level: int = 5) -> CDElement | None:
    """Rational vector of ``H_a^perp`` with ``a(ax) = -value |a|^2 x``, if one is found.

    ``value |a|^2`` is rounded to a nearby fraction and the candidate checked
    by exact elimination; ``None`` when ``a`` is not rational, the level is
    above ``max_level`` or the rounded value is not an exact eigenvalue.
    """
    if not a.exact or a.level > max_level:
        return None
    q = Fraction(value * float(norm_sq(a))).limit_denominator(10**4)
    op = l_squared(a) + OperatorMatrix.identity(a.dim).scale(q)
    for v in op.nullspace():
        x = project_out_h(a, v)
        if not x.is_zero():
            return x
    return None


def _eigenvector(c: CDElement, value: float) -> CDElement | None:
    from .spectrum import eigenspace

    x = _exact_eigenvector(c, value)
    if x is not None:
        return x
    basis = eigenspace(c, value)
    return basis.vectors[0] if basis.vectors else None


def construct_promote_pure(alpha: CDElement, value: float | None = None,
                           sign: int = -1) -> tuple[CDElement, ZeroDivisorPair]:
    """Partner ``beta`` making ``(alpha, beta)`` a zero divisor, for pure ``alpha``.

    Doubly pure ``alpha`` gets ``beta = alpha~`` (tilde partner).  Otherwise
    ``alpha = p + t e~_0`` with ``p`` doubly pure, ``c = p/|p|``, and
    ``beta = t c - |p| e~_0``; then ``|beta| = |alpha|``, ``beta`` is
    orthogonal to ``alpha`` and ``L^2_(alpha, beta) = L^2_(c', -e~_0)`` with
    ``c' = |alpha| c``, so both share the annihilator of ``(c', -|alpha| e~_0)``.
    That requires 1 in the spectrum of ``c``; when it is missing a direct
    kernel computation is tried and :class:`CertificationError` raised if the
    annihilator is trivial.

    ``value`` selects another spectral value ``mu`` of ``c`` with
    ``l = sign * sqrt(mu)``: ``beta = -(t/l) c + |p| l e~_0`` is the rotation of
    ``(c, l e~_0)`` through the angle carrying ``c`` to ``alpha``.  Then
    ``beta`` is orthogonal to ``alpha`` but ``|beta| = |alpha|`` only for ``mu = 1``.
    """
    if alpha.is_zero() or not is_pure(alpha):
        raise PreconditionError(f"alpha = {alpha} must be a nonzero pure element")
    if alpha.level < 3:
        raise PreconditionError("alpha must have level >= 3")
    if sign not in (1, -1):
        raise PreconditionError("sign must be +1 or -1")
    if is_doubly_pure(alpha) and value is None:
        pair = construct_tilde_partner(alpha, 1)
        return tilde(alpha), replace(pair, construction=Construction.PURE_PROMOTION)

    info = purity_class(alpha)
    e0t = CDElement.symplectic_unit(alpha.level)
    p_norm = norm(alpha) * info.r
    t = norm(alpha) * info.s
    c_unit = info.c / norm(alpha)
    mu = 1.0 if value is None else float(value)
    if mu <= 0:
        raise PreconditionError("the spectral value must be positive")
    if value is None:
        lam: Scalar = Fraction(sign)
    else:
        lam = sign * math.sqrt(mu)
        if float(lam) ** 2 == mu and float(lam).is_integer():
            lam = Fraction(int(lam))
    if isinstance(lam, Fraction) and c_unit.exact and isinstance(t, Fraction) and isinstance(p_norm, Fraction):
        beta = c_unit * (-t / lam) + e0t * (p_norm * lam)
    else:
        lf = float(lam)
        beta = c_unit.to_float() * (-float(t) / lf) + e0t.to_float() * (float(p_norm) * lf)
    big = CDElement.pair(alpha, beta)

    # annihilating vector of (c, l e~_0): (c x, -l x~) for x in the mu-eigenspace of c
    c = info.c
    x = _eigenvector(c, mu)
    if x is not None:
        k = norm(c) * lam
        chi = CDElement.pair(multiply(c, x), tilde(x) * (-k))
        try:
            return beta, certify(big, chi, Construction.PURE_PROMOTION)
        except CertificationError:
            pass
    ann = annihilator(big)
    if ann.dim:
        return beta, certify(big, ann.basis[0], Construction.KERNEL_SOLVE)
    raise CertificationError(
        f"({alpha}, {beta}) is not a zero divisor: {mu:g} is not in the spectrum of the doubly pure "
        f"part {c} and the annihilator is trivial")


def kernel_solve(alpha: CDElement, tol: float = 1e-9) -> ZeroDivisorPair:
    """Pair from the first vector of the computed annihilator."""
    ann = annihilator(alpha, tol)
    if not ann.dim:
        raise CertificationError(f"{alpha} has a trivial annihilator")
    return certify(alpha, ann.basis[0], Construction.KERNEL_SOLVE)


# -- annihilators and symmetries ------------------------------------------------

def _span_equal(u: list[CDElement], v: list[CDElement], tol: float) -> bool:
    if len(u) != len(v):
        return False
    if not u:
        return True
    if all(x.exact for x in u + v):
        from . import linalg
        rows = [list(x.coords) for x in u + v]
        ints, _ = linalg.fraction_matrix_to_int(rows)
        return linalg.exact_rank(ints) == len(u)
    m = np.column_stack([x.to_numpy() for x in u + v])
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > tol * s[0])) == len(u)


def annihilator(alpha: CDElement, tol: float = 1e-9, check: bool = True) -> Annihilator:
    """Kernel of ``L_alpha``: exact elimination for rational input, else the
    small singular directions of ``L_alpha`` (relative ``tol``).

    With ``check`` the kernel is compared against those of ``L_{alpha~}`` and
    ``R_alpha``; a disagreement raises ``ArithmeticError``.
    """
    if alpha.is_zero():
        raise PreconditionError("the zero element has no annihilator")
    basis = left_matrix(alpha).nullspace(tol)
    if check and basis and alpha.level >= 1:
        same_tilde = _span_equal(basis, left_matrix(tilde(alpha)).nullspace(tol), 1e-7)
        same_right = _span_equal(basis, right_matrix(alpha).nullspace(tol), 1e-7)
        if not (same_tilde and same_right):
            raise ArithmeticError(f"left, tilde and right annihilators of {alpha} disagree")
    return Annihilator(alpha, tuple(basis))


def _is_zero_product(a: CDElement, x: CDElement, tol: float) -> bool:
    if a.exact and x.exact:
        return multiply(a, x).is_zero()
    return float(relative_residual(a, x)) <= tol


def hat_symmetry_check(alpha: CDElement, chi: CDElement, tol: float = CERT_TOL) -> bool:
    """Whether ``hat(alpha) hat(chi) = 0`` for a pair with ``alpha chi = 0``."""
    if alpha.is_zero() or chi.is_zero() or not _is_zero_product(alpha, chi, tol):
        raise PreconditionError("need nonzero alpha, chi with alpha chi = 0")
    return _is_zero_product(hat(alpha), hat(chi), tol)


def zero_divisor_is_doubly_pure_check(alpha: CDElement) -> bool:
    """Whether a zero divisor is doubly pure; not applicable to non zero divisors."""
    if annihilator(alpha, check=False).dim == 0:
        raise PreconditionError(f"{alpha} is not a zero divisor")
    return purity_class(alpha).is_doubly_pure
