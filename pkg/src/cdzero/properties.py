"""Identity predicates shared by the verification harness and the test-suite.

Each predicate evaluates one algebraic identity on concrete inputs and
returns ``True`` when it holds exactly (rational input) or within ``tol``.
The ``draw_*`` helpers produce inputs that make both sides of every
biconditional occur.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .algebra import (
    CDElement, conjugate, hat, inner, is_doubly_pure, multiply, norm_sq, tilde,
)
from .operators import (
    anticommutation_check, assemble_blocks, block_decomposition, l_squared,
    l_squared_equals_r_squared_check,
)
from .sampling import random_circle_point, random_doubly_pure, random_pure
from .stiefel import classify, hermitian_form, pair_inner_product_check
from .zerodiv import project_out_h


def _eq(x: CDElement, y: CDElement) -> bool:
    if x.exact and y.exact:
        return x == y
    return bool(np.abs(x.to_numpy() - y.to_numpy()).max() <= 1e-9)


def _zero(x: CDElement) -> bool:
    return _eq(x, CDElement.zero(x.level))


# -- products with the symplectic unit -------------------------------------------

def tilde_via_symplectic_unit(a: CDElement) -> bool:
    e = CDElement.symplectic_unit(a.level)
    return _eq(multiply(a, e), tilde(a)) and _eq(multiply(e, a), -tilde(a))


def tilde_square(a: CDElement) -> bool:
    e = CDElement.symplectic_unit(a.level) * norm_sq(a)
    t = tilde(a)
    return _eq(multiply(a, t), -e) and _eq(multiply(t, a), e) and inner(a, t) == 0


def tilde_left_product(a: CDElement, b: CDElement) -> bool:
    """``a~ b = -(a b)~`` for pure ``a`` and doubly pure ``b``."""
    return _eq(multiply(tilde(a), b), -tilde(multiply(a, b)))


def orthogonal_iff_tilde_sum(a: CDElement, b: CDElement) -> bool:
    lhs = inner(a, b) == 0
    rhs = _zero(multiply(tilde(a), b) + multiply(tilde(b), a))
    return lhs == rhs


def tilde_orthogonal_iff_swap(a: CDElement, b: CDElement) -> bool:
    lhs = inner(tilde(a), b) == 0
    rhs = _eq(multiply(a, b), multiply(tilde(b), tilde(a)))
    return lhs == rhs


def tilde_commutes_iff_h_perp(a: CDElement, b: CDElement) -> bool:
    lhs = _eq(multiply(tilde(a), b), multiply(a, tilde(b)))
    rhs = inner(a, b) == 0 and inner(tilde(a), b) == 0
    return lhs == rhs


def draw_doubly_pure_pair(rng: np.random.Generator, level: int, i: int) -> tuple[CDElement, CDElement]:
    """Cycle through generic ``b``, ``b`` orthogonal to ``a``, ``b`` orthogonal to
    ``a~`` and ``b`` in ``H_a^perp``."""
    a = random_doubly_pure(rng, level)
    b = random_doubly_pure(rng, level)
    mode = i % 4
    if mode == 1:
        b = b - a * (inner(a, b) / norm_sq(a))
    elif mode == 2:
        t = tilde(a)
        b = b - t * (inner(t, b) / norm_sq(t))
    elif mode == 3:
        b = project_out_h(a, b)
    if b.is_zero():
        b = random_doubly_pure(rng, level)
    return a, b


# -- operator identities -------------------------------------------------------------

def symplectic_and_tilde_anticommutation(a: CDElement) -> bool:
    return anticommutation_check(a)


def left_square_equals_right_square(a: CDElement) -> bool:
    return l_squared_equals_r_squared_check(a)


def block_identity(a: CDElement, b: CDElement) -> bool:
    big_a, s = block_decomposition(a, b)
    return l_squared(CDElement.pair(a, b)).equals(assemble_blocks(big_a, s))


def rotation_invariance(a: CDElement, b: CDElement, r: Fraction, s: Fraction) -> bool:
    """Both rotation and reflection forms of the circle action preserve ``L^2``."""
    rot = CDElement.pair(a * r - b * s, a * s + b * r)
    ref = CDElement.pair(a * r + b * s, a * s - b * r)
    base = l_squared(CDElement.pair(a, b))
    swapped = l_squared(CDElement.pair(b, a))
    return l_squared(rot).equals(base) and l_squared(ref).equals(swapped)


def draw_circle_point(rng: np.random.Generator) -> tuple[Fraction, Fraction]:
    return random_circle_point(rng)


# -- hat map, split inner product and the Hermitian form -----------------------------

def hat_product_relation(a: CDElement, x: CDElement) -> bool:
    """For pure halves, ``hat(a) hat(x) = (conj(c), -conj(d))`` where ``a x = (c, d)``."""
    c, d = multiply(a, x).halves()
    return _eq(multiply(hat(a), hat(x)), CDElement.pair(conjugate(c), -conjugate(d)))


def split_inner_product(alpha: CDElement, chi: CDElement) -> bool:
    try:
        pair_inner_product_check(alpha, chi)
    except ArithmeticError:
        return False
    return True


def stiefel_hat_biconditional(a: CDElement, b: CDElement) -> bool:
    alpha = CDElement.pair(a, b)
    stiefel = classify(a, b).is_stiefel
    nontrivial = classify(alpha, hat(alpha)).is_nontrivial
    return stiefel == nontrivial


def draw_pure_pair(rng: np.random.Generator, level: int, i: int) -> tuple[CDElement, CDElement]:
    """Pure pairs; every other draw is a Stiefel pair.

    Stiefel pairs use ``b = e_k a`` with ``a_k = 0``: left multiplication by a
    basis unit is a rational isometry, ``e_k a`` is orthogonal to ``a`` and
    its real part is ``-a_k = 0``.
    """
    a = random_pure(rng, level)
    if i % 2 == 0:
        return a, random_pure(rng, level)
    k = int(rng.integers(1, 1 << level))
    coords = list(a.coords)
    coords[k] = Fraction(0)
    a = CDElement(level, coords)
    if a.is_zero():
        a = CDElement.basis(level, 1 if k != 1 else 2)
    return a, multiply(CDElement.basis(level, k), a)


def hermitian_properties(x: CDElement, y: CDElement) -> bool:
    """``H(x~, y) = i H(x, y)``, ``conj H(x, y) = H(y, x)`` and
    ``H(x, y) = 0`` exactly when ``y`` lies in ``H_x^perp``."""
    h = hermitian_form(x, y)
    ok = hermitian_form(tilde(x), y) == h.times_i() and h.conjugate() == hermitian_form(y, x)
    in_perp = inner(x, y) == 0 and inner(tilde(x), y) == 0 and is_doubly_pure(y)
    return ok and (h.is_zero() == in_perp)
