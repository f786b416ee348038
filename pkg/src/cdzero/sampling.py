"""Random rational elements for property sweeps.

Coordinates are ``p/q`` with ``p`` in ``[-9, 9]`` and ``q`` in ``{1, 2, 3}``,
which keeps exact arithmetic cheap while avoiding integer-only lattices.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .algebra import CDElement

NUMERATORS = (-9, 9)
DENOMINATORS = (1, 2, 3)


def rng_for(seed: int | np.random.SeedSequence | None) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_rationals(rng: np.random.Generator, size: int) -> list[Fraction]:
    nums = rng.integers(NUMERATORS[0], NUMERATORS[1] + 1, size=size)
    dens = rng.choice(DENOMINATORS, size=size)
    return [Fraction(int(p), int(q)) for p, q in zip(nums, dens)]


def random_element(rng: np.random.Generator, level: int, kind: str = "any",
                   density: float = 1.0) -> CDElement:
    """Random nonzero rational element.

    ``kind`` is ``"any"``, ``"pure"`` (zero real part) or ``"doubly_pure"``
    (also zero symplectic coordinate).  ``density`` is the chance that a
    coordinate is drawn at all; sparse draws exercise the exact path harder.
    """
    dim = 1 << level
    fixed = {"any": (), "pure": (0,), "doubly_pure": (0, dim // 2)}[kind]
    while True:
        coords = random_rationals(rng, dim)
        if density < 1.0:
            mask = rng.random(dim) < density
            coords = [c if m else Fraction(0) for c, m in zip(coords, mask)]
        for i in fixed:
            coords[i] = Fraction(0)
        elem = CDElement(level, coords)
        if not elem.is_zero():
            return elem


def random_pure(rng: np.random.Generator, level: int, **kw) -> CDElement:
    return random_element(rng, level, "pure", **kw)


def random_doubly_pure(rng: np.random.Generator, level: int, **kw) -> CDElement:
    return random_element(rng, level, "doubly_pure", **kw)


def random_circle_point(rng: np.random.Generator) -> tuple[Fraction, Fraction]:
    """Rational ``(r, s)`` with ``r^2 + s^2 = 1`` from the stereographic parametrization."""
    t = random_rationals(rng, 1)[0]
    return (1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)
