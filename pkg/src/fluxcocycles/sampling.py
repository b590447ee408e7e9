"""Seeded random generators for property checks and certification runs."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from . import group_model as gm
from .bar_calculus import random_symp0
from .group_model import ModelSymp
from .scalars import ONE_MONOMIAL, Monomial, PolyScalar
from .symplectic import CohVector, HomVector, act_on_coh, apply_matrix, word_matrix

__all__ = [
    "random_fraction", "random_poly", "random_coh", "random_rational_coh", "random_hom",
    "generator_names", "random_word", "random_element", "random_symp0", "random_isotropic",
]


def random_fraction(rng: random.Random, bound: int = 3, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def random_poly(rng: random.Random, symbols: Sequence[str] = ("t1", "t2"), terms: int = 2,
                max_degree: int = 2) -> PolyScalar:
    out = PolyScalar()
    for _ in range(rng.randint(0, terms)):
        powers = {}
        for _ in range(rng.randint(0, max_degree)):
            if symbols:
                s = rng.choice(list(symbols))
                powers[s] = powers.get(s, 0) + 1
        out = out + PolyScalar({Monomial(powers.items()) if powers else ONE_MONOMIAL: random_fraction(rng)})
    return out


def random_coh(rng: random.Random, g: int, symbols: Sequence[str] = ("t1", "t2"), density: float = 0.6) -> CohVector:
    return CohVector(g, [random_poly(rng, symbols, 2, 1) if rng.random() < density else PolyScalar()
                         for _ in range(2 * g)])


def random_rational_coh(rng: random.Random, g: int, density: float = 0.5) -> CohVector:
    return CohVector(g, [random_fraction(rng) if rng.random() < density else 0 for _ in range(2 * g)])


def random_hom(rng: random.Random, g: int, symbols: Sequence[str] = (), density: float = 0.6) -> HomVector:
    return HomVector(g, [random_poly(rng, symbols, 2, 1) if rng.random() < density else PolyScalar()
                         for _ in range(2 * g)])


def generator_names(g: int) -> list[str]:
    return [f"lambda{i}" for i in range(1, g + 1)] + [f"mu{i}" for i in range(1, g + 1)] + \
        [f"nu{i}" for i in range(1, g)]


def random_word(rng: random.Random, g: int, length: int = 3) -> list[str]:
    names = generator_names(g)
    return [rng.choice(names) + ("^-1" if rng.random() < 0.3 else "") for _ in range(length)]


def random_element(rng: random.Random, g: int, symbols: Sequence[str] = ("t1",), subgroup: str = "full",
                   word_length: int = 2) -> ModelSymp:
    if subgroup == "symp0":
        return random_symp0(rng, g, symbols)
    if subgroup == "ham":
        return gm.central(g, random_poly(rng, symbols, 2, 1))
    word = [] if subgroup == "torelli" else random_word(rng, g, rng.randint(0, word_length))
    kv = random_rational_coh(rng, g)
    return gm.from_word(word, g, random_coh(rng, g, symbols), kv, random_poly(rng, symbols, 2, 1))


def random_isotropic(rng: random.Random, g: int, count: int, symbols: Sequence[str] = (),
                     word_length: int = 2) -> list[CohVector]:
    """Pairwise iota-orthogonal fluxes: combinations of the ``y*`` directions moved by a random word."""
    a = act_on_coh(word_matrix(random_word(rng, g, word_length), g))
    out = []
    for _ in range(count):
        v = CohVector(g, [0] * g + [random_fraction(rng) for _ in range(g)])
        if symbols and rng.random() < 0.5:
            v = v * PolyScalar.symbol(rng.choice(list(symbols)))
        out.append(apply_matrix(a, v))
    return out
