"""Formal Kunneth algebra H^*(Sigma_g) (x) H^*(base) with graded-commutative base generators.

Fibre parts are ``1``, ``x*_i``, ``y*_i`` or the fundamental class ``mu``;
base parts are exterior monomials in ``x~_i`` (slot ``i-1``) and ``y~_i``
(slot ``g+i-1``).  Products carry the Koszul sign ``(-1)^{|b1||f2|}``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from . import _linalg
from .scalars import ZERO, PolyScalar
from .symplectic import check_genus, ext_basis_keys, merge_sign, omega_ideal

FREE = "free"
REDUCED = "reduced"
MU = ("mu",)
UNIT = ()

Fiber = tuple
Key = tuple[Fiber, tuple[int, ...]]


def fiber_degree(f: Fiber) -> int:
    if f == UNIT:
        return 0
    return 2 if f == MU else 1


def _fiber_product(a: Fiber, b: Fiber) -> tuple[int, Fiber]:
    if a == UNIT:
        return 1, b
    if b == UNIT:
        return 1, a
    if a == MU or b == MU:
        return 0, UNIT
    (ka, ia), (kb, ib) = a, b
    if ia != ib or ka == kb:
        return 0, UNIT
    return (1 if ka == "x" else -1), MU


class ModeError(ValueError):
    pass


class KunnethClass:
    __slots__ = ("genus", "mode", "_terms")

    def __init__(self, genus: int, terms: Mapping[Key, object] | None = None, mode: str = FREE):
        self.genus = check_genus(genus)
        if mode not in (FREE, REDUCED):
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode
        clean: dict[Key, Fraction] = {}
        for (fib, base), c in (terms or {}).items():
            c = Fraction(c)
            if c:
                key = (tuple(fib), tuple(base))
                clean[key] = clean.get(key, 0) + c
        clean = {k: v for k, v in clean.items() if v}
        self._terms = _reduce(genus, clean) if mode == REDUCED else clean

    @property
    def terms(self) -> Mapping[Key, Fraction]:
        return self._terms

    def with_mode(self, mode: str) -> "KunnethClass":
        return KunnethClass(self.genus, self._terms, mode)

    def _check(self, other: "KunnethClass") -> None:
        if not isinstance(other, KunnethClass):
            raise TypeError("expected a KunnethClass")
        if other.genus != self.genus:
            raise ValueError("genus mismatch")
        if other.mode != self.mode:
            raise ModeError(f"mode mismatch {self.mode} vs {other.mode}")

    def __add__(self, other: "KunnethClass") -> "KunnethClass":
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return KunnethClass(self.genus, out, self.mode)

    def __neg__(self) -> "KunnethClass":
        return self * -1

    def __sub__(self, other: "KunnethClass") -> "KunnethClass":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, KunnethClass):
            return multiply(self, other)
        if isinstance(other, (int, Fraction)):
            return KunnethClass(self.genus, {k: c * other for k, c in self._terms.items()}, self.mode)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> "KunnethClass":
        out = one(self.genus, self.mode)
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, KunnethClass):
            return NotImplemented
        return self.genus == other.genus and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.genus, frozenset(self._terms.items())))

    def component(self, fiber_deg: int | None = None, base_deg: int | None = None) -> "KunnethClass":
        return KunnethClass(self.genus, {
            (f, b): c for (f, b), c in self._terms.items()
            if (fiber_deg is None or fiber_degree(f) == fiber_deg) and (base_deg is None or len(b) == base_deg)
        }, self.mode)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (f, b), c in sorted(self._terms.items(), key=lambda kv: (fiber_degree(kv[0][0]), kv[0])):
            parts.append(f"{c}*{_fiber_label(f)}(x){_base_label(self.genus, b)}")
        return " + ".join(parts)

    __repr__ = __str__


def _fiber_label(f: Fiber) -> str:
    if f == UNIT:
        return "1"
    if f == MU:
        return "mu"
    return f"{f[0]}{f[1]}*"


def _base_label(g: int, b: tuple[int, ...]) -> str:
    if not b:
        return "1"
    return "".join(f"x~{i + 1}" if i < g else f"y~{i - g + 1}" for i in b)


def _reduce(g: int, terms: dict[Key, Fraction]) -> dict[Key, Fraction]:
    """Normal form modulo the ideal generated by ``omega0~ x~_i`` and ``omega0~ y~_i``."""
    groups: dict[tuple[Fiber, int], dict[tuple[int, ...], Fraction]] = {}
    for (f, b), c in terms.items():
        groups.setdefault((f, len(b)), {})[b] = c
    out: dict[Key, Fraction] = {}
    for (f, d), part in groups.items():
        reduced, pivots = omega_ideal(g, d)
        if not pivots:
            out.update({(f, b): c for b, c in part.items()})
            continue
        keys = ext_basis_keys(g, d)
        vec = _linalg.reduce_modulo([part.get(k, Fraction(0)) for k in keys], reduced, pivots)
        out.update({(f, k): c for k, c in zip(keys, vec) if c})
    return out


def multiply(a: KunnethClass, b: KunnethClass) -> KunnethClass:
    a._check(b)
    out: dict[Key, Fraction] = {}
    for (f1, b1), c1 in a.terms.items():
        for (f2, b2), c2 in b.terms.items():
            fs, fib = _fiber_product(f1, f2)
            if not fs:
                continue
            merged = merge_sign(b1, b2)
            if merged is None:
                continue
            bs, base = merged
            koszul = -1 if (len(b1) * fiber_degree(f2)) % 2 else 1
            key = (fib, base)
            out[key] = out.get(key, 0) + c1 * c2 * fs * bs * koszul
    return KunnethClass(a.genus, out, a.mode)


# --- named classes ---------------------------------------------------------------------

def one(g: int, mode: str = FREE) -> KunnethClass:
    return KunnethClass(g, {(UNIT, ()): 1}, mode)


def mu(g: int, mode: str = FREE) -> KunnethClass:
    return KunnethClass(g, {(MU, ()): 1}, mode)


def fiber_x(g: int, i: int, mode: str = FREE) -> KunnethClass:
    return KunnethClass(g, {(("x", i), ()): 1}, mode)


def fiber_y(g: int, i: int, mode: str = FREE) -> KunnethClass:
    return KunnethClass(g, {(("y", i), ()): 1}, mode)


def base_x(g: int, i: int, mode: str = FREE) -> KunnethClass:
    return KunnethClass(g, {(UNIT, (i - 1,)): 1}, mode)


def base_y(g: int, i: int, mode: str = FREE) -> KunnethClass:
    return KunnethClass(g, {(UNIT, (g + i - 1,)): 1}, mode)


def omega0t(g: int, mode: str = FREE) -> KunnethClass:
    """``sum_i x~_i y~_i``."""
    return KunnethClass(g, {(UNIT, (i, g + i)): 1 for i in range(g)}, mode)


def flux_class(g: int, mode: str = FREE) -> KunnethClass:
    """``sum_i (x*_i (x) x~_i + y*_i (x) y~_i)``."""
    terms = {}
    for i in range(1, g + 1):
        terms[(("x", i), (i - 1,))] = 1
        terms[(("y", i), (g + i - 1,))] = 1
    return KunnethClass(g, terms, mode)


def gamma_class(g: int, mode: str = FREE) -> KunnethClass:
    return omega0t(g, mode) * Fraction(1, 2 * g - 2)


def v_class(g: int, mode: str = FREE) -> KunnethClass:
    return mu(g, mode) * (2 * g - 2) + flux_class(g, mode) + gamma_class(g, mode)


def e_class(g: int, mode: str = FREE) -> KunnethClass:
    """Euler class of the vertical tangent bundle restricted here: ``(2-2g) mu``."""
    return mu(g, mode) * (2 - 2 * g)


NAMED = {"flux": flux_class, "v": v_class, "e": e_class, "omega0t": omega0t, "mu": mu}


def named(name: str, g: int, mode: str = FREE) -> KunnethClass:
    try:
        return NAMED[name](g, mode)
    except KeyError:
        raise ValueError(f"unknown class {name!r}; expected one of {sorted(NAMED)}") from None


def pi_star(a: KunnethClass) -> KunnethClass:
    """Integration over the fibre: ``mu (x) b -> b``, other fibre parts -> 0."""
    return KunnethClass(a.genus, {(UNIT, b): c for (f, b), c in a.terms.items() if f == MU}, a.mode)


def fiber_restriction(a: KunnethClass) -> KunnethClass:
    """Set every positive-degree base generator to zero."""
    return KunnethClass(a.genus, {(f, b): c for (f, b), c in a.terms.items() if not b}, a.mode)


def evaluate_base(a: KunnethClass, coords: Sequence[Sequence[PolyScalar]]) -> PolyScalar:
    """Alexander-Whitney value of a base element on a tuple of flux coordinate vectors.

    ``coords[j]`` lists the homology coordinates of the j-th flux; a base
    monomial ``z_{a_1} ... z_{a_d}`` evaluates to ``prod_j coords[j][a_j]``.
    """
    total = ZERO
    for (f, b), c in a.terms.items():
        if f != UNIT:
            raise ValueError("only base elements can be evaluated")
        if len(b) != len(coords):
            continue
        term = PolyScalar.const(c)
        for j, idx in enumerate(b):
            term = term * coords[j][idx]
        total = total + term
    return total
