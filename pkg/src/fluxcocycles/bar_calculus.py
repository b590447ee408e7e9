"""Inhomogeneous bar complex of the model group.

Chains are finite rational combinations of tuples of ``ModelSymp``.  Cochains
are evaluators; the group is infinite, so nothing is tabulated.

    d(g1..gn) = (g2..gn) + sum_i (-1)^i (..g_i g_{i+1}..) + (-1)^n (g1..g_{n-1})
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import lcm
from typing import Callable, Iterable, Mapping, Sequence

from . import group_model as gm
from .group_model import ModelSymp
from .scalars import ZERO, Monomial, PolyScalar, SymElement, sym_mul
from .symplectic import CohVector, GenusError, iota

Tuple = tuple[ModelSymp, ...]


class NotABoundaryError(ValueError):
    pass


class NotACycleError(ValueError):
    pass


class CochainError(ValueError):
    pass


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


class BarChain:
    """Rational combination of n-tuples of model elements."""

    __slots__ = ("degree", "genus", "_terms")

    def __init__(self, degree: int, terms: Mapping[Tuple, object] | Iterable[tuple[Tuple, object]] = (),
                 genus: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Tuple, Fraction] = {}
        for tup, coef in items:
            tup = tuple(tup)
            if len(tup) != degree:
                raise ValueError(f"tuple of length {len(tup)} in a degree-{degree} chain")
            for e in tup:
                if genus is None:
                    genus = e.genus
                elif e.genus != genus:
                    raise GenusError("chain mixes genera")
            clean[tup] = clean.get(tup, Fraction(0)) + Fraction(coef)
        self.degree = degree
        self.genus = genus
        self._terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def single(cls, *elements: ModelSymp, coef=1) -> "BarChain":
        return cls(len(elements), {tuple(elements): coef})

    @classmethod
    def zero(cls, degree: int, genus: int | None = None) -> "BarChain":
        return cls(degree, {}, genus)

    @property
    def terms(self) -> Mapping[Tuple, Fraction]:
        return self._terms

    def items(self) -> list[tuple[Tuple, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: [e.sort_key() for e in kv[0]])

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: "BarChain") -> None:
        if not isinstance(other, BarChain):
            raise TypeError("expected a BarChain")
        if self._terms and other._terms and self.degree != other.degree:
            raise ValueError(f"degree mismatch {self.degree} vs {other.degree}")

    def __add__(self, other: "BarChain") -> "BarChain":
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        degree = self.degree if self._terms else other.degree
        return BarChain(degree, out, self.genus or other.genus)

    def __neg__(self) -> "BarChain":
        return BarChain(self.degree, {k: -c for k, c in self._terms.items()}, self.genus)

    def __sub__(self, other: "BarChain") -> "BarChain":
        return self + (-other)

    def __mul__(self, c) -> "BarChain":
        c = Fraction(c)
        return BarChain(self.degree, {k: v * c for k, v in self._terms.items()}, self.genus)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BarChain):
            return NotImplemented
        if not self._terms and not other._terms:
            return True
        return self.degree == other.degree and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.degree, frozenset(self._terms.items())))

    def map_elements(self, fn: Callable[[ModelSymp], ModelSymp]) -> "BarChain":
        out: dict[Tuple, Fraction] = {}
        for tup, c in self._terms.items():
            key = tuple(fn(e) for e in tup)
            out[key] = out.get(key, 0) + c
        return BarChain(self.degree, out)

    def __repr__(self) -> str:
        return f"BarChain(degree={self.degree}, terms={len(self._terms)})"


def face_terms(tup: Tuple) -> list[tuple[int, Tuple]]:
    n = len(tup)
    out = [(1, tup[1:])]
    for i in range(1, n):
        merged = tup[:i - 1] + (gm.compose(tup[i - 1], tup[i]),) + tup[i + 1:]
        out.append(((-1) ** i, merged))
    out.append(((-1) ** n, tup[:-1]))
    return out


def boundary(c: BarChain) -> BarChain:
    if c.degree < 1:
        raise ValueError("boundary needs degree >= 1")
    out: dict[Tuple, Fraction] = {}
    for tup, coef in c.terms.items():
        for sign, face in face_terms(tup):
            out[face] = out.get(face, 0) + sign * coef
    return BarChain(c.degree - 1, out, c.genus)


def is_cycle(c: BarChain) -> bool:
    return c.degree == 0 or boundary(c).is_zero()


# --- cochains -----------------------------------------------------------------------

KINDS = ("scalar", "sym", "coh")


@dataclass(frozen=True)
class BarCochain:
    """Evaluator on n-tuples.

    ``kind`` names the coefficient module: ``scalar`` (PolyScalar), ``sym``
    (SymElement) or ``coh`` (CohVector).  ``twisted`` cochains use the H^1
    action in the first face of the coboundary.
    """

    degree: int
    fn: Callable[[Tuple], object]
    kind: str = "scalar"
    twisted: bool = False
    name: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown coefficient kind {self.kind!r}")
        if self.twisted and self.kind != "coh":
            raise ValueError("only H^1-valued cochains can be twisted")

    def __call__(self, *elements: ModelSymp):
        if len(elements) != self.degree:
            raise ValueError(f"cochain of degree {self.degree} given {len(elements)} arguments")
        return self.fn(tuple(elements))

    def __add__(self, other: "BarCochain") -> "BarCochain":
        _compatible(self, other)
        return BarCochain(self.degree, lambda t: self.fn(t) + other.fn(t), self.kind, self.twisted)

    def __neg__(self) -> "BarCochain":
        return BarCochain(self.degree, lambda t: -self.fn(t), self.kind, self.twisted)

    def __sub__(self, other: "BarCochain") -> "BarCochain":
        return self + (-other)

    def __mul__(self, c) -> "BarCochain":
        c = Fraction(c)
        return BarCochain(self.degree, lambda t: self.fn(t) * c, self.kind, self.twisted)

    __rmul__ = __mul__


def _compatible(f: BarCochain, h: BarCochain) -> None:
    if f.degree != h.degree or f.kind != h.kind or f.twisted != h.twisted:
        raise CochainError("cochains live in different modules")


def zero_value(kind: str, genus: int, degree: int = 2):
    if kind == "scalar":
        return ZERO
    if kind == "sym":
        return SymElement.zero(degree)
    return CohVector.zero(genus)


def coboundary(f: BarCochain) -> BarCochain:
    n = f.degree

    def fn(t: Tuple):
        first = f.fn(t[1:])
        if f.twisted:
            first = t[0].act(first)
        total = first
        for i in range(1, n + 1):
            total = total + f.fn(t[:i - 1] + (gm.compose(t[i - 1], t[i]),) + t[i + 1:]) * (-1) ** i
        return total + f.fn(t[:n]) * (-1) ** (n + 1)

    return BarCochain(n + 1, fn, f.kind, f.twisted)


def evaluate(f: BarCochain, c: BarChain):
    if c.terms and c.degree != f.degree:
        raise ValueError(f"cannot evaluate a degree-{f.degree} cochain on a degree-{c.degree} chain")
    total = None
    for tup, coef in c.items():
        term = f.fn(tup) * coef
        total = term if total is None else total + term
    if total is None:
        return zero_value(f.kind, c.genus or 2)
    return total


def constant(value, degree: int = 0, kind: str = "scalar") -> BarCochain:
    return BarCochain(degree, lambda t: value, kind)


def _multiply(a, b):
    if isinstance(a, PolyScalar) and isinstance(b, PolyScalar):
        return a * b
    if isinstance(a, SymElement) and isinstance(b, SymElement):
        return sym_mul(a, b)
    if isinstance(a, PolyScalar) and a.is_rational():
        return b * a.to_fraction()
    if isinstance(b, PolyScalar) and b.is_rational():
        return a * b.to_fraction()
    raise CochainError("coefficients have no common product")


def aw_cup(f: BarCochain, h: BarCochain) -> BarCochain:
    """Alexander-Whitney cup product for trivial coefficients: front face times back face."""
    if f.twisted or h.twisted or "coh" in (f.kind, h.kind):
        raise CochainError("cup product is defined here for trivial scalar or symmetric coefficients")
    p = f.degree
    kind = "sym" if "sym" in (f.kind, h.kind) else "scalar"
    return BarCochain(p + h.degree, lambda t: _multiply(f.fn(t[:p]), h.fn(t[p:])), kind)


def check_crossed(f: BarCochain, pairs: Iterable[tuple[ModelSymp, ModelSymp]]) -> bool:
    """``f(gh) == f(g) + g.f(h)`` on every given pair."""
    if f.degree != 1 or f.kind != "coh":
        raise CochainError("crossed homomorphisms are H^1-valued 1-cochains")
    return all(f.fn((gm.compose(a, b),)) == f.fn((a,)) + a.act(f.fn((b,))) for a, b in pairs)


def pair_cocycle(f1: BarCochain, f2: BarCochain, witnesses: Iterable[tuple[ModelSymp, ModelSymp]] = ()) -> BarCochain:
    """``(g, h) -> iota(f1(g), g.f2(h))``; a 2-cocycle when f1, f2 are crossed homomorphisms."""
    for f in (f1, f2):
        if f.degree != 1 or f.kind != "coh":
            raise CochainError("pair_cocycle takes H^1-valued 1-cochains")
    witnesses = list(witnesses)
    if witnesses and not (check_crossed(f1, witnesses) and check_crossed(f2, witnesses)):
        raise CochainError("input is not a crossed homomorphism")
    return BarCochain(2, lambda t: iota(f1.fn(t[:1]), t[0].act(f2.fn(t[1:]))), "scalar")


def fC_cochain() -> BarCochain:
    return BarCochain(1, lambda t: t[0].fC, "coh", True, "fluxc")


def kv_cochain() -> BarCochain:
    return BarCochain(1, lambda t: t[0].kv, "coh", True, "kR")


def flux_cochain() -> BarCochain:
    return BarCochain(1, lambda t: gm.flux_tilde(t[0]), "coh", True, "flux")


def cal_cochain() -> BarCochain:
    return BarCochain(1, lambda t: t[0].cal, "scalar", False, "cal")


# --- torus cycles and cross products ---------------------------------------------------

def commute(a: ModelSymp, b: ModelSymp) -> bool:
    return gm.compose(a, b) == gm.compose(b, a)


def shuffle_cycle(elements: Sequence[ModelSymp]) -> BarChain:
    """Signed sum over orderings of pairwise-commuting elements (a torus fundamental cycle)."""
    elements = tuple(elements)
    for a, b in combinations(elements, 2):
        if not commute(a, b):
            raise ValueError("shuffle_cycle needs pairwise commuting elements")
    terms: dict[Tuple, Fraction] = {}
    for perm in permutations(range(len(elements))):
        key = tuple(elements[p] for p in perm)
        terms[key] = terms.get(key, 0) + _perm_sign(perm)
    return BarChain(len(elements), terms)


def shuffles(p: int, q: int) -> Iterable[tuple[int, tuple[int, ...]]]:
    """(p,q)-shuffles as (sign, positions of the first factor)."""
    for pos in combinations(range(p + q), p):
        inversions = sum(1 for i, a in enumerate(pos) for b in range(a) if b not in pos[:i] and b not in pos)
        yield (-1 if inversions % 2 else 1), pos


def cross_product(c1: BarChain, c2: BarChain, g1: int | None = None, g2: int | None = None) -> BarChain:
    """Eilenberg-Zilber shuffle product after embedding the factors in disjoint handle blocks."""
    g1 = g1 if g1 is not None else c1.genus
    g2 = g2 if g2 is not None else c2.genus
    if g1 is None or g2 is None:
        raise ValueError("cannot infer the block genera")
    total = g1 + g2
    p, q = c1.degree, c2.degree
    out: dict[Tuple, Fraction] = {}
    for t1, a in c1.terms.items():
        e1 = [gm.embed(e, total, 0) for e in t1]
        for t2, b in c2.terms.items():
            e2 = [gm.embed(e, total, g1) for e in t2]
            for sign, pos in shuffles(p, q):
                it1, it2 = iter(e1), iter(e2)
                key = tuple(next(it1) if k in pos else next(it2) for k in range(p + q))
                out[key] = out.get(key, 0) + sign * a * b
    return BarChain(p + q, out, total)


def embed_chain(c: BarChain, total: int, offset: int) -> BarChain:
    return c.map_elements(lambda e: gm.embed(e, total, offset))


# --- solving d d = z inside the identity component -------------------------------------

class _Solver:
    """Rewrite a 1-cycle to zero using relations ``(g) ~ (a) + (b)`` for ``g = ab``.

    Keeps the invariant ``z = current + boundary(d)``.
    """

    def __init__(self, z: BarChain, rng: random.Random | None):
        self.genus = z.genus
        self.current: dict[ModelSymp, Fraction] = {t[0]: c for t, c in z.terms.items()}
        self.d: dict[Tuple, Fraction] = {}
        self.rng = rng
        self.one = gm.identity(self.genus)

    def _add(self, e: ModelSymp, n: Fraction) -> None:
        v = self.current.get(e, 0) + n
        if v:
            self.current[e] = v
        else:
            self.current.pop(e, None)

    def _add_d(self, t: Tuple, n: Fraction) -> None:
        v = self.d.get(t, 0) + n
        if v:
            self.d[t] = v
        else:
            self.d.pop(t, None)

    def split(self, g: ModelSymp, a: ModelSymp, b: ModelSymp) -> None:
        """Replace the ``(g)`` term by ``(a) + (b)``."""
        n = self.current.pop(g, 0)
        if not n:
            return
        self._add(a, n)
        self._add(b, n)
        self._add_d((a, b), -n)

    def invert(self, e: ModelSymp) -> None:
        """Replace ``(e)`` by ``-(e^{-1}) + (id)``."""
        a = gm.inverse(e)
        n = self.current.pop(e, 0)
        if not n:
            return
        self._add(a, -n)
        self._add(self.one, n)
        self._add_d((a, e), n)

    def drop_identity(self) -> None:
        n = self.current.pop(self.one, 0)
        if n:
            self._add_d((self.one, self.one), n)

    def _ordered(self) -> list[ModelSymp]:
        return sorted(self.current, key=ModelSymp.sort_key)

    @staticmethod
    def _basis_terms(f: CohVector) -> list[tuple[Monomial, int, Fraction]]:
        return sorted(((m, i, c) for i, x in enumerate(f.coords) for m, c in x.terms.items()),
                      key=lambda t: (t[1], t[0].sort_key()))

    def _atom(self, m: Monomial, i: int, c: Fraction) -> ModelSymp:
        return gm.symp0(CohVector.basis(self.genus, i) * PolyScalar({m: c}))

    def _is_atom(self, e: ModelSymp) -> bool:
        return e.cal.is_zero() and len(self._basis_terms(e.fC)) <= 1

    def split_general(self) -> None:
        """Break every element into single-basis-vector atoms."""
        while True:
            todo = [e for e in self._ordered() if not self._is_atom(e)]
            if not todo:
                return
            for e in todo:
                self._split_one(e)

    def _split_one(self, e: ModelSymp) -> None:
        g = self.genus
        if not e.fC.is_zero() and not e.cal.is_zero():
            self.split(e, gm.symp0(e.fC), gm.central(g, e.cal))
            return
        if not e.fC.is_zero():
            m, i, c = self._basis_terms(e.fC)[0]
            a = self._atom(m, i, c)
            rest_f = e.fC - a.fC
            # a * (rest_f, c') = (fC, c' + iota(a, rest_f))
            self.split(e, a, gm.symp0(rest_f, -iota(a.fC, rest_f)))
            return
        terms = e.cal.items()
        if len(terms) > 1:
            m, c = terms[0]
            first = PolyScalar({m: c})
            self.split(e, gm.central(g, first), gm.central(g, e.cal - first))
            return
        self._split_commutator(e)

    def _split_commutator(self, e: ModelSymp) -> None:
        """A central element ``(0, c)`` equals ``[a, b]`` with ``2 iota(a, b) = c``."""
        g = self.genus
        (m, c), = e.cal.items()
        j, s = 1, Fraction(1)
        if self.rng is not None:
            j = self.rng.randint(1, g)
            s = Fraction(self.rng.choice([1, 2, 3, -1, -2]), self.rng.choice([1, 2]))
        a = gm.symp0(CohVector.x(g, j) * PolyScalar({m: c / (2 * s)}))
        b = gm.symp0(CohVector.y(g, j) * s)
        a_inv, b_inv = gm.inverse(a), gm.inverse(b)
        rest1 = gm.product([b, a_inv, b_inv])
        rest2 = gm.compose(a_inv, b_inv)
        self.split(e, a, rest1)
        self.split(rest1, b, rest2)
        self.split(rest2, a_inv, b_inv)

    def _line_atoms(self, m: Monomial, i: int) -> list[tuple[ModelSymp, Fraction]]:
        out = []
        for e in self._ordered():
            if e != self.one:
                (m2, i2, c), = self._basis_terms(e.fC)
                if (m2, i2) == (m, i):
                    out.append((e, c))
        return out

    def collect_lines(self) -> None:
        """Reduce atoms on each basis line to integer multiples of one unit atom."""
        lines = set()
        for e in self.current:
            if e != self.one:
                (m, i, _), = self._basis_terms(e.fC)
                lines.add((i, m))
        for i, m in sorted(lines, key=lambda t: (t[0], t[1].sort_key())):
            atoms = self._line_atoms(m, i)
            den = lcm(*(c.denominator for _, c in atoms))
            unit = self._atom(m, i, Fraction(1, den))
            for e, c in atoms:
                if c < 0:
                    self.invert(e)
            while True:
                atoms = [(e, c) for e, c in self._line_atoms(m, i) if c * den > 1]
                if not atoms:
                    break
                e, c = max(atoms, key=lambda t: t[1])
                self.split(e, unit, self._atom(m, i, c - Fraction(1, den)))

    def perturb(self, count: int) -> None:
        """Add the boundary of a random 3-chain of the identity component to ``d``."""
        rng = self.rng
        for _ in range(count):
            t = tuple(random_symp0(rng, self.genus) for _ in range(3))
            coef = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            for sign, face in face_terms(t):
                self._add_d(face, sign * coef)


def random_symp0(rng: random.Random, g: int, symbols: Sequence[str] = ("t1",), density: float = 0.5) -> ModelSymp:
    coords = []
    for _ in range(2 * g):
        x = ZERO
        if rng.random() < density:
            x = x + Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        if symbols and rng.random() < density / 2:
            x = x + PolyScalar.symbol(rng.choice(list(symbols))) * rng.randint(-2, 2)
        coords.append(x)
    return gm.symp0(CohVector(g, coords), Fraction(rng.randint(-2, 2)))


def express_as_boundary(z: BarChain, rng: random.Random | None = None, perturbations: int = 2) -> BarChain:
    """A 2-chain ``d`` in the identity component with ``boundary(d) == z``.

    Every element of ``z`` must lie in the identity component and the
    coefficient-weighted sum of their fluxes must vanish.  With ``rng`` the
    commutator witnesses are randomised and random boundaries are added.
    """
    if z.degree != 1:
        raise ValueError("express_as_boundary takes a 1-chain")
    if z.is_zero():
        return BarChain.zero(2, z.genus)
    gm.require_symp0(*(t[0] for t in z.terms))
    total = CohVector.zero(z.genus)
    for (e,), c in z.terms.items():
        total = total + e.fC * c
    if not total.is_zero():
        raise NotABoundaryError(f"not a boundary: total flux {total} is nonzero")
    solver = _Solver(z, rng)
    solver.split_general()
    solver.collect_lines()
    solver.drop_identity()
    if solver.current:
        raise NotABoundaryError("not a boundary: residual terms survive reduction")
    if rng is not None and perturbations:
        solver.perturb(perturbations)
    d = BarChain(2, solver.d, z.genus)
    if boundary(d) != z:
        raise RuntimeError("boundary solver produced a wrong witness")
    return d


# --- lifting twisted cycles ------------------------------------------------------------

def block(q: ModelSymp, k: ModelSymp) -> BarChain:
    """``(q,k) + (qk,q^-1) - (q,q^-1) - (id,id)``, whose boundary is ``(k) - (q k q^-1)``."""
    q_inv = gm.inverse(q)
    one = gm.identity(q.genus)
    return BarChain(2, [((q, k), 1), ((gm.compose(q, k), q_inv), 1), ((q, q_inv), -1), ((one, one), -1)])


def twisted_boundary(data: Sequence[tuple[ModelSymp, ModelSymp, int]]) -> CohVector:
    """Boundary of the twisted 1-chain ``sum sign q (x) [k]``: ``sum sign (q.u - u)``."""
    g = data[0][0].genus
    total = CohVector.zero(g)
    for q, k, sign in data:
        total = total + (q.act(k.fC) - k.fC) * sign
    return total


def lift_twisted_cycle(data: Sequence[tuple[ModelSymp, ModelSymp, int]], rng: random.Random | None = None,
                       perturbations: int = 2) -> BarChain:
    """Lift a twisted 1-cycle with kernel coefficients to an honest 2-cycle of the group."""
    if not data:
        raise ValueError("empty data")
    for _, k, _ in data:
        gm.require_symp0(k)
    if not twisted_boundary(data).is_zero():
        raise NotACycleError("the twisted 1-chain is not a cycle")
    chain = BarChain.zero(2, data[0][0].genus)
    z = BarChain.zero(1, data[0][0].genus)
    for q, k, sign in data:
        chain = chain + block(q, k) * sign
        conj = gm.product([q, k, gm.inverse(q)])
        z = z + BarChain(1, [((conj,), sign), ((k,), -sign)])
    out = chain + express_as_boundary(z, rng, perturbations)
    if not is_cycle(out):
        raise RuntimeError("lifted chain is not a cycle")
    return out


# --- the mapping-class image -------------------------------------------------------------

def p_image(c: BarChain) -> BarChain:
    return c.map_elements(gm.project_mapping_class)


def p_trivial_certificate(z: BarChain, witness: BarChain | None = None) -> bool:
    """True if the mapping-class image of the 2-cycle ``z`` (minus ``boundary(witness)``) is a boundary.

    Degenerate tuples are moved to ``(1,1)`` using the boundaries of ``(q,1,1)``
    and ``(1,1,q)``; the certificate requires nothing else to be left over.
    """
    image = p_image(z)
    if witness is not None:
        image = image - boundary(p_image(witness))
    if image.is_zero():
        return True
    one = gm.identity(image.genus)
    leftover = Fraction(0)
    for (a, b), c in image.terms.items():
        if a == one or b == one:
            leftover += c
        else:
            return False
    return leftover == 0
