"""Finite-data model of the compactly supported symplectomorphism group.

An element carries four pieces of data: the integral symplectic matrix ``T``
of its action on H_1, the value ``fC`` of the compactly supported extended
flux, the rational vector ``kv`` coming from the mapping class part, and a
Calabi value ``cal``.  Writing ``A = (T^{-1})^T`` for the action on H^1::

    (T1, f1, k1, c1) * (T2, f2, k2, c2)
        = (T1 T2, f1 + A1 f2, k1 + A1 k2, c1 + c2 + iota(f1, A1 f2))

With ``T = I`` and ``kv = 0`` this is a Heisenberg group whose commutator
is ``2 iota``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .scalars import ZERO, PolyScalar
from .symplectic import (
    CohVector,
    GenusError,
    Matrix,
    NotSymplecticError,
    act_on_coh,
    apply_matrix,
    check_genus,
    identity_matrix,
    is_symplectic,
    iota,
    mat_mul,
    sp_inverse,
    twist_matrix,
    word_matrix,
)

SUBGROUPS = ("full", "symp0", "ham", "torelli")


class SubgroupError(ValueError):
    pass


@lru_cache(maxsize=4096)
def coh_action(t: Matrix) -> Matrix:
    return act_on_coh(t)


@lru_cache(maxsize=64)
def _identity(n: int) -> Matrix:
    return identity_matrix(n)


@dataclass(frozen=True)
class ModelSymp:
    genus: int
    T: Matrix
    fC: CohVector
    kv: CohVector
    cal: PolyScalar

    def __post_init__(self):
        check_genus(self.genus)
        t = tuple(tuple(int(x) for x in row) for row in self.T)
        object.__setattr__(self, "T", t)
        if len(t) != 2 * self.genus:
            raise GenusError("matrix size does not match genus")
        if t != _identity(2 * self.genus) and not is_symplectic(t):
            raise NotSymplecticError("action matrix is not symplectic")
        for name in ("fC", "kv"):
            v = getattr(self, name)
            if not isinstance(v, CohVector) or v.genus != self.genus:
                raise GenusError(f"{name} must be a genus-{self.genus} CohVector")
        if not self.kv.is_rational():
            raise ValueError("kv must have rational entries")
        object.__setattr__(self, "cal", PolyScalar.coerce(self.cal))

    @property
    def A(self) -> Matrix:
        """Action on H^1, ``w -> (phi^{-1})^* w``."""
        return coh_action(self.T)

    @property
    def acts_trivially(self) -> bool:
        return self.T == _identity(2 * self.genus)

    def act(self, v: CohVector) -> CohVector:
        return v if self.acts_trivially else apply_matrix(self.A, v)

    def __mul__(self, other: "ModelSymp") -> "ModelSymp":
        return compose(self, other)

    def sort_key(self) -> tuple:
        return (self.T, self.fC.to_json(), self.kv.to_json(), str(self.cal))

    def __str__(self) -> str:
        t = "I" if self.acts_trivially else "T"
        return f"({t}; fC={self.fC}; kv={self.kv}; cal={self.cal})"


def identity(g: int) -> ModelSymp:
    z = CohVector.zero(g)
    return ModelSymp(g, _identity(2 * g), z, z, ZERO)


def make(g: int, fC: CohVector | None = None, kv: CohVector | None = None, cal=ZERO,
         T: Matrix | None = None) -> ModelSymp:
    z = CohVector.zero(g)
    return ModelSymp(g, T if T is not None else _identity(2 * g), fC if fC is not None else z,
                     kv if kv is not None else z, PolyScalar.coerce(cal))


def symp0(fC: CohVector, cal=ZERO) -> ModelSymp:
    """Element of the identity component: trivial action, no mapping-class part."""
    return make(fC.genus, fC=fC, cal=cal)


def central(g: int, cal) -> ModelSymp:
    return make(g, cal=cal)


def _same_genus(a: ModelSymp, b: ModelSymp) -> None:
    if a.genus != b.genus:
        raise GenusError(f"genus mismatch {a.genus} vs {b.genus}")


def compose(a: ModelSymp, b: ModelSymp) -> ModelSymp:
    _same_genus(a, b)
    f2 = a.act(b.fC)
    k2 = a.act(b.kv)
    t = b.T if a.acts_trivially else (a.T if b.acts_trivially else mat_mul(a.T, b.T))
    return ModelSymp(a.genus, t, a.fC + f2, a.kv + k2, a.cal + b.cal + iota(a.fC, f2))


def inverse(a: ModelSymp) -> ModelSymp:
    if a.acts_trivially:
        return ModelSymp(a.genus, a.T, -a.fC, -a.kv, -a.cal)
    t_inv = sp_inverse(a.T)
    a_inv = coh_action(t_inv)
    return ModelSymp(a.genus, t_inv, -apply_matrix(a_inv, a.fC), -apply_matrix(a_inv, a.kv), -a.cal)


def product(elements: Sequence[ModelSymp], g: int | None = None) -> ModelSymp:
    if not elements:
        if g is None:
            raise ValueError("empty product needs a genus")
        return identity(g)
    out = elements[0]
    for e in elements[1:]:
        out = compose(out, e)
    return out


def flux_tilde(a: ModelSymp) -> CohVector:
    """Extended flux, with the coboundary ambiguity fixed so that it equals ``fC + kv``."""
    return a.fC + a.kv


def in_subgroup(a: ModelSymp, tag: str) -> bool:
    if tag == "full":
        return True
    if tag == "symp0":
        return a.acts_trivially and a.kv.is_zero()
    if tag == "ham":
        return a.acts_trivially and a.kv.is_zero() and a.fC.is_zero()
    if tag == "torelli":
        return a.acts_trivially
    raise ValueError(f"unknown subgroup {tag!r}; expected one of {SUBGROUPS}")


def require_symp0(*elements: ModelSymp) -> None:
    for e in elements:
        if not in_subgroup(e, "symp0"):
            raise SubgroupError(f"element {e} is not in the identity component")


def commutator(a: ModelSymp, b: ModelSymp) -> ModelSymp:
    """``a b a^{-1} b^{-1}`` for elements of the identity component; central with Calabi ``2 iota``."""
    require_symp0(a, b)
    return product([a, b, inverse(a), inverse(b)])


def lift_generator(name: str, fC: CohVector | None = None, kv: CohVector | None = None,
                   cal=ZERO, *, genus: int | None = None) -> ModelSymp:
    """Lift of a Lickorish twist with free decoration data."""
    g = genus if genus is not None else (fC or kv).genus
    return make(g, fC=fC, kv=kv, cal=cal, T=twist_matrix(name, g))


def from_word(word: Sequence[str], g: int, fC=None, kv=None, cal=ZERO) -> ModelSymp:
    return make(g, fC=fC, kv=kv, cal=cal, T=word_matrix(word, g))


# --- block embeddings ----------------------------------------------------------------

def embed_vector(v: CohVector, total: int, offset: int) -> CohVector:
    g = v.genus
    if offset < 0 or offset + g > total:
        raise ValueError("block does not fit")
    coords = [ZERO] * (2 * total)
    for i in range(g):
        coords[offset + i] = v.coords[i]
        coords[total + offset + i] = v.coords[g + i]
    return CohVector(total, coords)


def embed_matrix(t: Matrix, g: int, total: int, offset: int) -> Matrix:
    def place(idx: int) -> int:
        return offset + idx if idx < g else total + offset + idx - g

    m = [list(row) for row in identity_matrix(2 * total)]
    for r in range(2 * g):
        for c in range(2 * g):
            m[place(r)][place(c)] = t[r][c]
    return tuple(tuple(row) for row in m)


def embed(a: ModelSymp, total: int, offset: int) -> ModelSymp:
    """Extend by the identity outside a genus-``a.genus`` block starting at handle ``offset``."""
    return ModelSymp(total, embed_matrix(a.T, a.genus, total, offset),
                     embed_vector(a.fC, total, offset), embed_vector(a.kv, total, offset), a.cal)


def project_mapping_class(a: ModelSymp) -> ModelSymp:
    """Image in the quotient by the identity component: keep ``T`` and ``kv``."""
    z = CohVector.zero(a.genus)
    return ModelSymp(a.genus, a.T, z, a.kv, ZERO)
