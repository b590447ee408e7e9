"""The symplectic lattice H_1(Sigma_g), its dual H^1, and the exterior algebra on them.

Basis convention (fixed throughout): coordinate ``i-1`` is ``x_i`` and
coordinate ``g+i-1`` is ``y_i`` for ``i = 1..g``; cohomology uses the dual
basis ``x*_i, y*_i`` in the same slots.  With ``J = [[0, I], [-I, 0]]``::

    <x_i, y_j> = delta_ij          (intersection on H_1)
    iota(x*_i, y*_j) = delta_ij    (cup pairing on H^1)
    pd(x_i) = -y*_i,  pd(y_i) = x*_i
    t_c(a) = a - <a, c> c          (Dehn twist as a transvection)
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

from . import _linalg
from .scalars import ONE, ZERO, Monomial, PolyScalar, SymElement, hat, sym_mul

HOM = "H1"
COH = "H^1"


class GenusError(ValueError):
    pass


class NotSymplecticError(ValueError):
    pass


def check_genus(g: int) -> int:
    if not isinstance(g, int) or g < 2:
        raise GenusError(f"genus must be an integer >= 2, got {g!r}")
    return g


def x_index(g: int, i: int) -> int:
    if not 1 <= i <= g:
        raise IndexError(f"index {i} out of range 1..{g}")
    return i - 1


def y_index(g: int, i: int) -> int:
    if not 1 <= i <= g:
        raise IndexError(f"index {i} out of range 1..{g}")
    return g + i - 1


def basis_label(g: int, idx: int, space: str = HOM) -> str:
    star = "*" if space == COH else ""
    return f"x{idx + 1}{star}" if idx < g else f"y{idx - g + 1}{star}"


def form(g: int, a: int, b: int) -> int:
    """Entry ``J[a][b]`` of the symplectic form in the standard basis."""
    if a < g and b == a + g:
        return 1
    if a >= g and b == a - g:
        return -1
    return 0


# --- vectors --------------------------------------------------------------------

class _Vector:
    space = ""
    __slots__ = ("genus", "coords", "_hash")

    def __init__(self, genus: int, coords: Iterable):
        self.genus = check_genus(genus)
        self.coords: tuple[PolyScalar, ...] = tuple(PolyScalar.coerce(c) for c in coords)
        if len(self.coords) != 2 * genus:
            raise ValueError(f"expected {2 * genus} coordinates, got {len(self.coords)}")
        self._hash = None

    @classmethod
    def zero(cls, genus: int):
        return cls(genus, [ZERO] * (2 * genus))

    @classmethod
    def basis(cls, genus: int, idx: int):
        c = [ZERO] * (2 * genus)
        c[idx] = ONE
        return cls(genus, c)

    @classmethod
    def x(cls, genus: int, i: int):
        return cls.basis(genus, x_index(genus, i))

    @classmethod
    def y(cls, genus: int, i: int):
        return cls.basis(genus, y_index(genus, i))

    def _same(self, other) -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.genus != self.genus:
            raise GenusError(f"genus mismatch {self.genus} vs {other.genus}")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._same(other)
        return type(self)(self.genus, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __neg__(self):
        return type(self)(self.genus, [-a for a in self.coords])

    def __sub__(self, other):
        self._same(other)
        return type(self)(self.genus, [a - b for a, b in zip(self.coords, other.coords)])

    def __mul__(self, scalar):
        if isinstance(scalar, (int, Fraction, PolyScalar)):
            return type(self)(self.genus, [a * scalar for a in self.coords])
        return NotImplemented

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coords)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        return type(other) is type(self) and self.genus == other.genus and self.coords == other.coords

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.space, self.genus, self.coords))
        return self._hash

    def __str__(self) -> str:
        parts = []
        for idx, c in enumerate(self.coords):
            if c:
                label = basis_label(self.genus, idx, self.space)
                parts.append(label if c == 1 else f"({c})*{label}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]

    @classmethod
    def from_json(cls, genus: int, data: Sequence[str]):
        return cls(genus, [PolyScalar.coerce(c) for c in data])


class HomVector(_Vector):
    """Element of ``H_1(Sigma_g)`` with coordinates in the scalar ring."""

    space = HOM
    __slots__ = ()


class CohVector(_Vector):
    """Element of ``H^1(Sigma_g)`` in the dual basis ``x*_i, y*_i``."""

    space = COH
    __slots__ = ()


def _skew(a: _Vector, b: _Vector) -> PolyScalar:
    a._same(b)
    g = a.genus
    total = ZERO
    for i in range(g):
        total = total + a.coords[i] * b.coords[g + i] - a.coords[g + i] * b.coords[i]
    return total


def intersect(a: HomVector, b: HomVector) -> PolyScalar:
    if not isinstance(a, HomVector):
        raise TypeError("intersect takes homology vectors")
    return _skew(a, b)


def iota(u: CohVector, v: CohVector) -> PolyScalar:
    if not isinstance(u, CohVector):
        raise TypeError("iota takes cohomology vectors")
    return _skew(u, v)


def pd(a: HomVector) -> CohVector:
    g = a.genus
    return CohVector(g, list(a.coords[g:]) + [-c for c in a.coords[:g]])


def pd_inverse(u: CohVector) -> HomVector:
    g = u.genus
    return HomVector(g, [-c for c in u.coords[g:]] + list(u.coords[:g]))


def iota_disc(u: CohVector, v: CohVector) -> SymElement:
    """Discontinuous pairing: ``sum_ij iota(e_i, e_j) hat(a_i) hat(b_j)`` in ``S^2_Q R``."""
    u._same(v)
    g = u.genus
    total = SymElement.zero(2)
    for i in range(g):
        total = total + sym_mul(hat(u.coords[i]), hat(v.coords[g + i]))
        total = total - sym_mul(hat(u.coords[g + i]), hat(v.coords[i]))
    return total if total else SymElement.zero(2)


# --- integer symplectic matrices ---------------------------------------------------

Matrix = tuple[tuple[int, ...], ...]


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def j_matrix(g: int) -> Matrix:
    n = 2 * g
    return tuple(tuple(form(g, a, b) for b in range(n)) for a in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def is_symplectic(t: Matrix) -> bool:
    n = len(t)
    if n % 2 or any(len(row) != n for row in t):
        return False
    j = j_matrix(n // 2)
    return mat_mul(mat_mul(transpose(t), j), t) == j


def sp_inverse(t: Matrix) -> Matrix:
    """``T^{-1} = -J T^T J`` for symplectic ``T``."""
    j = j_matrix(len(t) // 2)
    m = mat_mul(mat_mul(j, transpose(t)), j)
    return tuple(tuple(-x for x in row) for row in m)


def apply_matrix(t: Matrix, v: _Vector):
    coords = []
    for row in t:
        acc = ZERO
        for a, c in zip(row, v.coords):
            if a:
                acc = acc + c * a
        coords.append(acc)
    return type(v)(v.genus, coords)


_GEN = re.compile(r"(lambda|λ|mu|μ|nu|ν)_?(\d+)\Z")
_KIND = {"λ": "lambda", "μ": "mu", "ν": "nu"}


def parse_generator(name: str) -> tuple[str, int]:
    m = _GEN.match(name.strip())
    if not m:
        raise ValueError(f"unknown generator {name!r}; expected lambda<i>, mu<i> or nu<i>")
    kind = _KIND.get(m.group(1), m.group(1))
    return kind, int(m.group(2))


def curve_class(name: str, g: int) -> HomVector:
    """Homology class of the Lickorish curve: x_i, y_i, or y_i - y_{i+1}."""
    kind, i = parse_generator(name)
    if kind == "lambda":
        return HomVector.x(g, i)
    if kind == "mu":
        return HomVector.y(g, i)
    if not 1 <= i <= g - 1:
        raise IndexError(f"nu_{i} needs 1 <= i <= {g - 1}")
    return HomVector.y(g, i) - HomVector.y(g, i + 1)


def transvection(c: HomVector) -> Matrix:
    g = c.genus
    cols = []
    for idx in range(2 * g):
        e = HomVector.basis(g, idx)
        image = e - c * intersect(e, c)
        cols.append([int(x.to_fraction()) for x in image.coords])
    return transpose(tuple(tuple(col) for col in cols))


def twist_matrix(name: str, g: int) -> Matrix:
    check_genus(g)
    return transvection(curve_class(name, g))


def word_matrix(word: Sequence[str], g: int) -> Matrix:
    out = identity_matrix(2 * g)
    for name in word:
        inverse = name.endswith("^-1")
        t = twist_matrix(name[:-3] if inverse else name, g)
        out = mat_mul(out, sp_inverse(t) if inverse else t)
    return out


def act_on_coh(t: Matrix) -> Matrix:
    """Matrix of ``w -> (T^{-1})^* w`` on H^1 in the dual basis, i.e. ``(T^{-1})^T``."""
    if not is_symplectic(t):
        raise NotSymplecticError("matrix is not symplectic")
    return transpose(sp_inverse(t))


# --- exterior algebra -------------------------------------------------------------

def merge_sign(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, tuple[int, ...]] | None:
    """Sign and sorted index tuple of ``e_a ^ e_b``; ``None`` if an index repeats."""
    if set(a) & set(b):
        return None
    inversions = sum(1 for i in a for j in b if i > j)
    return (-1 if inversions % 2 else 1), tuple(sorted(a + b))


class ExtElement:
    """Element of ``Lambda^k`` of H_1 or H^1 with scalar coefficients."""

    __slots__ = ("genus", "degree", "space", "_terms")

    def __init__(self, genus: int, degree: int, space: str = HOM,
                 terms: Mapping[tuple[int, ...], object] | None = None):
        self.genus = check_genus(genus)
        self.degree = degree
        if space not in (HOM, COH):
            raise ValueError(f"unknown space {space!r}")
        self.space = space
        clean: dict[tuple[int, ...], PolyScalar] = {}
        for key, coef in (terms or {}).items():
            key = tuple(key)
            if len(key) != degree or any(not 0 <= k < 2 * genus for k in key):
                raise ValueError(f"bad index tuple {key}")
            if len(set(key)) < len(key):
                continue
            order = sorted(range(len(key)), key=lambda p: key[p])
            sign = _perm_sign(order)
            skey = tuple(key[p] for p in order)
            val = clean.get(skey, ZERO) + PolyScalar.coerce(coef) * sign
            clean[skey] = val
        self._terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def from_vector(cls, v: _Vector) -> "ExtElement":
        return cls(v.genus, 1, v.space, {(i,): c for i, c in enumerate(v.coords) if c})

    @classmethod
    def basis(cls, genus: int, key: Sequence[int], space: str = HOM) -> "ExtElement":
        return cls(genus, len(key), space, {tuple(key): ONE})

    @classmethod
    def one(cls, genus: int, space: str = HOM) -> "ExtElement":
        return cls(genus, 0, space, {(): ONE})

    @property
    def terms(self) -> Mapping[tuple[int, ...], PolyScalar]:
        return self._terms

    def _same(self, other: "ExtElement") -> None:
        if not isinstance(other, ExtElement):
            raise TypeError("expected ExtElement")
        if other.genus != self.genus or other.space != self.space:
            raise GenusError("exterior elements live in different spaces")

    def __add__(self, other):
        self._same(other)
        if self._terms and other._terms and self.degree != other.degree:
            raise ValueError("degree mismatch")
        degree = self.degree if self._terms else other.degree
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, ZERO) + c
        return ExtElement(self.genus, degree, self.space, out)

    def __neg__(self):
        return ExtElement(self.genus, self.degree, self.space, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, (int, Fraction, PolyScalar)):
            return ExtElement(self.genus, self.degree, self.space,
                              {k: c * scalar for k, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __xor__(self, other: "ExtElement") -> "ExtElement":
        return wedge(self, other)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, ExtElement):
            return NotImplemented
        if not self._terms and not other._terms:
            return self.genus == other.genus and self.space == other.space
        return (self.genus, self.degree, self.space, self._terms) == \
            (other.genus, other.degree, other.space, other._terms)

    def __hash__(self) -> int:
        return hash((self.genus, self.degree, self.space, frozenset(self._terms.items())))

    def coordinates(self) -> list[Fraction]:
        """Rational coordinate vector in the lexicographic basis of Lambda^k."""
        return [self._terms.get(key, ZERO).to_fraction() for key in ext_basis_keys(self.genus, self.degree)]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for key in sorted(self._terms):
            word = "^".join(basis_label(self.genus, i, self.space) for i in key) or "1"
            c = self._terms[key]
            parts.append(word if c == 1 else f"({c})*{word}")
        return " + ".join(parts)

    __repr__ = __str__


def _perm_sign(order: Sequence[int]) -> int:
    sign = 1
    seen = list(order)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


def wedge(a: ExtElement, b: ExtElement) -> ExtElement:
    a._same(b)
    out: dict[tuple[int, ...], PolyScalar] = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            merged = merge_sign(ka, kb)
            if merged is None:
                continue
            sign, key = merged
            out[key] = out.get(key, ZERO) + ca * cb * sign
    return ExtElement(a.genus, a.degree + b.degree, a.space, out)


def omega0(g: int, space: str = HOM) -> ExtElement:
    """``sum_i x_i ^ y_i``."""
    return ExtElement(g, 2, space, {(i, g + i): ONE for i in range(g)})


@lru_cache(maxsize=None)
def ext_basis_keys(g: int, k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(combinations(range(2 * g), k))


def _contract_key(g: int, key: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    out: dict[tuple[int, ...], int] = {}
    for p, q in combinations(range(len(key)), 2):
        pairing = form(g, key[p], key[q])
        if not pairing:
            continue
        # positions are 1-based in the sign (-1)^(p+q-1)
        sign = -1 if ((p + 1) + (q + 1) - 1) % 2 else 1
        rest = tuple(k for n, k in enumerate(key) if n not in (p, q))
        out[rest] = out.get(rest, 0) + 2 * sign * pairing
    return out


def contract(w: ExtElement) -> ExtElement:
    """Contraction ``Lambda^k -> Lambda^{k-2}`` by the form, normalised so C(x1^y1) = 2."""
    if w.degree < 2:
        raise ValueError("contraction needs degree >= 2")
    out: dict[tuple[int, ...], PolyScalar] = {}
    for key, c in w.terms.items():
        for rest, n in _contract_key(w.genus, key).items():
            out[rest] = out.get(rest, ZERO) + c * n
    return ExtElement(w.genus, w.degree - 2, w.space, out)


def contraction_matrix(g: int, k: int) -> list[list[Fraction]]:
    rows_keys = ext_basis_keys(g, k - 2)
    index = {key: n for n, key in enumerate(rows_keys)}
    cols = ext_basis_keys(g, k)
    m = [[Fraction(0)] * len(cols) for _ in rows_keys]
    for j, key in enumerate(cols):
        for rest, n in _contract_key(g, key).items():
            m[index[rest]][j] += n
    return m


def _from_coordinates(g: int, k: int, vec: Sequence[Fraction], space: str = HOM) -> ExtElement:
    return ExtElement(g, k, space, {key: PolyScalar.const(c) for key, c in zip(ext_basis_keys(g, k), vec) if c})


def rep_1k_basis(g: int, k: int) -> list[ExtElement]:
    """Basis over Q of the kernel of the contraction on ``Lambda^k H_1`` (the rep ``[1^k]``)."""
    check_genus(g)
    if not 1 <= k <= g:
        raise ValueError(f"k must satisfy 1 <= k <= g, got k={k}")
    n = comb(2 * g, k)
    if k < 2:
        return [_from_coordinates(g, k, [Fraction(int(i == j)) for j in range(n)]) for i in range(n)]
    return [_from_coordinates(g, k, v) for v in _linalg.nullspace(contraction_matrix(g, k), n)]


def rep_1k_dimension(g: int, k: int) -> int:
    return comb(2 * g, k) - (comb(2 * g, k - 2) if k >= 2 else 0)


@lru_cache(maxsize=None)
def omega_ideal(g: int, d: int) -> tuple[list[list[Fraction]], list[int]]:
    """rref of the degree-d part of the ideal generated by ``omega0 ^ H_1``."""
    if d < 3:
        return [], []
    w = omega0(g)
    rows = []
    for h in range(2 * g):
        wh = wedge(w, ExtElement.basis(g, (h,)))
        for key in ext_basis_keys(g, d - 3):
            rows.append(wedge(wh, ExtElement.basis(g, key)).coordinates())
    return _linalg.rref(rows)


def ideal_quotient_dims(g: int, up_to: int) -> list[int]:
    """Dimensions of ``Lambda^d H_1`` modulo the ideal generated by ``omega0 ^ H_1``, d=0..up_to."""
    check_genus(g)
    if not 0 <= up_to <= 2 * g:
        raise ValueError(f"up_to must lie in 0..{2 * g}")
    return [comb(2 * g, d) - len(omega_ideal(g, d)[1]) for d in range(up_to + 1)]


def pair_ext(xi: ExtElement, eta: ExtElement) -> PolyScalar:
    """Kronecker pairing of ``Lambda^k H_1`` with ``Lambda^k H^1`` (``<x_i, x*_j> = delta_ij``)."""
    if xi.space != HOM or eta.space != COH:
        raise TypeError("pair_ext pairs homology with cohomology")
    if xi.genus != eta.genus:
        raise GenusError("genus mismatch")
    if xi.degree != eta.degree and xi.terms and eta.terms:
        raise ValueError(f"degree mismatch {xi.degree} vs {eta.degree}")
    total = ZERO
    for key, c in xi.terms.items():
        other = eta.terms.get(key)
        if other is not None:
            total = total + c * other
    return total


def act_on_ext(t: Matrix, w: ExtElement) -> ExtElement:
    """Induced action on Lambda^k: T on homology, (T^{-1})^T on cohomology."""
    m = t if w.space == HOM else act_on_coh(t)
    out = ExtElement(w.genus, w.degree, w.space)
    for key, c in w.terms.items():
        term = ExtElement.one(w.genus, w.space) * c
        for idx in key:
            col = ExtElement(w.genus, 1, w.space, {(r,): m[r][idx] for r in range(len(m)) if m[r][idx]})
            term = wedge(term, col)
        out = out + term if out.terms else term
    return out


# --- Z-exterior square of H^1(R) and its coinvariants ---------------------------------

BasisVector = tuple[Monomial, int]


def q_coordinates(u: CohVector) -> dict[BasisVector, Fraction]:
    """Coordinates of ``u`` in the Q-basis ``{m * e_i}`` of H^1 over the scalar ring."""
    out: dict[BasisVector, Fraction] = {}
    for i, c in enumerate(u.coords):
        for m, coef in c.terms.items():
            out[(m, i)] = coef
    return out


class QWedge2:
    """Element of ``Lambda^2`` over Q (equivalently over Z) of H^1 with real coefficients.

    Unlike ``ExtElement`` this keeps the Q-structure: ``(t1 x*1) ^ (t2 y*1)`` and
    ``(t1 t2 x*1) ^ y*1`` are different elements.
    """

    __slots__ = ("genus", "_terms")

    def __init__(self, genus: int, terms: Mapping[tuple[BasisVector, BasisVector], Fraction] | None = None):
        self.genus = check_genus(genus)
        clean: dict = {}
        for (a, b), c in (terms or {}).items():
            if a == b or not c:
                continue
            key, sign = ((a, b), 1) if (a[1], a[0]) < (b[1], b[0]) else ((b, a), -1)
            clean[key] = clean.get(key, 0) + sign * Fraction(c)
        self._terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def wedge(cls, u: CohVector, v: CohVector) -> "QWedge2":
        u._same(v)
        terms: dict = {}
        for a, ca in q_coordinates(u).items():
            for b, cb in q_coordinates(v).items():
                terms[(a, b)] = terms.get((a, b), 0) + ca * cb
        return cls(u.genus, terms)

    @property
    def terms(self):
        return self._terms

    def decomposables(self) -> list[tuple[Fraction, CohVector, CohVector]]:
        out = []
        for ((ma, ia), (mb, ib)), c in self._terms.items():
            u = CohVector.basis(self.genus, ia) * PolyScalar({ma: 1})
            v = CohVector.basis(self.genus, ib) * PolyScalar({mb: 1})
            out.append((c, u, v))
        return out

    def __add__(self, other: "QWedge2") -> "QWedge2":
        terms = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms.get(k, 0) + c
        return QWedge2(self.genus, terms)

    def __mul__(self, c) -> "QWedge2":
        return QWedge2(self.genus, {k: v * c for k, v in self._terms.items()})

    __rmul__ = __mul__

    def act(self, t: Matrix) -> "QWedge2":
        a = act_on_coh(t)
        out = QWedge2(self.genus)
        for c, u, v in self.decomposables():
            out = out + QWedge2.wedge(apply_matrix(a, u), apply_matrix(a, v)) * c
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QWedge2) and self.genus == other.genus and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.genus, frozenset(self._terms.items())))


def la2_coinvariant(w: QWedge2 | Iterable[tuple[Fraction, CohVector, CohVector]]) -> SymElement:
    """The coinvariants map ``Lambda^2_Z H^1(R) -> S^2_Q R``: ``(a u)^(b v) -> iota(u, v) hat(a) hat(b)``."""
    pieces = w.decomposables() if isinstance(w, QWedge2) else w
    total = SymElement.zero(2)
    for c, u, v in pieces:
        total = total + iota_disc(u, v) * Fraction(c)
    return total
