"""Exact scalars: rationals, the polynomial model of the reals, and symmetric powers.

The reals are modelled as ``Q[symbols]`` where the symbols stand for finitely
many algebraically independent real numbers.  ``SymElement`` lives in the
symmetric power ``S^k_Q(R)``: its basis letters are "hatted" monomials of the
polynomial ring (the constant monomial ``1`` included).  A letter can also be a
sorted pair of monomials, which is how ``S^k(S^2_Q R)`` is represented.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from itertools import product as _cartesian
from typing import Iterable, Mapping, Union

Rational = Fraction
Number = Union[int, Fraction]

_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


class UnboundSymbolError(KeyError):
    """Raised when numeric evaluation meets a symbol missing from the environment."""


def as_fraction(value: Number | str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not a rational: {value!r}")


@total_ordering
class Monomial:
    """Commutative monomial in named symbols; the empty monomial is ``1``."""

    __slots__ = ("powers", "_hash")

    def __init__(self, powers: Iterable[tuple[str, int]] = ()):
        merged: dict[str, int] = {}
        for name, exp in powers:
            if not _NAME.match(name):
                raise ValueError(f"bad symbol name {name!r}")
            if exp < 0:
                raise ValueError("negative exponent")
            if exp:
                merged[name] = merged.get(name, 0) + exp
        self.powers: tuple[tuple[str, int], ...] = tuple(sorted(merged.items()))
        self._hash = hash(self.powers)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.powers)

    def is_one(self) -> bool:
        return not self.powers

    def symbols(self) -> set[str]:
        return {n for n, _ in self.powers}

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.powers + other.powers)

    def sort_key(self):
        return (self.degree, self.powers)

    def __lt__(self, other: "Monomial") -> bool:
        return self.sort_key() < other.sort_key()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self.powers == other.powers

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        if not self.powers:
            return "1"
        return "*".join(n if e == 1 else f"{n}^{e}" for n, e in self.powers)

    __repr__ = __str__


ONE_MONOMIAL = Monomial()


class PolyScalar:
    """Element of ``Q[symbols]``; immutable, hashable, no zero coefficients stored."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coef in terms.items():
                c = as_fraction(coef)
                if c:
                    clean[mono] = c
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def const(cls, value: Number | str) -> "PolyScalar":
        return cls({ONE_MONOMIAL: as_fraction(value)})

    @classmethod
    def symbol(cls, name: str) -> "PolyScalar":
        return cls({Monomial([(name, 1)]): 1})

    @classmethod
    def coerce(cls, value) -> "PolyScalar":
        if isinstance(value, PolyScalar):
            return value
        if isinstance(value, str):
            return parse_poly(value)
        return cls.const(value)

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return all(m.is_one() for m in self._terms)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._terms.get(ONE_MONOMIAL, Fraction(0))

    def symbols(self) -> set[str]:
        out: set[str] = set()
        for m in self._terms:
            out |= m.symbols()
        return out

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other) -> "PolyScalar":
        if not isinstance(other, PolyScalar):
            if isinstance(other, (int, Fraction)):
                other = PolyScalar.const(other)
            else:
                return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return PolyScalar(out)

    __radd__ = __add__

    def __neg__(self) -> "PolyScalar":
        return PolyScalar({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "PolyScalar":
        if not isinstance(other, (PolyScalar, int, Fraction)):
            return NotImplemented
        return self + (-PolyScalar.coerce(other))

    def __rsub__(self, other) -> "PolyScalar":
        return PolyScalar.coerce(other) - self

    def __mul__(self, other) -> "PolyScalar":
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return PolyScalar({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, PolyScalar):
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for (m1, c1), (m2, c2) in _cartesian(self._terms.items(), other._terms.items()):
            m = m1 * m2
            out[m] = out.get(m, 0) + c1 * c2
        return PolyScalar(out)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "PolyScalar":
        return self * (1 / as_fraction(other))

    def __pow__(self, n: int) -> "PolyScalar":
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PolyScalar):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == PolyScalar.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"PolyScalar({format_poly(self)!r})"


ZERO = PolyScalar()
ONE = PolyScalar.const(1)


def symbols(names: str | Iterable[str]) -> tuple[PolyScalar, ...]:
    """``symbols("t1 t2")`` -> the corresponding generators of the scalar ring."""
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    names = list(names)
    if len(set(names)) != len(names):
        raise ValueError("symbol names must be unique")
    return tuple(PolyScalar.symbol(n) for n in names)


def eval_numeric(a: PolyScalar, env: Mapping[str, Number]) -> Fraction:
    total = Fraction(0)
    for mono, coef in a.terms.items():
        value = coef
        for name, exp in mono.powers:
            if name not in env:
                raise UnboundSymbolError(f"symbol {name!r} is unbound")
            value *= as_fraction(env[name]) ** exp
        total += value
    return total


# --- symmetric powers -----------------------------------------------------------

def _letter_key(letter):
    if isinstance(letter, Monomial):
        return (0, letter.sort_key())
    return (1, tuple(m.sort_key() for m in letter))


def _sorted_letters(letters) -> tuple:
    return tuple(sorted(letters, key=_letter_key))


class SymElement:
    """Element of a symmetric power with rational coefficients.

    Keys are sorted tuples of letters (multisets).  A letter is a ``Monomial``
    (the hatted monomial) or a sorted pair of monomials (a basis element of
    ``S^2_Q R`` used as a letter of ``S^k(S^2_Q R)``).
    """

    __slots__ = ("degree", "_terms", "_hash")

    def __init__(self, degree: int, terms: Mapping[tuple, Number] | None = None):
        clean: dict[tuple, Fraction] = {}
        if terms:
            for key, coef in terms.items():
                if len(key) != degree:
                    raise ValueError(f"key {key} does not have degree {degree}")
                c = as_fraction(coef)
                if c:
                    k = _sorted_letters(key)
                    clean[k] = clean.get(k, 0) + c
            clean = {k: c for k, c in clean.items() if c}
        self.degree = degree
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def zero(cls, degree: int) -> "SymElement":
        return cls(degree)

    @property
    def terms(self) -> Mapping[tuple, Fraction]:
        return self._terms

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: tuple(_letter_key(x) for x in kv[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check(self, other: "SymElement") -> None:
        if self._terms and other._terms and self.degree != other.degree:
            raise ValueError(f"degree mismatch {self.degree} vs {other.degree}")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, SymElement):
            return NotImplemented
        self._check(other)
        degree = self.degree if self._terms else other.degree
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return SymElement(degree, out)

    __radd__ = __add__

    def __neg__(self) -> "SymElement":
        return SymElement(self.degree, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SymElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SymElement(self.degree, {k: c * other for k, c in self._terms.items()})
        if isinstance(other, SymElement):
            return sym_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SymElement):
            if not self._terms and not other._terms:
                return True
            return self.degree == other.degree and self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.degree, frozenset(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_sym(self)

    def __repr__(self) -> str:
        return f"SymElement({self.degree}, {format_sym(self)!r})"


def hat(a: PolyScalar | Number) -> SymElement:
    """Q-linear map ``R -> S^1_Q R`` hatting each monomial of ``a``."""
    a = PolyScalar.coerce(a)
    return SymElement(1, {(m,): c for m, c in a.terms.items()})


def sym_mul(s: SymElement, t: SymElement) -> SymElement:
    out: dict[tuple, Fraction] = {}
    for (k1, c1), (k2, c2) in _cartesian(s.terms.items(), t.terms.items()):
        k = _sorted_letters(k1 + k2)
        out[k] = out.get(k, 0) + c1 * c2
    return SymElement(s.degree + t.degree, out)


def _project_letter(letter) -> PolyScalar:
    if isinstance(letter, Monomial):
        return PolyScalar({letter: 1})
    out = ONE
    for m in letter:
        out = out * PolyScalar({m: 1})
    return out


def project(s: SymElement) -> PolyScalar:
    """Multiply out the hatted letters: the natural projection to ``R``."""
    total = ZERO
    for key, coef in s.terms.items():
        term = PolyScalar.const(coef)
        for letter in key:
            term = term * _project_letter(letter)
        total = total + term
    return total


def nest(s: SymElement) -> SymElement:
    """View a degree-2 element of ``S^*_Q R`` as a degree-1 element of ``S^*(S^2_Q R)``."""
    if s.terms and s.degree != 2:
        raise ValueError("nest expects an element of S^2")
    for key in s.terms:
        if not all(isinstance(x, Monomial) for x in key):
            raise ValueError("nest expects monomial letters")
    return SymElement(1, {(key,): c for key, c in s.terms.items()})


def s2_product(factors: Iterable[SymElement]) -> SymElement:
    """Product in ``S^k(S^2_Q R)`` of k elements of ``S^2_Q R``."""
    out: SymElement | None = None
    for f in factors:
        n = nest(f)
        out = n if out is None else sym_mul(out, n)
    if out is None:
        raise ValueError("empty product")
    return out


# --- text forms -----------------------------------------------------------------

def format_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_term(coef: Fraction, body: str) -> str:
    if body == "1":
        return format_fraction(coef)
    return f"{format_fraction(coef)}*{body}"


def format_poly(a: PolyScalar) -> str:
    if a.is_zero():
        return "0"
    return " + ".join(_format_term(c, str(m)) for m, c in a.items())


def _format_letter(letter) -> str:
    if isinstance(letter, Monomial):
        return f"hat({letter})"
    return "[" + "*".join(f"hat({m})" for m in letter) + "]"


def format_sym(s: SymElement) -> str:
    if s.is_zero():
        return "0"
    return " + ".join(
        f"{format_fraction(c)}*" + "*".join(_format_letter(x) for x in key) for key, c in s.items()
    )


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()\[\]]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


def _parse_monomial_tokens(tokens, i):
    """Parse ``name[^e]*name...`` or ``1``; returns (Monomial, next index)."""
    powers = []
    while True:
        kind, val = tokens[i]
        if kind == "num" and val == "1":
            i += 1
        elif kind == "name":
            exp = 1
            i += 1
            if i < len(tokens) and tokens[i] == ("op", "^"):
                exp = int(tokens[i + 1][1])
                i += 2
            powers.append((val, exp))
        else:
            raise ValueError(f"unexpected token {val!r} in monomial")
        if i < len(tokens) and tokens[i] == ("op", "*") and i + 1 < len(tokens) and tokens[i + 1][0] == "name":
            i += 1
            continue
        return Monomial(powers), i


def _split_signed_terms(tokens):
    terms, current, sign = [], [], 1
    for tok in tokens:
        if tok in (("op", "+"), ("op", "-")) and (current or terms or tok == ("op", "-")):
            if current:
                terms.append((sign, current))
            current = []
            sign = -1 if tok == ("op", "-") else 1
            continue
        current.append(tok)
    if current:
        terms.append((sign, current))
    return terms


def parse_poly(text: str) -> PolyScalar:
    """Inverse of :func:`format_poly`; also accepts plain ``p/q`` and ``t1 - 2*t2``."""
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty polynomial")
    total: dict[Monomial, Fraction] = {}
    for sign, toks in _split_signed_terms(tokens):
        coef = Fraction(sign)
        i = 0
        if toks[0][0] == "num" and not (len(toks) > 1 and toks[1] == ("op", "^")):
            coef *= Fraction(toks[0][1])
            i = 1
            if i < len(toks):
                if toks[i] != ("op", "*"):
                    raise ValueError(f"expected '*' in {text!r}")
                i += 1
        mono = ONE_MONOMIAL
        if i < len(toks):
            mono, i = _parse_monomial_tokens(toks, i)
        if i != len(toks):
            raise ValueError(f"trailing tokens in {text!r}")
        total[mono] = total.get(mono, 0) + coef
    return PolyScalar(total)


_HAT = re.compile(r"hat\(([^()]*)\)")


def _parse_hat_monomial(body: str) -> Monomial:
    tokens = _tokenize(body)
    mono, i = _parse_monomial_tokens(tokens, 0)
    if i != len(tokens):
        raise ValueError(f"bad hatted monomial {body!r}")
    return mono


def parse_sym(text: str) -> SymElement:
    """Inverse of :func:`format_sym`."""
    text = text.strip()
    if text == "0":
        return SymElement(0)
    total: dict[tuple, Fraction] = {}
    degree = None
    for chunk in re.split(r"\s\+\s", text):
        coef_text, _, rest = chunk.partition("*")
        coef = Fraction(coef_text.strip())
        letters = []
        for part in re.findall(r"\[[^\]]*\]|hat\([^()]*\)", rest):
            if part.startswith("["):
                letters.append(_sorted_letters(_parse_hat_monomial(b) for b in _HAT.findall(part)))
            else:
                letters.append(_parse_hat_monomial(_HAT.match(part).group(1)))
        key = tuple(letters)
        if degree is None:
            degree = len(key)
        total[_sorted_letters(key)] = total.get(_sorted_letters(key), 0) + coef
    return SymElement(degree or 0, total)
