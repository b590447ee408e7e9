"""JSON forms of elements, chains, values, and the cocycle registry."""
from __future__ import annotations

import random
import re
from fractions import Fraction
from typing import Any

from . import bar_calculus as bc
from . import cocycles as cc
from . import group_model as gm
from .bar_calculus import BarChain, BarCochain
from .group_model import ModelSymp
from .scalars import PolyScalar, SymElement, format_fraction, format_poly, format_sym, parse_poly
from .symplectic import CohVector, ExtElement, check_genus, omega0, wedge, x_index, y_index


class SchemaError(ValueError):
    pass


# --- values ------------------------------------------------------------------------------

def value_to_str(v) -> str:
    if isinstance(v, PolyScalar):
        return format_poly(v)
    if isinstance(v, SymElement):
        return format_sym(v)
    if isinstance(v, CohVector):
        return "[" + ", ".join(format_poly(c) for c in v.coords) + "]"
    if isinstance(v, Fraction):
        return format_fraction(v)
    return str(v)


# --- elements ----------------------------------------------------------------------------

def _vector(data, g: int, field: str) -> CohVector:
    if data is None:
        return CohVector.zero(g)
    if not isinstance(data, list) or len(data) != 2 * g:
        raise SchemaError(f"{field} must be a list of {2 * g} scalar strings")
    try:
        return CohVector(g, [parse_poly(str(x)) for x in data])
    except ValueError as exc:
        raise SchemaError(f"bad scalar in {field}: {exc}") from exc


def element_from_json(d: dict[str, Any]) -> ModelSymp:
    if not isinstance(d, dict) or "genus" not in d:
        raise SchemaError("element descriptor needs a genus")
    g = check_genus(d["genus"])
    fC = _vector(d.get("fC"), g, "fC")
    kv = _vector(d.get("kv"), g, "kv")
    cal = parse_poly(str(d.get("cal", "0")))
    if "word" in d and "matrix" in d:
        raise SchemaError("give either word or matrix, not both")
    if "matrix" in d:
        return gm.make(g, fC, kv, cal, T=tuple(tuple(int(x) for x in row) for row in d["matrix"]))
    return gm.from_word(list(d.get("word", [])), g, fC, kv, cal)


def element_to_json(e: ModelSymp) -> dict[str, Any]:
    return {
        "genus": e.genus,
        "matrix": [list(row) for row in e.T],
        "fC": [format_poly(c) for c in e.fC.coords],
        "kv": [format_poly(c) for c in e.kv.coords],
        "cal": format_poly(e.cal),
    }


# --- chains --------------------------------------------------------------------------------

def chain_to_json(c: BarChain) -> list[dict[str, Any]]:
    return [{"coef": format_fraction(coef), "tuple": [element_to_json(e) for e in tup]} for tup, coef in c.items()]


def chain_from_json(data, degree: int | None = None) -> BarChain:
    if isinstance(data, dict) and "construct" in data:
        return _construct(data)
    if not isinstance(data, list):
        raise SchemaError("chain must be a list of {coef, tuple} records or a construct")
    terms = []
    for rec in data:
        if not isinstance(rec, dict) or "tuple" not in rec:
            raise SchemaError("chain term needs a tuple")
        terms.append((tuple(element_from_json(e) for e in rec["tuple"]), Fraction(str(rec.get("coef", "1")))))
    if not terms:
        return BarChain.zero(degree or 0)
    lengths = {len(t) for t, _ in terms}
    if len(lengths) != 1:
        raise SchemaError("chain terms have different lengths")
    return BarChain(lengths.pop(), terms)


def _construct(d: dict[str, Any]) -> BarChain:
    kind = d["construct"]
    if kind == "cstar":
        g = check_genus(d.get("genus", 2))
        rng = random.Random(d["seed"]) if "seed" in d else None
        choices = cc.random_cstar_choices(rng, g, d.get("i", 1)) if rng is not None else None
        return cc.build_cstar_cycle(parse_poly(str(d.get("r", "1"))), d.get("i", 1), g, choices, rng)
    if kind == "torus":
        g = check_genus(d["genus"])
        return cc.torus_cycle([_vector(f, g, "flux") for f in d["fluxes"]])
    if kind == "cross":
        return bc.cross_product(chain_from_json(d["left"]), chain_from_json(d["right"]))
    raise SchemaError(f"unknown construct {kind!r}; expected cstar, torus or cross")


# --- exterior classes -----------------------------------------------------------------------

_FACTOR = re.compile(r"(x|y)(\d+)\Z")


def ext_from_descriptor(text: str, g: int) -> ExtElement:
    """Parse e.g. ``x1^x2``, ``omega0^x1`` or ``2*x1^y1 + -1*x2^y2``."""
    total = None
    for term in text.split("+"):
        term = term.strip()
        coef = Fraction(1)
        if "*" in term:
            c, term = term.split("*", 1)
            coef = Fraction(c.strip())
        elem = ExtElement.one(g)
        for factor in term.split("^"):
            factor = factor.strip()
            if factor == "omega0":
                elem = wedge(elem, omega0(g))
                continue
            m = _FACTOR.match(factor)
            if not m:
                raise SchemaError(f"bad exterior factor {factor!r}")
            i = int(m.group(2))
            idx = x_index(g, i) if m.group(1) == "x" else y_index(g, i)
            elem = wedge(elem, ExtElement.basis(g, (idx,)))
        elem = elem * coef
        total = elem if total is None else total + elem
    if total is None:
        raise SchemaError("empty exterior descriptor")
    return total


# --- cocycle registry -------------------------------------------------------------------------

_ONE_COCHAINS = {"kR": bc.kv_cochain, "fluxc": bc.fC_cochain, "flux": bc.flux_cochain}


def cocycle_from_name(name: str, genus: int | None = None) -> BarCochain:
    head, _, arg = name.partition(":")
    if head == "alpha":
        return cc.alpha(int(arg) if arg else 1)
    if head == "alpha_tilde":
        return cc.alpha_tilde(int(arg) if arg else 1)
    if head == "omega0_tilde":
        return cc.omega0_tilde()
    if head == "cal":
        return bc.cal_cochain()
    if head == "flux_pullback":
        if genus is None:
            raise SchemaError("flux_pullback needs the genus of the chain")
        return cc.flux_pullback(ext_from_descriptor(arg, genus))
    if head == "pair":
        names = [s.strip() for s in arg.split(",")]
        if len(names) != 2 or any(n not in _ONE_COCHAINS for n in names):
            raise SchemaError(f"pair takes two of {sorted(_ONE_COCHAINS)}")
        return bc.pair_cocycle(_ONE_COCHAINS[names[0]](), _ONE_COCHAINS[names[1]]())
    raise SchemaError(f"unknown cocycle {name!r}")


COCYCLE_NAMES = ("alpha", "alpha_tilde:k", "omega0_tilde", "cal", "flux_pullback:<xi>", "pair:<a>,<b>")
