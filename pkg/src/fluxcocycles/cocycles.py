"""Named cochains on the model group and the constructed 2-cycles they are evaluated on."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Mapping, Sequence

from . import bar_calculus as bc
from . import group_model as gm
from .bar_calculus import BarChain, BarCochain
from .group_model import ModelSymp
from .scalars import ZERO, PolyScalar, SymElement, nest, project, s2_product, sym_mul
from .symplectic import (
    COH,
    HOM,
    CohVector,
    ExtElement,
    apply_matrix,
    iota,
    iota_disc,
    mat_mul,
    pair_ext,
)


# --- the refined classes ---------------------------------------------------------------

def twisted_fluxes(elements: Sequence[ModelSymp], gauge: CohVector | None = None) -> list[CohVector]:
    """``xi_i = (phi_1 ... phi_{i-1}) . flux(phi_i)``.

    ``gauge`` replaces the extended flux by the cohomologous crossed
    homomorphism ``phi -> flux(phi) + phi.w - w``.
    """
    out = []
    prefix = None
    for e in elements:
        f = gm.flux_tilde(e)
        if gauge is not None:
            f = f + e.act(gauge) - gauge
        out.append(f if prefix is None else apply_matrix(gm.coh_action(prefix), f))
        prefix = e.T if prefix is None else mat_mul(prefix, e.T)
    return out


def _pfaffian(m: list[list[SymElement]], idx: tuple[int, ...]) -> SymElement:
    if not idx:
        return SymElement(0, {(): 1})
    first, rest = idx[0], idx[1:]
    total = None
    for pos, j in enumerate(rest):
        entry = m[first][j]
        if not entry:
            continue
        term = sym_mul(entry, _pfaffian(m, rest[:pos] + rest[pos + 1:]))
        if pos % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else SymElement.zero(len(idx) // 2)


def alpha_tilde_value(k: int, elements: Sequence[ModelSymp], gauge: CohVector | None = None) -> SymElement:
    """Value of the level-k refined cocycle, via the Pfaffian of the pairing matrix.

    The alternating sum over all (2k)! orderings equals ``2^k k!`` times the
    Pfaffian because the pairing is skew.
    """
    if k < 1 or len(elements) != 2 * k:
        raise ValueError(f"level {k} needs {2 * k} arguments")
    g = elements[0].genus
    if any(e.genus != g for e in elements):
        raise gm.GenusError("genus mismatch")
    xi = twisted_fluxes(elements, gauge)
    if k == 1:
        return iota_disc(xi[0], xi[1])
    n = 2 * k
    m = [[nest(iota_disc(xi[a], xi[b])) if a < b else None for b in range(n)] for a in range(n)]
    pf = _pfaffian(m, tuple(range(n)))
    return pf * Fraction(2 ** k * factorial(k), factorial(n))


def alpha_tilde_literal(k: int, elements: Sequence[ModelSymp]) -> SymElement:
    """Literal antisymmetrisation over all (2k)! orderings; the reference implementation."""
    xi = twisted_fluxes(elements)
    n = 2 * k
    total = SymElement.zero(k)
    for perm in permutations(range(n)):
        factors = [iota_disc(xi[perm[2 * j]], xi[perm[2 * j + 1]]) for j in range(k)]
        term = factors[0] if k == 1 else s2_product(factors)
        total = total + term * bc._perm_sign(perm)
    return total * Fraction(1, factorial(n))


def alpha_tilde(k: int = 1, gauge: CohVector | None = None) -> BarCochain:
    return BarCochain(2 * k, lambda t: alpha_tilde_value(k, t, gauge), "sym", name=f"alpha_tilde:{k}")


def alpha(k: int = 1, gauge: CohVector | None = None) -> BarCochain:
    """Real-valued class: the refined cocycle followed by the multiplication map."""
    return BarCochain(2 * k, lambda t: project(alpha_tilde_value(k, t, gauge)), "scalar", name="alpha")


# --- coordinates of the flux on the identity component ----------------------------------

def coordinate_character(i: int, kind: str) -> BarCochain:
    """``x~_i`` or ``y~_i``: coordinates of the flux read as a homology class."""
    if kind not in ("x", "y"):
        raise ValueError("kind must be 'x' or 'y'")

    def fn(t):
        (e,) = t
        gm.require_symp0(e)
        g = e.genus
        if not 1 <= i <= g:
            raise IndexError(f"index {i} out of range 1..{g}")
        return -e.fC.coords[g + i - 1] if kind == "x" else e.fC.coords[i - 1]

    return BarCochain(1, fn, "scalar", name=f"{kind}{i}_tilde")


def flux_homology_coords(e: ModelSymp) -> list[PolyScalar]:
    gm.require_symp0(e)
    g = e.genus
    return [-c for c in e.fC.coords[g:]] + list(e.fC.coords[:g])


def omega0_tilde() -> BarCochain:
    def fn(t):
        a, b = (flux_homology_coords(e) for e in t)
        g = len(a) // 2
        total = ZERO
        for i in range(g):
            total = total + a[i] * b[g + i]
        return total

    return BarCochain(2, fn, "scalar", name="omega0_tilde")


def xy_primitive() -> BarCochain:
    """``sum_i x~_i y~_i`` as a 1-cochain; its coboundary is ``alpha - 2 omega0~`` on the identity component."""
    def fn(t):
        c = flux_homology_coords(t[0])
        g = len(c) // 2
        total = ZERO
        for i in range(g):
            total = total + c[i] * c[g + i]
        return total

    return BarCochain(1, fn, "scalar", name="xy_primitive")


def flux_pullback(xi: ExtElement) -> BarCochain:
    """Pullback of an exterior class along the flux: ``(1/k!) <xi, eta_1 ^ ... ^ eta_k>``."""
    if xi.space != HOM:
        raise ValueError("flux_pullback takes a class on H_1")
    k = xi.degree

    def fn(t):
        w = ExtElement.one(xi.genus, COH)
        for e in t:
            if e.genus != xi.genus:
                raise gm.GenusError("genus mismatch")
            coords = flux_homology_coords(e)
            w = w ^ ExtElement(xi.genus, 1, COH, {(j,): c for j, c in enumerate(coords) if c})
        return pair_ext(xi, w) * Fraction(1, factorial(k))

    return BarCochain(k, fn, "scalar", name="flux_pullback")


def pair_kv_fluxc() -> BarCochain:
    return bc.pair_cocycle(bc.kv_cochain(), bc.fC_cochain())


def pair_fluxc_fluxc() -> BarCochain:
    return bc.pair_cocycle(bc.fC_cochain(), bc.fC_cochain())


# --- the cycles ------------------------------------------------------------------------

LIFT_NAMES = ("nu", "mu", "mu_next")


@dataclass
class CstarChoices:
    """Free decoration data for the lifted generators and the kernel elements.

    ``kv`` entries are adjusted on the ``nu`` lift so that the normalisation
    pairing equals ``kv_scale``.
    """

    fC: Mapping[str, CohVector] = field(default_factory=dict)
    kv: Mapping[str, CohVector] = field(default_factory=dict)
    cal: Mapping[str, PolyScalar] = field(default_factory=dict)
    kernel_cal: tuple = (ZERO, ZERO)
    kv_scale: Fraction = Fraction(1)


def _generator_names(i: int) -> dict[str, str]:
    return {"nu": f"nu{i}", "mu": f"mu{i}", "mu_next": f"mu{i + 1}"}


def kc_value(lifts: Mapping[str, ModelSymp], i: int) -> Fraction:
    """Normalisation pairing ``sum sign iota(kv(q), q.u_q)`` with ``u = y*_i, y*_i, y*_{i+1}``."""
    g = lifts["nu"].genus
    total = ZERO
    for name, sign, j in (("nu", 1, i), ("mu", -1, i), ("mu_next", 1, i + 1)):
        q = lifts[name]
        total = total + iota(q.kv, q.act(CohVector.y(g, j))) * sign
    return total.to_fraction()


def cstar_lifts(g: int, i: int, choices: CstarChoices | None = None) -> dict[str, ModelSymp]:
    if not 1 <= i <= g - 1:
        raise IndexError(f"need 1 <= i <= {g - 1}, got {i}")
    choices = choices or CstarChoices()
    names = _generator_names(i)
    zero = CohVector.zero(g)
    lifts = {key: gm.lift_generator(names[key], choices.fC.get(key, zero), choices.kv.get(key, zero),
                                    choices.cal.get(key, ZERO), genus=g)
             for key in LIFT_NAMES}
    shift = Fraction(choices.kv_scale) - kc_value(lifts, i)
    if shift:
        nu = lifts["nu"]
        lifts["nu"] = gm.ModelSymp(g, nu.T, nu.fC, nu.kv + CohVector.x(g, i) * shift, nu.cal)
    return lifts


def cstar_data(r, i: int, g: int, choices: CstarChoices | None = None) -> list[tuple[ModelSymp, ModelSymp, int]]:
    """Twisted cycle ``nu_i (x) r y*_i - mu_i (x) r y*_i + mu_{i+1} (x) r y*_{i+1}`` with lifts."""
    choices = choices or CstarChoices()
    r = PolyScalar.coerce(r)
    lifts = cstar_lifts(g, i, choices)
    k_i = gm.symp0(CohVector.y(g, i) * r, choices.kernel_cal[0])
    k_next = gm.symp0(CohVector.y(g, i + 1) * r, choices.kernel_cal[1])
    return [(lifts["nu"], k_i, 1), (lifts["mu"], k_i, -1), (lifts["mu_next"], k_next, 1)]


def build_cstar_cycle(r, i: int = 1, g: int = 2, choices: CstarChoices | None = None,
                      rng: random.Random | None = None) -> BarChain:
    """The 2-cycle lifting the twisted cycle above; the real class takes the value ``2r`` on it."""
    return bc.lift_twisted_cycle(cstar_data(r, i, g, choices), rng)


def random_cstar_choices(rng: random.Random, g: int, i: int, symbols: Sequence[str] = ("t1",),
                         kv_scale=1) -> CstarChoices:
    def vec(rational: bool) -> CohVector:
        coords = []
        for _ in range(2 * g):
            x = PolyScalar.const(Fraction(rng.randint(-2, 2), rng.randint(1, 2)))
            if not rational and symbols and rng.random() < 0.3:
                x = x + PolyScalar.symbol(rng.choice(list(symbols)))
            coords.append(x)
        return CohVector(g, coords)

    def scalar() -> PolyScalar:
        x = PolyScalar.const(rng.randint(-3, 3))
        if symbols and rng.random() < 0.3:
            x = x + PolyScalar.symbol(rng.choice(list(symbols))) * rng.randint(1, 2)
        return x

    return CstarChoices(
        fC={k: vec(False) for k in LIFT_NAMES},
        kv={k: vec(True) for k in LIFT_NAMES},
        cal={k: scalar() for k in LIFT_NAMES},
        kernel_cal=(scalar(), scalar()),
        kv_scale=Fraction(kv_scale),
    )


def commuting_pair_cycle(u: CohVector, v: CohVector, cal_u=ZERO, cal_v=ZERO) -> BarChain:
    """Torus 2-cycle of two identity-component elements with ``iota(u, v) = 0``."""
    return bc.shuffle_cycle([gm.symp0(u, cal_u), gm.symp0(v, cal_v)])


def torus_cycle(fluxes: Sequence[CohVector]) -> BarChain:
    return bc.shuffle_cycle([gm.symp0(f) for f in fluxes])


@dataclass(frozen=True)
class FluxcReport:
    alpha: PolyScalar
    pair_kv_fluxc: PolyScalar
    pair_fluxc_fluxc: PolyScalar

    @property
    def holds(self) -> bool:
        return self.alpha == self.pair_kv_fluxc * 2 and self.pair_fluxc_fluxc.is_zero()


class PreconditionError(ValueError):
    pass


def check_fluxc_decomposition(z: BarChain, witness: BarChain | None = None) -> FluxcReport:
    """Compare the real class with twice the kv-flux pairing on a cycle with trivial mapping-class image."""
    if not bc.is_cycle(z):
        raise PreconditionError("chain is not a cycle")
    if not bc.p_trivial_certificate(z, witness):
        raise PreconditionError("mapping-class image is not certified to be a boundary")
    return FluxcReport(bc.evaluate(alpha(1), z), bc.evaluate(pair_kv_fluxc(), z),
                       bc.evaluate(pair_fluxc_fluxc(), z))
