"""Named verification suites behind the command-line driver."""
from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterator

from . import bar_calculus as bc
from . import cocycles as cc
from . import group_model as gm
from . import kunneth as kn
from . import sampling as smp
from .descriptors import value_to_str
from .scalars import PolyScalar, SymElement, hat, project, sym_mul, symbols as make_symbols
from .symplectic import (
    CohVector,
    ExtElement,
    QWedge2,
    act_on_coh,
    apply_matrix,
    check_genus,
    contract,
    ideal_quotient_dims,
    iota,
    is_symplectic,
    la2_coinvariant,
    omega0,
    twist_matrix,
    word_matrix,
)


@dataclass
class SuiteConfig:
    genus: int = 2
    symbols: tuple[str, ...] = ("t1", "t2")
    seed: int = 0
    suites: tuple[str, ...] = ("all",)
    cases: int = 100
    timing: bool = False

    def __post_init__(self):
        check_genus(self.genus)
        self.symbols = tuple(self.symbols)
        self.suites = tuple(self.suites)
        if self.cases < 1:
            raise ValueError("cases must be positive")
        unknown = [s for s in self.suites if s != "all" and s not in SUITES]
        if unknown:
            raise ValueError(f"unknown suite(s) {unknown}; choose from {sorted(SUITES)} or all")


@dataclass
class Check:
    name: str
    paper_anchor: str
    status: str
    expected: str
    actual: str
    elapsed: float | None = None


@dataclass
class Report:
    config: dict
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(c.status == "pass" for c in self.checks)

    @property
    def failed(self) -> int:
        return len(self.checks) - self.passed

    def to_json(self, elapsed_ms: float | None = None) -> dict:
        return {
            "config": self.config,
            "checks": [asdict(c) for c in sorted(self.checks, key=lambda c: c.name)],
            "summary": {"passed": self.passed, "failed": self.failed, "elapsed_ms": elapsed_ms},
        }


Outcome = tuple[bool, object, object]
CheckSpec = tuple[str, str, Callable[[], Outcome]]


def _all(results: Iterator[tuple[object, object]]) -> Outcome:
    """Fold (expected, actual) pairs; report the first mismatch or the count."""
    n = 0
    for expected, actual in results:
        n += 1
        if expected != actual:
            return False, expected, actual
    return True, f"{n} cases", f"{n} cases"


def _rng(config: SuiteConfig, suite: str) -> random.Random:
    return random.Random(f"{config.seed}:{suite}")


# --- suites ----------------------------------------------------------------------------------

def suite_structural(config: SuiteConfig) -> list[CheckSpec]:
    g, n, syms = config.genus, config.cases, config.symbols
    rng = _rng(config, "structural")

    def group_axioms():
        def gen():
            for _ in range(n):
                a, b, c = (smp.random_element(rng, g, syms) for _ in range(3))
                yield gm.compose(gm.compose(a, b), c), gm.compose(a, gm.compose(b, c))
                yield gm.identity(g), gm.compose(a, gm.inverse(a))
        return _all(gen())

    def dd():
        def gen():
            for _ in range(n):
                t = tuple(smp.random_element(rng, g, syms) for _ in range(3))
                yield True, bc.boundary(bc.boundary(bc.BarChain.single(*t))).is_zero()
        return _all(gen())

    def deltadelta():
        f = bc.cal_cochain() + bc.BarCochain(1, lambda t: iota(t[0].fC, CohVector.x(g, 1)) * t[0].cal)
        ddf = bc.coboundary(bc.coboundary(f))

        def gen():
            for _ in range(n):
                t = tuple(smp.random_element(rng, g, syms) for _ in range(3))
                yield PolyScalar(), ddf(*t)
        return _all(gen())

    def adjunction():
        f = bc.BarCochain(1, lambda t: t[0].cal * t[0].cal + iota(t[0].fC, t[0].kv))
        df = bc.coboundary(f)

        def gen():
            for _ in range(n):
                c = bc.BarChain(2, [(tuple(smp.random_element(rng, g, syms) for _ in range(2)),
                                     smp.random_fraction(rng)) for _ in range(2)])
                yield bc.evaluate(f, bc.boundary(c)), bc.evaluate(df, c)
        return _all(gen())

    def heisenberg():
        def gen():
            for _ in range(n):
                a, b = smp.random_symp0(rng, g, syms), smp.random_symp0(rng, g, syms)
                yield gm.central(g, iota(a.fC, b.fC) * 2), gm.commutator(a, b)
        return _all(gen())

    return [
        ("structural.group_axioms", "(phi psi) chi = phi (psi chi), phi phi^-1 = id", group_axioms),
        ("structural.boundary_squared", "d d = 0 on bar chains", dd),
        ("structural.coboundary_squared", "delta delta = 0 on bar cochains", deltadelta),
        ("structural.adjunction", "<delta f, c> = <f, d c>", adjunction),
        ("structural.heisenberg_commutator", "[phi, psi] = (I, 0, 0, 2 iota(Flux phi, Flux psi))", heisenberg),
    ]


def suite_symplectic(config: SuiteConfig) -> list[CheckSpec]:
    g, n, syms = config.genus, config.cases, config.symbols
    rng = _rng(config, "symplectic")

    def twists():
        return _all((True, is_symplectic(twist_matrix(name, g))) for name in smp.generator_names(g))

    def action():
        def gen():
            for _ in range(n):
                w1, w2 = smp.random_word(rng, g), smp.random_word(rng, g)
                t1, t2 = word_matrix(w1, g), word_matrix(w2, g)
                a = act_on_coh(t1)
                yield act_on_coh(gm.mat_mul(t1, t2)), gm.mat_mul(a, act_on_coh(t2))
                u, v = smp.random_coh(rng, g, syms), smp.random_coh(rng, g, syms)
                yield iota(u, v), iota(apply_matrix(a, u), apply_matrix(a, v))
        return _all(gen())

    def johnson():
        tau = ExtElement(g, 2, terms={(i, g + i): 1 for i in range(g - 1)}) ^ ExtElement.basis(g, (2 * g - 1,))
        expected = ExtElement.basis(g, (2 * g - 1,)) * (2 * (g - 1))
        return _all(iter([(expected, contract(tau))]))

    def la2_invariance():
        def gen():
            names = smp.generator_names(g)
            for _ in range(n):
                u, v = smp.random_coh(rng, g, syms), smp.random_coh(rng, g, syms)
                w = QWedge2.wedge(u, v)
                yield la2_coinvariant(w), la2_coinvariant(w.act(twist_matrix(rng.choice(names), g)))
        return _all(gen())

    def la2_surjective():
        monos = [PolyScalar()] + [PolyScalar.symbol(s) for s in syms]
        monos = [PolyScalar.const(1)] + [PolyScalar.symbol(s) for s in syms] + \
            [a * b for i, a in enumerate(monos[1:]) for b in monos[1 + i:]]

        def gen():
            for a in monos:
                for b in monos:
                    w = QWedge2.wedge(CohVector.x(g, 1) * a, CohVector.y(g, 1) * b)
                    yield sym_mul(hat(a), hat(b)), la2_coinvariant(w)
        return _all(gen())

    def ideal_dims():
        expected = [1] + [comb(2 * g, k) - (comb(2 * g, k - 2) if k >= 2 else 0) + (k == 2) if k <= g else 0
                          for k in range(1, 2 * g + 1)]
        return _all(iter([(expected, ideal_quotient_dims(g, 2 * g))]))

    return [
        ("symplectic.twists_symplectic", "T^T J T = J for lambda_i, mu_i, nu_i", twists),
        ("symplectic.action_functorial", "(phi psi)^{-1*} = phi^{-1*} psi^{-1*}, iota preserved", action),
        ("symplectic.johnson_contraction", "C tau = 2(g-1)[C_1]", johnson),
        ("symplectic.la2_invariance", "(au)^(bv) -> iota(u,v) a^ b^ is M_g-invariant", la2_invariance),
        ("symplectic.la2_surjective", "m1 x*_1 ^ m2 y*_1 -> m1^ m2^", la2_surjective),
        ("symplectic.ideal_quotient", "Lambda^* H_1 / (omega0 ^ H_1) = R + sum_k [1^k]", ideal_dims),
    ]


def suite_cocycles(config: SuiteConfig) -> list[CheckSpec]:
    g, syms = config.genus, config.symbols
    n = min(config.cases, 50)
    rng = _rng(config, "cocycles")

    def closed(f: bc.BarCochain, arity: int, count: int, zero):
        df = bc.coboundary(f)

        def gen():
            for _ in range(count):
                t = tuple(smp.random_element(rng, g, syms) for _ in range(arity))
                yield zero, df(*t)
        return _all(gen())

    def cal_law():
        lhs = bc.coboundary(bc.cal_cochain())
        rhs = -cc.pair_fluxc_fluxc()

        def gen():
            for _ in range(n):
                t = (smp.random_element(rng, g, syms), smp.random_element(rng, g, syms))
                yield rhs(*t), lhs(*t)
        return _all(gen())

    def crossed():
        def gen():
            for _ in range(n):
                a, b = smp.random_element(rng, g, syms), smp.random_element(rng, g, syms)
                for f in (bc.flux_cochain(), bc.fC_cochain(), bc.kv_cochain()):
                    yield True, bc.check_crossed(f, [(a, b)])
        return _all(gen())

    return [
        ("cocycles.alpha_tilde_1_closed", "delta alpha~^(1) = 0",
         lambda: closed(cc.alpha_tilde(1), 3, n, SymElement.zero(2))),
        ("cocycles.alpha_tilde_2_closed", "delta alpha~^(2) = 0",
         lambda: closed(cc.alpha_tilde(2), 5, min(n, 10), SymElement.zero(2))),
        ("cocycles.pair_cocycle_closed", "(g,h) -> iota(f1(g), g_* f2(h)) is a 2-cocycle",
         lambda: closed(cc.pair_kv_fluxc(), 3, n, PolyScalar())),
        ("cocycles.calabi_law", "delta Cal~ = -(Flux~_c . Flux~_c)", cal_law),
        ("cocycles.crossed_law", "Flux~(phi psi) = Flux~(phi) + (phi^-1)^* Flux~(psi)", crossed),
    ]


def suite_cstar(config: SuiteConfig) -> list[CheckSpec]:
    g = config.genus
    rng = _rng(config, "cstar")
    theta = PolyScalar.symbol(config.symbols[0]) if config.symbols else PolyScalar.const(2)
    rounds = min(config.cases, 10)

    def value(r):
        def run():
            def gen():
                for _ in range(rounds):
                    i = rng.randint(1, g - 1)
                    z = cc.build_cstar_cycle(r, i, g, cc.random_cstar_choices(rng, g, i, config.symbols), rng)
                    yield PolyScalar.coerce(r) * 2, bc.evaluate(cc.alpha(1), z)
            return _all(gen())
        return run

    def fluxc():
        def gen():
            for _ in range(rounds):
                z = cc.build_cstar_cycle(theta, 1, g, cc.random_cstar_choices(rng, g, 1, config.symbols), rng)
                w = bc.BarChain(3, [(tuple(smp.random_element(rng, g, config.symbols) for _ in range(3)), 1)])
                zz = z + bc.boundary(w)
                rep = cc.check_fluxc_decomposition(zz, witness=w)
                yield (theta * 2, theta, PolyScalar()), (rep.alpha, rep.pair_kv_fluxc, rep.pair_fluxc_fluxc)
        return _all(gen())

    def kv_scaling():
        s = Fraction(3, 2)
        z = cc.build_cstar_cycle(theta, 1, g, cc.random_cstar_choices(rng, g, 1, config.symbols, kv_scale=s), rng)
        return _all(iter([(theta * 2 * s, bc.evaluate(cc.alpha(1), z))]))

    return [
        ("cstar.value_r_1", "alpha(c~*_r) = 2r, r = 1", value(1)),
        ("cstar.value_r_minus_3_2", "alpha(c~*_r) = 2r, r = -3/2", value(Fraction(-3, 2))),
        ("cstar.value_r_symbol", "alpha(c~*_r) = 2r, r = theta", value(theta)),
        ("cstar.fluxc_decomposition", "alpha = 2 [p^*k . Flux~_c] - p^*e_1 on p-trivial cycles", fluxc),
        ("cstar.kv_scaling", "k(c*) = s gives alpha(c~*_r) = 2rs", kv_scaling),
    ]


def suite_identity_component(config: SuiteConfig) -> list[CheckSpec]:
    g, n, syms = config.genus, config.cases, config.symbols
    rng = _rng(config, "identity_component")

    def pointwise():
        lhs = cc.alpha(1) - cc.omega0_tilde() * 2
        rhs = bc.coboundary(cc.xy_primitive())

        def gen():
            for _ in range(n):
                t = (smp.random_symp0(rng, g, syms), smp.random_symp0(rng, g, syms))
                yield rhs(*t), lhs(*t)
        return _all(gen())

    def trivial_on_tori():
        def gen():
            for _ in range(min(n, 20)):
                u, v = smp.random_isotropic(rng, g, 2, syms)
                yield PolyScalar(), bc.evaluate(cc.alpha(1), cc.commuting_pair_cycle(u, v))
        return _all(gen())

    def bridge():
        w = kn.omega0t(g)
        cochain = cc.omega0_tilde()

        def gen():
            for _ in range(n):
                t = (smp.random_symp0(rng, g, syms), smp.random_symp0(rng, g, syms))
                yield cochain(*t), kn.evaluate_base(w, [cc.flux_homology_coords(e) for e in t])
        return _all(gen())

    return [
        ("identity_component.pointwise", "alpha - 2 omega0~ = delta(sum x~_i y~_i)", pointwise),
        ("identity_component.trivial_on_tori", "alpha restricted to commuting pairs with iota = 0 vanishes", trivial_on_tori),
        ("identity_component.kunneth_bridge", "omega0~ = Flux^*(omega0) = sum x~_i y~_i", bridge),
    ]


def suite_exterior(config: SuiteConfig) -> list[CheckSpec]:
    g, syms = config.genus, config.symbols
    rng = _rng(config, "exterior")

    def highest_weight():
        def gen():
            for k in range(1, g + 1):
                xi = ExtElement.one(g)
                for i in range(k):
                    xi = xi ^ ExtElement.basis(g, (i,))
                z = cc.torus_cycle([-CohVector.y(g, i + 1) for i in range(k)])
                yield PolyScalar.const(1), bc.evaluate(cc.flux_pullback(xi), z)
        return _all(gen())

    def ideal_vanishing():
        def gen():
            for _ in range(min(config.cases, 50)):
                h = ExtElement.basis(g, (rng.randrange(2 * g),))
                z = cc.torus_cycle(smp.random_isotropic(rng, g, 3, syms))
                yield PolyScalar(), bc.evaluate(cc.flux_pullback(omega0(g) ^ h), z)
        return _all(gen())

    return [
        ("exterior.highest_weight", "Flux^*(x_1 ^ ... ^ x_k) = 1 on the k-torus", highest_weight),
        ("exterior.ideal_vanishing", "Flux^*(omega0 ^ h) = 0 on isotropic 3-tori", ideal_vanishing),
    ]


def suite_kunneth(config: SuiteConfig) -> list[CheckSpec]:
    g = config.genus

    def flux_square():
        return _all(iter([(kn.mu(g) * kn.omega0t(g) * -2, kn.flux_class(g) ** 2)]))

    def v_square():
        return _all(iter([(kn.KunnethClass(g, mode=kn.REDUCED), kn.v_class(g, kn.REDUCED) ** 2)]))

    def v1():
        e, v = kn.e_class(g), kn.v_class(g)
        return _all(iter([
            (kn.KunnethClass(g), kn.pi_star(e * e)),
            (-kn.omega0t(g), kn.pi_star(e * v)),
            (kn.omega0t(g) * 2, -kn.pi_star((e + v) * (e + v))),
        ]))

    return [
        ("kunneth.flux_square", "[Flux]^2 = -2 mu (x) omega0~", flux_square),
        ("kunneth.v_square", "v^2 = 0 with omega0~ x~_i = omega0~ y~_i = 0", v_square),
        ("kunneth.v1", "-pi_*((e+v)^2) = -e_1 - 2 v_1 = 2 omega0~", v1),
    ]


def suite_stability(config: SuiteConfig) -> list[CheckSpec]:
    g = config.genus
    t1, t2 = (make_symbols(config.symbols[:2]) if len(config.symbols) >= 2
              else (PolyScalar.const(2), PolyScalar.const(3)))

    def blocks():
        z = cc.build_cstar_cycle(t1, 1, g)
        base = bc.evaluate(cc.alpha_tilde(1), z)
        return _all((base, bc.evaluate(cc.alpha_tilde(1), bc.embed_chain(z, 2 * g, off))) for off in (0, g))

    def level2():
        z1, z2 = cc.build_cstar_cycle(t1, 1, 2), cc.build_cstar_cycle(t2, 1, 2)
        x = bc.cross_product(z1, z2)
        fast = bc.evaluate(cc.alpha_tilde(2), x)
        slow = bc.evaluate(bc.BarCochain(4, lambda t: cc.alpha_tilde_literal(2, t), "sym"), x)
        return _all(iter([(slow, fast)]))

    def level2_value():
        z1, z2 = cc.build_cstar_cycle(t1, 1, 2), cc.build_cstar_cycle(t2, 1, 2)
        v = project(bc.evaluate(cc.alpha_tilde(2), bc.cross_product(z1, z2)))
        # primitivity of the level-1 class gives 2 <alpha,z1><alpha,z2>
        return _all(iter([(t1 * t2 * 8, v)]))

    return [
        ("stability.block_embedding", "f_k^* alpha~ = alpha~ x 1 + ... + 1 x alpha~", blocks),
        ("stability.level2_oracle", "alpha~^(2) = (1/4!) sum sgn(s) (xi xi)(xi xi)", level2),
        ("stability.level2_value", "alpha~^(2)(c~*_t1 x c~*_t2) = 2 alpha~(c~*_t1) alpha~(c~*_t2)", level2_value),
    ]


SUITES: dict[str, Callable[[SuiteConfig], list[CheckSpec]]] = {
    "structural": suite_structural,
    "symplectic": suite_symplectic,
    "cocycles": suite_cocycles,
    "cstar": suite_cstar,
    "identity_component": suite_identity_component,
    "exterior": suite_exterior,
    "kunneth": suite_kunneth,
    "stability": suite_stability,
}


def _render(x) -> str:
    if isinstance(x, tuple):
        return "(" + ", ".join(_render(y) for y in x) + ")"
    if isinstance(x, list):
        return "[" + ", ".join(_render(y) for y in x) + "]"
    return value_to_str(x)


def run_suite(config: SuiteConfig) -> Report:
    names = sorted(SUITES) if "all" in config.suites else sorted(set(config.suites))
    cfg = asdict(config)
    cfg["symbols"], cfg["suites"] = list(config.symbols), list(config.suites)
    report = Report(cfg)
    for suite in names:
        for name, anchor, fn in SUITES[suite](config):
            start = time.perf_counter()
            try:
                ok, expected, actual = fn()
                expected, actual = _render(expected), _render(actual)
            except Exception as exc:  # a crashing check is a failing check
                ok, expected, actual = False, "no error", f"{type(exc).__name__}: {exc}"
            elapsed = round(time.perf_counter() - start, 6) if config.timing else None
            report.checks.append(Check(name, anchor, "pass" if ok else "fail", expected, actual, elapsed))
    return report
