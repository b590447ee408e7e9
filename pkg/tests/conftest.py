import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from fluxcocycles import group_model as gm
from fluxcocycles.scalars import Monomial, PolyScalar
from fluxcocycles.symplectic import CohVector, HomVector

settings.register_profile(
    "exact", max_examples=100, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")

SYMBOLS = ("t1", "t2", "t3")

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)
small_ints = st.integers(min_value=-3, max_value=3)


def monomials(symbols=SYMBOLS, max_degree=2):
    powers = st.dictionaries(st.sampled_from(symbols), st.integers(1, max_degree), max_size=2)
    return powers.map(lambda p: Monomial(p.items()))


def polys(symbols=SYMBOLS, max_terms=3, max_degree=2):
    terms = st.dictionaries(monomials(symbols, max_degree), fractions, max_size=max_terms)
    return terms.map(PolyScalar)


def coh_vectors(g=2, symbols=SYMBOLS):
    return st.lists(polys(symbols, 2, 1), min_size=2 * g, max_size=2 * g).map(lambda c: CohVector(g, c))


def rational_coh(g=2):
    return st.lists(fractions, min_size=2 * g, max_size=2 * g).map(lambda c: CohVector(g, c))


def hom_vectors(g=2):
    return st.lists(fractions, min_size=2 * g, max_size=2 * g).map(lambda c: HomVector(g, c))


def generator_names(g):
    return [f"lambda{i}" for i in range(1, g + 1)] + [f"mu{i}" for i in range(1, g + 1)] + \
        [f"nu{i}" for i in range(1, g)]


def words(g=2, max_len=4):
    letter = st.tuples(st.sampled_from(generator_names(g)), st.booleans())
    return st.lists(letter, max_size=max_len).map(lambda ws: [n + ("^-1" if inv else "") for n, inv in ws])


def elements(g=2, subgroup="full"):
    fC, kv, cal = coh_vectors(g, ("t1",)), rational_coh(g), polys(("t1",), 2, 1)
    if subgroup == "symp0":
        return st.builds(gm.symp0, fC, cal)
    return st.builds(lambda w, f, k, c: gm.from_word(w, g, f, k, c), words(g), fC, kv, cal)


@pytest.fixture
def rng():
    return random.Random(20240611)


def frac(x):
    return Fraction(x)


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(k.rstrip("ab")), k)):
        ok, label = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {label}")
