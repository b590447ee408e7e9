from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import coh_vectors, generator_names, hom_vectors, words
from fluxcocycles import _linalg
from fluxcocycles.scalars import PolyScalar, hat, project, sym_mul, symbols
from fluxcocycles.symplectic import (
    COH,
    CohVector,
    ExtElement,
    GenusError,
    HomVector,
    NotSymplecticError,
    QWedge2,
    act_on_coh,
    apply_matrix,
    contract,
    contraction_matrix,
    ext_basis_keys,
    ideal_quotient_dims,
    identity_matrix,
    intersect,
    iota,
    iota_disc,
    is_symplectic,
    j_matrix,
    la2_coinvariant,
    mat_mul,
    omega0,
    pair_ext,
    pd,
    pd_inverse,
    rep_1k_basis,
    rep_1k_dimension,
    twist_matrix,
    wedge,
    word_matrix,
)

t1, t2, t3 = symbols("t1 t2 t3")
X, Y = HomVector.x, HomVector.y
XS, YS = CohVector.x, CohVector.y


def basis(g, *labels, space="H1"):
    idx = {f"x{i}": i - 1 for i in range(1, g + 1)} | {f"y{i}": g + i - 1 for i in range(1, g + 1)}
    return ExtElement.basis(g, tuple(idx[l] for l in labels), space) if len(labels) else ExtElement.one(g, space)


# --- pairings ---------------------------------------------------------------------------

def test_intersection_convention():
    assert intersect(X(2, 1), Y(2, 1)) == 1
    assert intersect(Y(2, 1), X(2, 1)) == -1
    assert intersect(X(2, 1), X(2, 2)) == 0


def test_cup_pairing_convention():
    assert iota(XS(2, 1), YS(2, 1)) == 1
    assert iota(pd(X(2, 1)), pd(Y(2, 1))) == 1


def test_pairing_genus_mismatch():
    with pytest.raises(GenusError):
        intersect(X(2, 1), X(3, 1))
    with pytest.raises(GenusError):
        HomVector(1, [0, 0])


@given(coh_vectors(3))
def test_iota_alternating(u):
    assert iota(u, u) == 0


def test_pd_correspondence():
    assert pd(X(2, 1)) == -YS(2, 1)
    assert pd(Y(2, 1)) == XS(2, 1)
    assert pd(X(2, 1) + Y(2, 2)) == -YS(2, 1) + XS(2, 2)


@given(hom_vectors(3), hom_vectors(3))
def test_pd_is_an_isometry(a, b):
    assert iota(pd(a), pd(b)) == intersect(a, b)
    assert pd_inverse(pd(a)) == a


# --- discontinuous pairing and coinvariants -----------------------------------------------

def test_iota_disc_examples():
    assert iota_disc(XS(2, 1) * t1, YS(2, 1) * t2) == sym_mul(hat(t1), hat(t2))
    assert iota_disc(XS(2, 1), YS(2, 1)) == sym_mul(hat(1), hat(1))
    u = XS(2, 1) * t1 + YS(2, 1)
    assert iota_disc(u, u) == 0


@given(coh_vectors(2), coh_vectors(2))
def test_iota_disc_skew_and_lifts_iota(u, v):
    assert iota_disc(u, v) == -iota_disc(v, u)
    assert project(iota_disc(u, v)) == iota(u, v)


def test_la2_examples():
    assert la2_coinvariant(QWedge2.wedge(XS(2, 1) * t1, YS(2, 1) * t2)) == sym_mul(hat(t1), hat(t2))
    w = QWedge2.wedge(XS(2, 1), YS(2, 1)) + QWedge2.wedge(XS(2, 2), YS(2, 2))
    assert la2_coinvariant(w) == sym_mul(hat(1), hat(1)) * 2


def test_la2_sees_rational_structure():
    # equal as real exterior elements, different in the exterior square over Q
    a = QWedge2.wedge(XS(2, 1) * (t1 * t2), YS(2, 1))
    b = QWedge2.wedge(XS(2, 1) * t1, YS(2, 1) * t2)
    assert a != b
    assert la2_coinvariant(a) != la2_coinvariant(b)
    assert project(la2_coinvariant(a)) == project(la2_coinvariant(b))


@given(coh_vectors(2, ("t1", "t2")), coh_vectors(2, ("t1", "t2")), st.sampled_from(generator_names(2)))
def test_la2_invariant_under_lickorish_generators(u, v, name):
    w = QWedge2.wedge(u, v)
    assert la2_coinvariant(w.act(twist_matrix(name, 2))) == la2_coinvariant(w)
    assert la2_coinvariant(w) == iota_disc(u, v)


@given(coh_vectors(3, ("t1",)), coh_vectors(3, ("t1",)), words(3))
def test_la2_invariant_under_words(u, v, word):
    w = QWedge2.wedge(u, v)
    assert la2_coinvariant(w.act(word_matrix(word, 3))) == la2_coinvariant(w)


@pytest.mark.parametrize("alphabet", [("t1",), ("t1", "t2"), ("t1", "t2", "t3", "t4")])
def test_la2_surjective_on_monomial_basis(alphabet):
    syms = [PolyScalar.symbol(s) for s in alphabet]
    monos = [PolyScalar.const(1)] + syms + [a * b for i, a in enumerate(syms) for b in syms[i:]]
    for a in monos:
        for b in monos:
            witness = QWedge2.wedge(XS(2, 1) * a, YS(2, 1) * b)
            assert la2_coinvariant(witness) == sym_mul(hat(a), hat(b))


# --- twists and the action -------------------------------------------------------------------

def test_twist_actions():
    assert apply_matrix(twist_matrix("mu1", 2), X(2, 1)) == X(2, 1) - Y(2, 1)
    assert apply_matrix(twist_matrix("nu1", 2), X(2, 1)) == X(2, 1) - Y(2, 1) + Y(2, 2)
    assert apply_matrix(twist_matrix("lambda1", 2), Y(2, 1)) == Y(2, 1) + X(2, 1)


def test_twist_name_variants_and_ranges():
    assert twist_matrix("nu_1", 3) == twist_matrix("nu1", 3)
    with pytest.raises(IndexError):
        twist_matrix("nu3", 3)
    with pytest.raises(IndexError):
        twist_matrix("mu4", 3)
    with pytest.raises(ValueError):
        twist_matrix("rho1", 3)


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_twists_are_symplectic(g):
    for name in generator_names(g):
        t = twist_matrix(name, g)
        assert mat_mul(mat_mul(tuple(zip(*t)), j_matrix(g)), t) == j_matrix(g)


def _oracle_coh_action(t):
    return oracles.transpose(oracles.mat_inverse(t))


def test_action_on_cohomology_examples():
    mu = act_on_coh(twist_matrix("mu1", 2))
    nu = act_on_coh(twist_matrix("nu1", 2))
    assert apply_matrix(mu, YS(2, 1)) == XS(2, 1) + YS(2, 1)
    assert apply_matrix(nu, YS(2, 1)) == XS(2, 1) - XS(2, 2) + YS(2, 1)
    assert act_on_coh(identity_matrix(4)) == identity_matrix(4)
    # the frozen values agree with a generic rational inverse
    for name in ("mu1", "nu1"):
        t = twist_matrix(name, 2)
        assert [list(r) for r in act_on_coh(t)] == _oracle_coh_action(t)


def test_action_rejects_non_symplectic():
    with pytest.raises(NotSymplecticError):
        act_on_coh(((2, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))


@given(words(3), words(3), coh_vectors(3, ("t1",)), coh_vectors(3, ("t1",)))
def test_action_functorial_and_iota_preserving(w1, w2, u, v):
    t1m, t2m = word_matrix(w1, 3), word_matrix(w2, 3)
    assert is_symplectic(mat_mul(t1m, t2m))
    a = act_on_coh(t1m)
    assert act_on_coh(mat_mul(t1m, t2m)) == mat_mul(a, act_on_coh(t2m))
    assert iota(apply_matrix(a, u), apply_matrix(a, v)) == iota(u, v)


@given(words(2), hom_vectors(2))
def test_pd_is_equivariant(word, a):
    t = word_matrix(word, 2)
    assert pd(apply_matrix(t, a)) == apply_matrix(act_on_coh(t), pd(a))


# --- exterior algebra -------------------------------------------------------------------------

def test_wedge_examples():
    assert wedge(basis(2, "x1", "y1"), basis(2, "x2")) == basis(2, "x1", "x2", "y1") * -1
    assert (basis(2, "x1", "y1") ^ basis(2, "x2")).terms == {(0, 1, 2): -1}
    assert basis(2, "x1") ^ basis(2, "x1") == 0
    assert omega0(2) ^ omega0(2) == basis(2, "x1", "y1") ^ basis(2, "x2", "y2") * 2


@st.composite
def ext_elements(draw, g=3, degree=None):
    k = draw(st.integers(0, 3)) if degree is None else degree
    keys = list(combinations(range(2 * g), k))
    chosen = draw(st.lists(st.sampled_from(keys), max_size=3, unique=True))
    return ExtElement(g, k, "H1", {key: draw(st.integers(-3, 3)) for key in chosen})


@given(ext_elements(), ext_elements(), ext_elements())
def test_wedge_graded_commutative_and_associative(a, b, c):
    assert a ^ b == (b ^ a) * (-1) ** (a.degree * b.degree)
    assert (a ^ b) ^ c == a ^ (b ^ c)


@given(st.lists(st.lists(st.integers(-2, 2), min_size=6, max_size=6), min_size=2, max_size=3))
def test_wedge_of_vectors_matches_minors(vectors):
    g = 3
    w = ExtElement.one(g)
    for v in vectors:
        w = w ^ ExtElement.from_vector(HomVector(g, v))
    expected = oracles.wedge_coords([[Fraction(x) for x in v] for v in vectors], 2 * g)
    assert {k: c.to_fraction() for k, c in w.terms.items()} == expected


def test_contraction_examples():
    assert contract(basis(2, "x1", "y1")) == basis(2) * 2
    assert contract(basis(2, "x1", "x2")) == 0
    with pytest.raises(ValueError):
        contract(basis(2, "x1"))


@given(st.lists(st.lists(st.integers(-2, 2), min_size=6, max_size=6), min_size=2, max_size=4))
def test_contraction_matches_decomposable_formula(vectors):
    g = 3
    w = ExtElement.one(g)
    for v in vectors:
        w = w ^ ExtElement.from_vector(HomVector(g, v))
    expected = oracles.contraction_decomposable(g, [[Fraction(x) for x in v] for v in vectors])
    assert {k: c.to_fraction() for k, c in contract(w).terms.items()} == expected


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_johnson_contraction(g):
    tau = ExtElement(g, 2, terms={(i, g + i): 1 for i in range(g - 1)}) ^ basis(g, f"y{g}")
    assert contract(tau) == basis(g, f"y{g}") * (2 * (g - 1))


@pytest.mark.parametrize("g,k,dim", [(2, 2, 5), (3, 3, 14), (2, 1, 4), (3, 2, 14), (4, 3, 48)])
def test_rep_1k_dimensions(g, k, dim):
    b = rep_1k_basis(g, k)
    assert len(b) == dim == rep_1k_dimension(g, k)
    if k >= 2:
        assert all(contract(v) == 0 for v in b)


def test_rep_1k_range():
    with pytest.raises(ValueError):
        rep_1k_basis(2, 3)
    with pytest.raises(ValueError):
        rep_1k_basis(2, 0)


@pytest.mark.parametrize("g,k", [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3), (4, 4)])
def test_irreducible_splitting(g, k):
    kernel = [v.coordinates() for v in rep_1k_basis(g, k)]
    image = [(omega0(g) ^ ExtElement.basis(g, key)).coordinates() for key in ext_basis_keys(g, k - 2)]
    assert _linalg.rank(image) == comb(2 * g, k - 2)
    assert _linalg.rank(kernel + image) == comb(2 * g, k) == len(kernel) + len(image)


@pytest.mark.parametrize("g", [2, 3])
def test_ideal_quotient_dims(g):
    dims = ideal_quotient_dims(g, 2 * g)
    expected = [1] + [rep_1k_dimension(g, k) + (k == 2) if k <= g else 0 for k in range(1, 2 * g + 1)]
    assert dims == expected
    assert sum(dims) == 1 + 1 + sum(rep_1k_dimension(g, k) for k in range(1, g + 1))


def test_ideal_quotient_pinned_values():
    assert ideal_quotient_dims(2, 4)[2] == 6
    assert ideal_quotient_dims(2, 4)[3] == 0
    assert ideal_quotient_dims(3, 2)[2] == 15
    assert ideal_quotient_dims(2, 0) == [1]
    with pytest.raises(ValueError):
        ideal_quotient_dims(2, 5)


def test_contraction_matrix_rank_is_surjective():
    for g, k in [(2, 2), (3, 3), (3, 2)]:
        assert _linalg.rank(contraction_matrix(g, k)) == comb(2 * g, k - 2)


# --- Kronecker pairing ------------------------------------------------------------------------

@pytest.mark.parametrize("g", [2, 3, 4])
def test_pair_ext_highest_weight(g):
    for k in range(1, g + 1):
        xs = [f"x{i}" for i in range(1, k + 1)]
        assert pair_ext(basis(g, *xs), basis(g, *xs, space=COH)) == 1
    assert pair_ext(basis(g, "x1"), basis(g, "y1", space=COH)) == 0


def test_pair_ext_degree_mismatch():
    with pytest.raises(ValueError):
        pair_ext(basis(2, "x1"), basis(2, "x1", "y1", space=COH))
    with pytest.raises(TypeError):
        pair_ext(basis(2, "x1"), basis(2, "x1"))


@given(st.lists(st.lists(st.integers(-2, 2), min_size=6, max_size=6), min_size=3, max_size=3),
       st.lists(st.lists(st.integers(-2, 2), min_size=6, max_size=6), min_size=3, max_size=3))
def test_pair_ext_is_determinant_on_decomposables(homs, cohs):
    g = 3
    a = ExtElement.one(g)
    b = ExtElement.one(g, COH)
    for h, c in zip(homs, cohs):
        a = a ^ ExtElement.from_vector(HomVector(g, h))
        b = b ^ ExtElement.from_vector(CohVector(g, c))
    assert pair_ext(a, b) == oracles.decomposable_pairing(homs, cohs)


@st.composite
def isotropic_triples(draw, g=3):
    word = draw(words(g))
    a = act_on_coh(word_matrix(word, g))
    out = []
    for _ in range(3):
        ys = [draw(st.integers(-2, 2)) for _ in range(g)]
        out.append(apply_matrix(a, CohVector(g, [0] * g + ys)))
    return out


@given(isotropic_triples(), st.integers(0, 5))
def test_pair_ext_vanishes_on_isotropic_triples(triple, h):
    g = 3
    for u, v in combinations(triple, 2):
        assert iota(u, v) == 0
    w = ExtElement.one(g, COH)
    for u in triple:
        w = w ^ ExtElement.from_vector(u)
    assert pair_ext(omega0(g) ^ ExtElement.basis(g, (h,)), w) == 0


def test_pair_ext_laplace_identity():
    # <omega0 ^ h, u ^ v ^ w> expands through the cup pairings of u, v, w
    g = 3
    u, v, w = XS(g, 1) + YS(g, 2), YS(g, 1), XS(g, 2) + XS(g, 3)
    wedge_uvw = ExtElement.from_vector(u) ^ ExtElement.from_vector(v) ^ ExtElement.from_vector(w)
    for h in range(2 * g):
        eh = CohVector.basis(g, h)
        pairing = lambda a: sum((a.coords[i] * eh.coords[i] for i in range(2 * g)), PolyScalar())
        expected = iota(u, v) * pairing(w) - iota(u, w) * pairing(v) + iota(v, w) * pairing(u)
        assert pair_ext(omega0(g) ^ ExtElement.basis(g, (h,)), wedge_uvw) == expected
