"""Laurent polynomials, admissible partitions and Fox calculus."""

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from abelcovers import (
    Arrangement,
    FgAbGroup,
    LaurentPolynomial,
    Lattice,
    Presentation,
    Subgroup,
    TorsionCharacter,
    TranslatedSubgroup,
    Unsupported,
    admissible_tau1,
    fox_alexander_matrix,
    hypersurface_positive_dim,
    minors_gcd,
    restrict_to_coset,
    tau_d,
)
from abelcovers.laurent import GroupWord, fox_identity_holds, normalize_unit

from strategies import characters, subgroups

RELAXED = [HealthCheck.too_slow, HealthCheck.filter_too_much]


@st.composite
def laurent(draw, H: FgAbGroup, max_terms: int = 4):
    k = draw(st.integers(0, max_terms))
    terms = []
    for _ in range(k):
        e = draw(st.lists(st.integers(-2, 2), min_size=H.ngens, max_size=H.ngens))
        terms.append((e, draw(st.integers(-3, 3))))
    return LaurentPolynomial(H, terms)


@st.composite
def words(draw, q: int):
    letters = draw(st.lists(st.tuples(st.integers(0, q - 1), st.sampled_from([1, -1])), max_size=10))
    return GroupWord(q, letters)


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_fox_identity(data):
    q = data.draw(st.integers(1, 4))
    rels = data.draw(st.lists(words(q), min_size=0, max_size=3))
    P = Presentation(q, rels)
    assert fox_identity_holds(P)


def test_fox_identity_on_fixed_presentations():
    for q, rels in [
        (2, ["x1 x2 x1^-1 x2^-1"]),
        (2, ["x1 x2 x1 x2^-1 x1^-1 x2^-1"]),
        (2, ["x1 x2 x1 x2 x1^-1 x2^-1 x1^-1 x2^-1"]),
        (3, ["x1 x3^2 x1^-1 x3^-2", "x2 x3^2 x2^-1 x3^-2",
             "x3^2 x3 x1 x2 x1^-1 x2^-1 x3 x1 x2 x1^-1 x2^-1"]),
    ]:
        assert fox_identity_holds(Presentation(q, rels))


def test_alexander_polynomials():
    H1 = FgAbGroup.from_orders(1, [])
    t = LaurentPolynomial.variable(H1, 0)
    trefoil = Presentation(2, ["x1 x2 x1 x2^-1 x1^-1 x2^-1"])
    assert trefoil.abelianization == H1
    assert minors_gcd(fox_alexander_matrix(trefoil), H1) == t * t - t + 1
    figure_eight = Presentation(2, ["x2^-1 x1 x2 x1^-1 x2 x1 x2^-1 x1^-1 x2 x1^-1"])
    assert minors_gcd(fox_alexander_matrix(figure_eight), H1) == t * t - 3 * t + 1
    H2 = FgAbGroup.from_orders(2, [])
    z2 = Presentation(2, ["x1 x2 x1^-1 x2^-1"])
    assert minors_gcd(fox_alexander_matrix(z2), H2) == LaurentPolynomial.constant(H2, 1)
    # the 4^2_1 torus link: the gcd is 1 + t1 t2
    link = Presentation(2, ["x1 x2 x1 x2 x1^-1 x2^-1 x1^-1 x2^-1"])
    assert minors_gcd(fox_alexander_matrix(link), H2) == LaurentPolynomial(H2, {(0, 0): 1, (1, 1): 1})


def test_minors_gcd_rejects_torsion():
    P = Presentation(3, ["x1 x3^2 x1^-1 x3^-2", "x2 x3^2 x2^-1 x3^-2",
                         "x3^2 x3 x1 x2 x1^-1 x2^-1 x3 x1 x2 x1^-1 x2^-1"])
    assert P.abelianization == FgAbGroup.from_orders(2, [4])
    with pytest.raises(Unsupported):
        minors_gcd(fox_alexander_matrix(P), P.abelianization)


@st.composite
def binomial_products(draw):
    n = draw(st.integers(2, 3))
    k = draw(st.integers(1, 3))
    H = FgAbGroup.from_orders(n, [])
    f = LaurentPolynomial.constant(H, 1)
    diffs = []
    for _ in range(k):
        a = draw(st.lists(st.integers(-2, 2), min_size=n, max_size=n))
        b = draw(st.lists(st.integers(-2, 2), min_size=n, max_size=n))
        assume(a != b)
        d = tuple(x - y for x, y in zip(a, b))
        assume(d not in diffs and tuple(-x for x in d) not in diffs)
        diffs.append(d)
        f = f * (LaurentPolynomial.monomial(H, a) - LaurentPolynomial.monomial(H, b))
    assume(len(f.support) <= 10)
    return H, f, diffs


@settings(max_examples=120, deadline=None, suppress_health_check=RELAXED)
@given(binomial_products())
def test_binomial_tau1_matches_arrangement(case):
    H, f, diffs = case
    W = Arrangement(H, [TranslatedSubgroup(Subgroup.generated(H, [d])) for d in diffs])
    expected = set(tau_d(W, 1))
    # each factor contributes the lattice orthogonal to a - b
    assert expected == {Lattice(H.free_rank, [d]).annihilator() for d in diffs}
    assert set(admissible_tau1(f)) == expected


@settings(max_examples=300, deadline=None, suppress_health_check=RELAXED)
@given(st.data())
def test_restriction_is_multiplicative(data):
    H = FgAbGroup.from_orders(data.draw(st.integers(2, 3)), [])
    f, g = data.draw(laurent(H)), data.draw(laurent(H))
    ker = data.draw(subgroups(H, bound=2))
    alpha = data.draw(characters(H, 6))
    rf, rg = restrict_to_coset(f, ker, alpha), restrict_to_coset(g, ker, alpha)
    assert restrict_to_coset(f * g, ker, alpha) == rf * rg
    assert restrict_to_coset(f + g, ker, alpha) == rf + rg


@settings(max_examples=300, deadline=None, suppress_health_check=RELAXED)
@given(st.data())
def test_positive_dimensionality_is_unit_invariant(data):
    H = FgAbGroup.from_orders(data.draw(st.integers(1, 3)), [])
    f = data.draw(laurent(H))
    e = data.draw(st.lists(st.integers(-3, 3), min_size=H.ngens, max_size=H.ngens))
    c = data.draw(st.sampled_from([1, -1, 2, -3]))
    assert hypersurface_positive_dim(f.shift(e) * c) == hypersurface_positive_dim(f)
    ker = data.draw(subgroups(H, bound=2))
    alpha = data.draw(characters(H, 4))
    r1 = restrict_to_coset(f.shift(e), ker, alpha)
    r0 = restrict_to_coset(f, ker, alpha)
    assert hypersurface_positive_dim(r1) == hypersurface_positive_dim(r0)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_evaluation_is_a_ring_map(data):
    H = FgAbGroup.from_orders(2, [])
    f, g = data.draw(laurent(H)), data.draw(laurent(H))
    chi = data.draw(characters(H, 6))
    assert (f * g).evaluate(chi) == f.evaluate(chi) * g.evaluate(chi)
    assert (f + g).evaluate(chi) == f.evaluate(chi) + g.evaluate(chi)


def test_normalization_up_to_units():
    H = FgAbGroup.from_orders(2, [])
    f = LaurentPolynomial(H, {(3, -1): -1, (2, -1): 1})
    assert normalize_unit(f) == LaurentPolynomial(H, {(1, 0): 1, (0, 0): -1})


def test_ruled_hypersurface_tau1():
    H = FgAbGroup.from_orders(3, [])
    t1, t2, t3 = (LaurentPolynomial.variable(H, i) for i in range(3))
    f = (t2 - 1) - (t1 + 1) * (t3 - 1)
    got = sorted(L.basis for L in admissible_tau1(f))
    assert got == sorted([Lattice(3, [(1, 0, 0)]).basis, Lattice(3, [(1, 2, 1)]).basis])


def test_restriction_to_translated_line():
    H = FgAbGroup.from_orders(2, [])
    t1, t2 = (LaurentPolynomial.variable(H, i) for i in range(2))
    f = t1 * t2 + 1
    ker = Subgroup.generated(H, [(1, -1)])
    half = TorsionCharacter(H, [Fraction(1, 2), 0])
    # on the coset t1 = -t2 of V(span{(1,-1)}) the polynomial becomes 1 - s^2
    g = restrict_to_coset(f, ker, half)
    assert g.ambient.free_rank == 1 and len(g.terms) == 2
    assert restrict_to_coset(t1 - t2, ker, TorsionCharacter.trivial(H)).is_zero()
