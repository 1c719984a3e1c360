"""The brute-force oracles on their own worked examples."""

import json
from fractions import Fraction
from itertools import product
from math import gcd
from pathlib import Path

import pytest

from abelcovers import (
    Arrangement,
    BoundExceeded,
    FgAbGroup,
    Homomorphism,
    InputError,
    IntMatrix,
    SimplicialComplex,
    Subgroup,
    TorsionCharacter,
    TranslatedSubgroup,
    gamma_count,
    toric_char_variety,
    xi_d,
)
from abelcovers.groups import epimorphism_classes, fiber_representatives
from abelcovers.oracle import (
    brute_force_equivalent,
    count_generating_maps,
    oracle_coset_intersection_nonempty,
    oracle_gamma_count,
    oracle_omega_agreement,
    oracle_xi,
)
from abelcovers.jumploci import omega_describe
from abelcovers.serialize import parse_problem

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def load(name):
    return parse_problem(json.loads((PROBLEMS / f"{name}.json").read_text()))


def Z(r, *t):
    return FgAbGroup.from_orders(r, t)


def span(H, *gens):
    return Subgroup.generated(H, [list(g) for g in gens])


def surjective_rows(H, bound):
    """Rows ν̄ : H → Z with entries in [-bound, bound] and gcd 1."""
    for row in product(range(-bound, bound + 1), repeat=H.ngens):
        if gcd(*row) == 1:
            yield Homomorphism(H, Z(1), IntMatrix([list(row)], H.ngens))


@pytest.mark.parametrize("H, A, expected", [
    (Z(2), Z(0, 2), 3),
    (Z(3), Z(0, 2, 2), 7),
    (Z(0, 2), Z(0, 4), 0),
    (Z(0, 2, 4), Z(0, 2, 2), 1),
    (Z(0, 4, 4), Z(0, 4), 6),
])
def test_gamma_oracle_examples(H, A, expected):
    assert oracle_gamma_count(H, A) == expected == gamma_count(H, A)


def test_generating_map_counts():
    # |Aut(Z_2^2)| = 6, |Aut(Z_4)| = 2, |Epi(Z_4^2, Z_4)| = 16 - 4
    assert count_generating_maps((2, 2), Z(0, 2, 2)) == 6
    assert count_generating_maps((4,), Z(0, 4)) == 2
    assert count_generating_maps((4, 4), Z(0, 4)) == 12
    assert count_generating_maps((2,), Z(0, 4)) == 0
    with pytest.raises(InputError):
        count_generating_maps((0,), Z(1))


def test_gamma_oracle_dp_path_matches_enumeration():
    H, A = Z(0, 2, 2, 4), Z(0, 2, 2)
    assert oracle_gamma_count(H, A, max_maps=1) == oracle_gamma_count(H, A) == gamma_count(H, A)


def test_xi_oracle_two_lines():
    H = Z(2)
    W = Arrangement(H, [TranslatedSubgroup(span(H, (0, 1))),
                        TranslatedSubgroup(span(H, (1, 0)), TorsionCharacter(H, [Fraction(1, 2), 0]))])
    for d in (1, 2, 3, 4):
        assert oracle_xi(W, d, index_bound=8) == xi_d(W, d)
    assert [[tuple(g) for g in x.generators()] for x in oracle_xi(W, 2, index_bound=8)] == [[(0, 1)], [(2, 0)]]


def test_xi_oracle_empty_and_single():
    H = Z(3)
    assert oracle_xi(Arrangement(H, []), 2) == []
    chi = span(H, (1, 2, 0), (0, 0, 1))
    assert oracle_xi(Arrangement(H, [TranslatedSubgroup(chi)]), 1) == [chi]


def test_xi_oracle_rejects_torsion():
    H = Z(2, 2)
    with pytest.raises(InputError):
        oracle_xi(Arrangement(H, []), 1)


def test_coset_oracle_bound():
    H = Z(3)
    a = TranslatedSubgroup(span(H, (1, 0, 0)), TorsionCharacter(H, [0, Fraction(1, 97), 0]))
    b = TranslatedSubgroup(span(H, (0, 1, 0)), TorsionCharacter(H, [Fraction(1, 89), 0, 0]))
    with pytest.raises(BoundExceeded):
        oracle_coset_intersection_nonempty(a, b, max_points=1000)


def test_brute_force_equivalence():
    H = Z(2)
    nu = Homomorphism(H, Z(1), IntMatrix([[2, 3]], 2))
    neg = Homomorphism(H, Z(1), IntMatrix([[-2, -3]], 2))
    other = Homomorphism(H, Z(1), IntMatrix([[1, 3]], 2))
    assert brute_force_equivalent(nu, neg)
    assert not brute_force_equivalent(nu, other)
    assert not brute_force_equivalent(nu, Homomorphism(Z(3), Z(1), IntMatrix([[2, 3, 0]], 3)))


def test_link_agreement_exhaustive():
    P = load("link_4_2_1")
    W, H = P.variety, P.H
    bars = list(surjective_rows(H, 3))
    rep = oracle_omega_agreement(W, Z(1), bars)
    assert rep.ok and rep.count_in_omega() == len(bars)
    fiber = [nu for b in bars for nu in fiber_representatives(b, Z(1, 2))]
    rep2 = oracle_omega_agreement(W, Z(1, 2), fiber)
    assert rep2.ok
    outside = {tuple(r.nu.rows()[0]) for r in rep2.records if not r.scan}
    assert outside == {(1, 1), (-1, -1)}


def test_strata_agreement_over_singular_points():
    P = load("strata")
    W, A = P.variety, P.A
    bar = Homomorphism(P.H, Z(1), IntMatrix([[0, 1, 0]], 3))
    reps = fiber_representatives(bar, A)
    rep = oracle_omega_agreement(W, A, reps)
    assert rep.ok
    assert (rep.count_in_omega(), len(reps)) == (1, 3)


@pytest.mark.parametrize("facets, n", [
    ([[0], [1]], 2), ([[0, 1]], 2), ([[0, 1], [1, 2]], 3), ([[0, 1], [1, 2], [0, 2]], 3),
])
def test_toric_agreement(facets, n):
    W = toric_char_variety(SimplicialComplex(n, facets), 1)
    for A in (Z(1), Z(1, 2)):
        if A.free_rank > n:
            continue
        sample = epimorphism_classes(W.parent, A, 1)
        rep = oracle_omega_agreement(W, A, sample)
        assert rep.ok and rep.mode == "arrangement-exact"
        assert all(c.kind == "sigma_A" for c in omega_describe(W, A).constituents)
