"""Finitely generated abelian groups, subgroups, homomorphisms and Γ-counting."""

from itertools import product

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from abelcovers import (
    BoundExceeded,
    FgAbGroup,
    Homomorphism,
    IntMatrix,
    InputError,
    Subgroup,
    determinant_group,
    enumerate_epis_mod_aut,
    fiber_representatives,
    gamma_count,
)
from abelcovers.groups import automorphisms, epimorphism_classes, gamma_formula_cyclic, gamma_formula_elementary
from abelcovers.oracle import brute_force_equivalent, count_generating_maps, oracle_gamma_count

from strategies import groups, subgroups


def finite_groups(max_order: int):
    """Every finite abelian group of order at most ``max_order``, as invariant-factor chains."""
    out = [FgAbGroup.from_orders(0, [])]

    def extend(chain, order):
        for d in range(2, max_order // order + 1):
            if chain and d % chain[-1]:
                continue
            new = chain + [d]
            out.append(FgAbGroup.from_orders(0, new))
            extend(new, order * d)

    extend([], 1)
    return out


FINITE_32 = finite_groups(32)


def test_finite_group_listing():
    # the number of abelian groups of order n is a product of partition numbers
    counts = {n: sum(1 for G in finite_groups(64) if G.order == n) for n in (16, 32, 36, 64)}
    assert counts == {16: 5, 32: 7, 36: 4, 64: 11}
    assert len(set(FINITE_32)) == len(FINITE_32)


def test_gamma_matches_enumeration_exhaustively():
    """Every pair of finite abelian groups of order at most 32."""
    checked = 0
    for H, A in product(FINITE_32, FINITE_32):
        if H.order % A.order:
            assert gamma_count(H, A) == 0
            continue
        try:
            reps = enumerate_epis_mod_aut(H, A, max_maps=5_000)
        except BoundExceeded:
            continue
        assert gamma_count(H, A) == len(reps), (H, A)
        checked += 1
    assert checked == 383


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(st.lists(st.integers(2, 16), min_size=1, max_size=4), st.lists(st.integers(2, 16), min_size=1, max_size=3))
def test_gamma_matches_generating_tuple_count_up_to_256(hs, as_):
    H = FgAbGroup.from_orders(0, hs)
    A = FgAbGroup.from_orders(0, as_)
    assume(H.order <= 256 and A.order <= 256)
    try:
        epis = count_generating_maps(H.torsion, A, max_states=2_000)
        auts = count_generating_maps(A.torsion, A, max_states=2_000)
    except BoundExceeded:
        assume(False)
    assert epis % auts == 0
    assert gamma_count(H, A) == epis // auts


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("s", range(1, 4))
def test_closed_forms_and_oracle(n, p, s):
    Zn = FgAbGroup.from_orders(n, [])
    cyc = FgAbGroup.from_orders(0, [p ** s])
    ele = FgAbGroup.from_orders(0, [p] * s)
    assert gamma_count(Zn, cyc) == gamma_formula_cyclic(n, p, s) == oracle_gamma_count(Zn, cyc)
    assert gamma_count(Zn, ele) == gamma_formula_elementary(n, p, s) == oracle_gamma_count(Zn, ele)


def test_gamma_frozen_values():
    """gamma_count is the common size of the fibers of Γ(H, A) → Γ(H, Ā)."""
    Z = lambda r, *t: FgAbGroup.from_orders(r, t)  # noqa: E731
    assert gamma_count(Z(2), Z(1, 2)) == 1
    assert gamma_count(Z(3), Z(1, 2)) == 3
    assert gamma_count(Z(3), Z(0, 2)) == 7
    assert gamma_count(Z(6), Z(1, 2)) == 31
    assert gamma_count(Z(2, 4), Z(2, 4)) == 1
    assert gamma_count(Z(1, 4), Z(0, 2, 2)) == 1
    assert gamma_count(Z(0, 4), Z(0, 2, 2)) == 0
    assert gamma_count(Z(1), Z(0, 2)) == 1
    assert gamma_count(Z(1), Z(0, 2, 2)) == 0


@settings(max_examples=120, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(groups(max_rank=3, max_torsion_gens=1, max_order=4), groups(max_rank=2, max_torsion_gens=2, max_order=4))
def test_gamma_against_oracle_with_free_parts(H, A):
    assume(A.free_rank <= H.free_rank)
    try:
        expected = oracle_gamma_count(H, A)
    except BoundExceeded:
        assume(False)
    assert gamma_count(H, A) == expected


@st.composite
def fiber_cases(draw):
    H = draw(groups(max_rank=3, max_torsion_gens=1, max_order=4))
    assume(H.free_rank >= 1)
    r = draw(st.integers(0, min(H.free_rank, 2)))
    A = draw(groups(max_rank=0, max_torsion_gens=2, max_order=4))
    A = FgAbGroup.from_orders(r, A.torsion)
    assume(A.torsion_order ** (H.ngens - r) <= 5_000)
    classes = epimorphism_classes(H, FgAbGroup.from_orders(r, []), bound=1)
    assume(classes)
    nu_bar = draw(st.sampled_from(classes))
    return H, A, nu_bar


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
@given(fiber_cases())
def test_fiber_size_and_inequivalence(case):
    H, A, nu_bar = case
    reps = fiber_representatives(nu_bar, A)
    assert len(reps) == gamma_count(H, A)
    for nu in reps:
        assert nu.is_epi()
        assert nu.free_quotient().equivalent(nu_bar)
    # classes are kernels, so distinct kernels mean pairwise inequivalent
    assert len({nu.kernel() for nu in reps}) == len(reps)
    # the automorphism search is slower; it covers the first few classes pairwise
    head = reps[:6]
    for a, b in product(head, repeat=2):
        assert brute_force_equivalent(a, b) == (a is b)


@settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
@given(fiber_cases(), st.data())
def test_equivalence_is_splitting_independent(case, data):
    """Twisting a representative by an automorphism of A keeps its class."""
    H, A, nu_bar = case
    reps = fiber_representatives(nu_bar, A)
    if not reps:
        return
    nu = data.draw(st.sampled_from(reps))
    T = A.torsion_part()
    if T.is_trivial() or T.order > 64:
        return
    alpha = data.draw(st.sampled_from(automorphisms(T)))
    r = A.free_rank
    # α acts on the torsion rows; shear the torsion rows by a free row as well
    shear = data.draw(st.lists(st.integers(0, 3), min_size=len(T.torsion), max_size=len(T.torsion)))
    rows = [list(nu.matrix.row(i)) for i in range(r)]
    tors_cols = [[nu.matrix.row(r + t)[c] for t in range(len(T.torsion))] for c in range(H.ngens)]
    k = len(T.torsion)
    new_tors = [T.reduce([sum(col[j] * alpha[j][t] for j in range(k)) for t in range(k)]) for col in tors_cols]
    for t in range(len(T.torsion)):
        extra = rows[0] if r else [0] * H.ngens
        rows.append([new_tors[c][t] + shear[t] * extra[c] for c in range(H.ngens)])
    twisted = Homomorphism(H, A, IntMatrix(rows, H.ngens))
    assert twisted.equivalent(nu)
    assert brute_force_equivalent(nu, twisted)


@settings(max_examples=400, deadline=None)
@given(st.data())
def test_determinant_group_trivial_iff_saturated(data):
    H = data.draw(groups())
    xi = data.draw(subgroups(H))
    assert determinant_group(xi).is_trivial() == (xi.saturation().preimage == xi.preimage)
    assert xi.saturation().is_primitive()
    assert xi.index_in_saturation() == determinant_group(xi).order


@settings(max_examples=300, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(st.data())
def test_kernel_rank(data):
    H = data.draw(groups(max_rank=3))
    A = data.draw(groups(max_rank=H.free_rank, max_torsion_gens=1, max_order=4))
    assume(A.free_rank <= H.free_rank)
    rows = data.draw(st.lists(st.lists(st.integers(-3, 3), min_size=H.ngens, max_size=H.ngens),
                              min_size=A.ngens, max_size=A.ngens))
    try:
        nu = Homomorphism(H, A, IntMatrix(rows, H.ngens))
    except InputError:
        assume(False)
    assume(nu.is_epi())
    assert nu.kernel().free_rank == H.free_rank - A.free_rank


def test_subgroups_contain_relations():
    H = FgAbGroup.from_orders(1, [4])
    xi = Subgroup.generated(H, [(2, 0)])
    assert H.relation_lattice() <= xi.preimage
    assert xi.quotient() == FgAbGroup.from_orders(0, [2, 4])
    # rank ξ = rank H, so the saturation is all of H
    assert xi.saturation() == H.whole()
    assert determinant_group(xi) == FgAbGroup.from_orders(0, [2, 4])
    eta = Subgroup.generated(H, [(2, 1)])
    assert determinant_group(eta) == FgAbGroup.from_orders(0, [8])


def test_invalid_maps_rejected():
    H = FgAbGroup.from_orders(0, [4])
    A = FgAbGroup.from_orders(0, [3])
    with pytest.raises(InputError):
        Homomorphism(H, A, IntMatrix([[1]], 1))
