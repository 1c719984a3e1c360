"""Hypothesis strategies for small exact objects shared by the property suites."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from abelcovers import FgAbGroup, IntMatrix, Lattice, Subgroup, TorsionCharacter, TranslatedSubgroup

entries = st.integers(min_value=-5, max_value=5)


@st.composite
def int_matrices(draw, max_dim: int = 4):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(entries, min_size=n, max_size=n), min_size=m, max_size=m))
    return IntMatrix(rows, n)


@st.composite
def lattices(draw, n: int | None = None, max_gens: int = 4):
    if n is None:
        n = draw(st.integers(1, 4))
    k = draw(st.integers(0, max_gens))
    gens = draw(st.lists(st.lists(entries, min_size=n, max_size=n), min_size=k, max_size=k))
    return Lattice(n, gens)


@st.composite
def lattice_pairs(draw):
    n = draw(st.integers(1, 4))
    return draw(lattices(n)), draw(lattices(n))


@st.composite
def lattice_triples(draw):
    n = draw(st.integers(1, 4))
    return draw(lattices(n)), draw(lattices(n)), draw(lattices(n))


@st.composite
def groups(draw, max_rank: int = 3, max_torsion_gens: int = 2, max_order: int = 6):
    r = draw(st.integers(0, max_rank))
    tors = draw(st.lists(st.integers(2, max_order), max_size=max_torsion_gens))
    return FgAbGroup.from_orders(r, tors)


@st.composite
def subgroups(draw, H: FgAbGroup, max_gens: int = 3, bound: int = 4):
    k = draw(st.integers(0, max_gens))
    gens = draw(st.lists(st.lists(st.integers(-bound, bound), min_size=H.ngens, max_size=H.ngens),
                         min_size=k, max_size=k))
    return Subgroup.generated(H, gens)


@st.composite
def characters(draw, H: FgAbGroup, max_denominator: int = 12):
    vals = []
    for m in H.moduli:
        if m == 0:
            q = draw(st.integers(1, max_denominator))
            vals.append(Fraction(draw(st.integers(0, q - 1)), q))
        else:
            vals.append(Fraction(draw(st.integers(0, m - 1)), m))
    return TorsionCharacter(H, vals)


@st.composite
def cosets(draw, H: FgAbGroup, max_denominator: int = 12):
    return TranslatedSubgroup(draw(subgroups(H)), draw(characters(H, max_denominator)))


QUOTIENTS_RANK2 = [(1, ()), (1, (2,)), (1, (3,)), (1, (4,)), (1, (6,)), (2, ())]
QUOTIENTS_RANK3 = QUOTIENTS_RANK2 + [(1, (2, 2)), (2, (2,)), (2, (3,))]


@st.composite
def arrangements(draw, n: int | None = None, max_components: int = 3, max_denominator: int = 4,
                 allow_deleted: bool = True, allow_points: bool = True):
    """Random arrangements in the character torus of ``Z^n`` (``n`` = 2 or 3)."""
    from abelcovers import Arrangement

    if n is None:
        n = draw(st.integers(2, 3))
    H = FgAbGroup.from_orders(n, [])
    comps = []
    for _ in range(draw(st.integers(1, max_components))):
        k = draw(st.integers(1, n - 1))
        gens = draw(st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=k, max_size=k))
        xi = Subgroup.generated(H, gens)
        q = draw(st.integers(1, max_denominator))
        eta = TorsionCharacter(H, [Fraction(draw(st.integers(0, q - 1)), q) for _ in range(n)])
        comps.append(TranslatedSubgroup(xi, eta))
    deleted = []
    if allow_deleted and draw(st.booleans()):
        p = draw(st.sampled_from([2, 3, 4]))
        gens = [[p] + [0] * (n - 1)] + [[0] * i + [1] + [0] * (n - 1 - i) for i in range(1, n - 1)]
        deleted.append(Subgroup.generated(H, gens))
    points = []
    if allow_points and draw(st.booleans()):
        points.append(TorsionCharacter.trivial(H))
    return Arrangement(H, comps, points, deleted)


@st.composite
def quotients_for(draw, H: FgAbGroup):
    table = QUOTIENTS_RANK3 if H.free_rank >= 3 else QUOTIENTS_RANK2
    r, t = draw(st.sampled_from(table))
    return FgAbGroup.from_orders(r, t)
