"""Independent brute-force recomputations used to cross-check the main algorithms.

Each oracle avoids the routine it checks: Γ-counts are obtained by counting
generating tuples rather than by the prime-power formula, Ξ-sets by searching
subgroups and translation characters against the definition, coset
intersections by searching torsion points, and Ω-membership by comparing
three descriptions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, prod
from typing import Iterable, Sequence

from .characters import (
    Arrangement,
    TorsionCharacter,
    TranslatedSubgroup,
    coset_containment,
)
from .errors import BoundExceeded, InputError
from .groups import (
    FgAbGroup,
    Homomorphism,
    Subgroup,
    cyclic_exponent,
    enumerate_epis_mod_aut,
    quotient_invariants,
)
from .jumploci import (
    Variety,
    omega_closed_form,
    omega_describe,
    upsilon_member,
)
from .lattice import IntMatrix, Lattice

DEFAULT_MAX_STATES = 200_000


# ---------------------------------------------------------------------------
# Γ(H, A)
# ---------------------------------------------------------------------------

def _finite_model(H: FgAbGroup, A: FgAbGroup) -> tuple[FgAbGroup, FgAbGroup]:
    """Finite groups with ``|Γ|`` equal to ``|Γ(H/Ā, A/Ā)|``.

    Maps from ``Z^m ⊕ T`` to a finite group of exponent ``N`` factor through
    ``(Z_N)^m ⊕ T``.
    """
    T = A.torsion_part()
    N = cyclic_exponent(A)
    m = H.free_rank - A.free_rank
    if m < 0:
        return H, A
    orders = ([N] * m if N > 1 else []) + list(H.torsion)
    return FgAbGroup.from_orders(0, orders), T


def count_generating_maps(source_orders: Sequence[int], B: FgAbGroup, *,
                          max_states: int = DEFAULT_MAX_STATES) -> int:
    """Number of homomorphisms onto the finite group ``B`` from ``⊕ Z_{e_i}`` (``e_i = 0`` for ``Z``).

    Dynamic programming over the subgroup generated by the images chosen so
    far; a state is the canonical preimage lattice of that subgroup.
    """
    if not B.is_finite():
        raise InputError("target must be finite")
    elems = B.elements()
    R = B.relation_lattice()
    states: dict[Lattice, int] = {R: 1}
    step_cache: dict[tuple[Lattice, tuple[int, ...]], Lattice] = {}
    for e in source_orders:
        allowed = elems if e == 0 else [a for a in elems if B.is_zero([e * x for x in a])]
        nxt: dict[Lattice, int] = {}
        for S, c in states.items():
            for a in allowed:
                key = (S, a)
                T = step_cache.get(key)
                if T is None:
                    T = S if S.contains(a) else Lattice(B.ngens, list(S.basis) + [a])
                    step_cache[key] = T
                nxt[T] = nxt.get(T, 0) + c
        if len(nxt) > max_states:
            raise BoundExceeded("too many subgroup states")
        states = nxt
    return states.get(Lattice.full(B.ngens), 0)


def oracle_gamma_count(H: FgAbGroup, A: FgAbGroup, *, max_maps: int = 20_000) -> int:
    """``|Γ(H/Ā, A/Ā)|`` by counting epimorphisms of a finite model and dividing by ``|Aut|``.

    Small instances list Aut-orbits explicitly; larger ones count epimorphisms
    by dynamic programming, using that ``Aut(B)`` acts freely and
    ``|Aut(B)| = #Epi(B, B)``.
    """
    if A.free_rank > H.free_rank:
        return 0
    G, B = _finite_model(H, A)
    if B.order == 1:
        return 1
    if B.order > G.order:
        return 0
    if B.order ** len(G.torsion) <= max_maps and B.order <= 512:
        return len(enumerate_epis_mod_aut(G, B, max_maps=max_maps))
    epis = count_generating_maps(G.torsion, B)
    auts = count_generating_maps(B.torsion, B)
    q, r = divmod(epis, auts)
    if r:
        raise AssertionError("Aut(B) does not act freely: epimorphism count not divisible")
    return q


def _small_preimage(nu: Homomorphism, a: Sequence[int], radius: int) -> tuple[int, ...] | None:
    A = nu.target
    goal = A.reduce(a)
    H = nu.source
    ranges = [range(-radius, radius + 1) if m == 0 else range(m) for m in H.moduli]
    for x in product(*ranges):
        if nu(x) == goal:
            return x
    return None


def brute_force_equivalent(nu1: Homomorphism, nu2: Homomorphism, *, radius: int = 3) -> bool:
    """Search an automorphism ``α`` of ``A`` with ``α ∘ ν₁ = ν₂``.

    ``α`` is forced on each generator ``a_i`` of ``A`` by choosing a preimage
    ``x_i`` under ``ν₁`` (searched in a box) and setting ``α(a_i) = ν₂(x_i)``.
    """
    if nu1.source != nu2.source or nu1.target != nu2.target:
        return False
    A, H = nu1.target, nu1.source
    imgs = []
    for i in range(A.ngens):
        e = [int(i == j) for j in range(A.ngens)]
        x = _small_preimage(nu1, e, radius)
        if x is None:
            raise BoundExceeded(f"no preimage of generator {i} within radius {radius}")
        imgs.append(nu2(x))
    M = IntMatrix.from_columns(imgs, A.ngens)
    R = A.relation_lattice()
    if any(not R.contains(M.apply(r)) for r in R.basis):
        return False
    for j in range(H.ngens):
        e = [int(j == k) for k in range(H.ngens)]
        if A.reduce(M.apply(nu1(e))) != nu2(e):
            return False
    return True


# ---------------------------------------------------------------------------
# Torsion-point search for coset intersections
# ---------------------------------------------------------------------------

def oracle_coset_intersection_nonempty(c1: TranslatedSubgroup, c2: TranslatedSubgroup, *,
                                       max_points: int = 250_000) -> bool:
    """Search for a torsion character lying in both cosets.

    If the cosets meet, they share a point whose order divides
    ``lcm(ord η₁, ord η₂) · c(Tors(H/(ξ₁+ξ₂)))``: the difference of the two
    translations is a character of ``ξ₁+ξ₂``, and it extends to the
    saturation after dividing by at most that exponent.  So the search over
    this finite grid is complete.
    """
    H = c1.parent
    t = cyclic_exponent(quotient_invariants(H, c1.xi + c2.xi))
    o1, o2 = c1.eta.order, c2.eta.order
    N = o1 * o2 // gcd(o1, o2) * t
    for d in H.torsion:
        N = N * d // gcd(N, d)
    ranges = []
    for m in H.moduli:
        step = N if m == 0 else m
        ranges.append([Fraction(k, step) for k in range(step)])
    if prod(len(r) for r in ranges) > max_points:
        raise BoundExceeded("too many torsion points to search")
    for vals in product(*ranges):
        chi = TorsionCharacter(H, vals)
        if c1.contains_character(chi) and c2.contains_character(chi):
            return True
    return False


# ---------------------------------------------------------------------------
# Ξ_d by direct search
# ---------------------------------------------------------------------------

def _sublattices_of_index(basis: Sequence[Sequence[int]], m: int, n: int) -> list[Lattice]:
    """Sublattices of index ``m`` in the lattice spanned by ``basis``, via triangular HNF matrices."""
    k = len(basis)
    out = []

    def diagonals(rem: int, slots: int):
        if slots == 0:
            if rem == 1:
                yield ()
            return
        for d in range(1, rem + 1):
            if rem % d == 0:
                for rest in diagonals(rem // d, slots - 1):
                    yield (d,) + rest

    for diag in diagonals(m, k):
        # column j has diagonal diag[j] and entries below it reduced mod the later diagonals
        choices = []
        for j in range(k):
            below = [range(diag[i]) for i in range(j + 1, k)]
            choices.append(list(product(*below)))
        for cols in product(*choices):
            gens = []
            for j in range(k):
                coeff = [0] * k
                coeff[j] = diag[j]
                for off, i in enumerate(range(j + 1, k)):
                    coeff[i] = cols[j][off]
                gens.append([sum(c * b[t] for c, b in zip(coeff, basis)) for t in range(n)])
            out.append(Lattice(n, gens))
    return out


def oracle_xi(W: Arrangement, d: int, index_bound: int = 16, *, max_candidates: int = 100_000) -> list[Subgroup]:
    """``Ξ_d(W)`` by testing subgroups of bounded index in the component saturations.

    Only torsion-free ``H`` of rank at most 3 is supported.  For each
    candidate ``ξ`` with ``ξ̄/ξ`` cyclic of order dividing ``d``, translation
    characters ``η`` with values in ``(1/d)Z`` are searched for one that
    vanishes on ``ξ``, generates the dual of ``ξ̄/ξ`` and makes ``ηV(ξ̄)`` a
    maximal positive-dimensional coset inside ``W``.
    """
    H = W.parent
    if H.torsion or H.free_rank > 3:
        raise InputError("oracle_xi supports torsion-free groups of rank at most 3")
    n = H.free_rank
    cosets = [c for c in W.cosets() if c.dim > 0]
    sats = {}
    for c in cosets:
        sats.setdefault(c.xi.preimage, c.xi)
    etas = [TorsionCharacter(H, [Fraction(k, d) for k in ks]) for ks in product(range(d), repeat=n)]
    found = {}
    total = 0
    for satL, sat in sorted(sats.items(), key=lambda kv: kv[0].basis):
        for m in range(1, min(d, index_bound) + 1):
            if d % m:
                continue
            for L in _sublattices_of_index(satL.basis, m, n):
                total += 1
                if total > max_candidates:
                    raise BoundExceeded("too many candidate subgroups")
                xi = Subgroup(H, L)
                dg = xi.determinant_group()
                if len(dg.torsion) > 1:
                    continue
                for eta in etas:
                    if not eta.vanishes_on(xi) or eta.order_on(sat) != m:
                        continue
                    cand = TranslatedSubgroup(sat, eta)
                    if not any(coset_containment(cand, c) for c in cosets):
                        continue
                    if any(coset_containment(cand, c) and not coset_containment(c, cand) for c in cosets):
                        continue
                    found[L] = xi
                    break
    return [found[k] for k in sorted(found, key=lambda L: (L.rank, L.basis))]


# ---------------------------------------------------------------------------
# Ω agreement
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AgreementRecord:
    nu: Homomorphism
    scan: bool
    closed_form: bool | None
    described: bool | None

    @property
    def agree(self) -> bool:
        vals = [v for v in (self.scan, self.closed_form, self.described) if v is not None]
        return len(set(vals)) <= 1


@dataclass(frozen=True)
class AgreementReport:
    records: tuple[AgreementRecord, ...]
    mode: str
    disagreements: tuple[AgreementRecord, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def count_in_omega(self) -> int:
        return sum(r.scan for r in self.records)


def oracle_omega_agreement(W: Variety, A: FgAbGroup, sample: Iterable[Homomorphism]) -> AgreementReport:
    """Compare ``¬Υ``, the component-wise closed form and the constituent description on each sample."""
    report = omega_describe(W, A)
    recs = []
    for nu in sample:
        scan = not upsilon_member(nu, W)
        closed = omega_closed_form(nu, W) if isinstance(W, Arrangement) else None
        described = report.in_complement(nu) if report.exact else None
        recs.append(AgreementRecord(nu, scan, closed, described))
    bad = tuple(r for r in recs if not r.agree)
    return AgreementReport(tuple(recs), report.mode, bad)
