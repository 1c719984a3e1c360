"""Ξ-sets, incidence sets σ/U/θ, Υ-membership and descriptions of Ω.

A variety ``W`` in the character group is either an :class:`Arrangement`
(translated subgroups, deleted subgroups and points) or a
:class:`Hypersurface` ``{f = 0}`` plus optional points.  Membership of a class
``[ν] ∈ Γ(H, A)`` in Ω means that ``im ν̂ ∩ W`` is finite; everything here
decides that exactly, by rank and lattice-containment arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Union

from .characters import (
    DEFAULT_MAX_DETERMINANT,
    Arrangement,
    TorsionCharacter,
    TranslatedSubgroup,
    character_kernel,
    coset_containment,
    coset_intersection,
    dual_of_quotient_torsion,
    epsilon_of_cyclic_extension,
    torsion_characters,
)
from .errors import InputError, InvariantViolation
from .groups import FgAbGroup, Homomorphism, Subgroup, cyclic_exponent, fiber_representatives
from .laurent import (
    LaurentPolynomial,
    admissible_tau1,
    hypersurface_positive_dim,
    maximal_lattices,
    restrict_to_coset,
)
from .lattice import Lattice


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class Hypersurface:
    """``{f = 0} ∪ points`` in the character group of ``f.ambient``."""

    f: LaurentPolynomial
    points: tuple[TorsionCharacter, ...] = ()

    @property
    def parent(self) -> FgAbGroup:
        return self.f.ambient


Variety = Union[Arrangement, Hypersurface]


def _sort_subgroups(xs) -> list[Subgroup]:
    uniq = {x.preimage: x for x in xs}
    return [uniq[k] for k in sorted(uniq, key=lambda L: (L.rank, L.basis))]


# ---------------------------------------------------------------------------
# Ξ_d and τ_d
# ---------------------------------------------------------------------------

def maximal_translated_tori(W: Arrangement, *, max_order: int = DEFAULT_MAX_DETERMINANT) -> list[TranslatedSubgroup]:
    """Maximal positive-dimensional cosets ``β V(χ̄)`` of connected subtori inside ``W``.

    An irreducible translated torus contained in a finite union of such
    cosets lies in one of them, so maximality only needs pairwise containment.
    """
    seen = {}
    for c in W.cosets(max_order=max_order):
        if c.dim > 0:
            seen.setdefault(c.key(), c)
    cands = [seen[k] for k in sorted(seen)]
    out = []
    for i, c in enumerate(cands):
        if not any(j != i and coset_containment(c, o) for j, o in enumerate(cands)):
            out.append(c)
    return out


def xi_d(W: Arrangement, d: int, *, max_order: int = DEFAULT_MAX_DETERMINANT) -> list[Subgroup]:
    """``Ξ_d(W)``: subgroups ``χ̄ ∩ ker β`` over maximal cosets ``β V(χ̄)`` with ``ord(β|χ̄)`` dividing ``d``."""
    if d < 1:
        raise InputError("d must be a positive integer")
    out = []
    for c in maximal_translated_tori(W, max_order=max_order):
        if d % c.translation_order() == 0:
            out.append(epsilon_of_cyclic_extension(c.xi, c.eta))
    return _sort_subgroups(out)


def xi_exponent(W: Arrangement, *, max_order: int = DEFAULT_MAX_DETERMINANT) -> int:
    """Smallest ``d`` with ``Ξ_d(W)`` containing every maximal coset's subgroup."""
    c = 1
    for t in maximal_translated_tori(W, max_order=max_order):
        c = _lcm(c, t.translation_order())
    return c


def xi_all(W: Arrangement, *, max_order: int = DEFAULT_MAX_DETERMINANT) -> list[Subgroup]:
    """The union of all ``Ξ_d(W)``."""
    return xi_d(W, xi_exponent(W, max_order=max_order), max_order=max_order)


def dual_lattice(xi: Subgroup) -> Lattice:
    """``(H/ξ)^∨`` inside ``Hom(H, Z) = Z^n`` (functionals on the free coordinates)."""
    H = xi.parent
    ann = xi.preimage.annihilator()
    n = H.free_rank
    for b in ann.basis:
        if any(b[n:]):
            raise InvariantViolation("functional nonzero on a torsion coordinate")
    return Lattice(n, [b[:n] for b in ann.basis])


def tau_d(W: Arrangement, d: int, *, max_order: int = DEFAULT_MAX_DETERMINANT) -> list[Lattice]:
    """Inclusion-maximal lattices ``(H/ξ)^∨`` for ``ξ ∈ Ξ_d(W)``."""
    return maximal_lattices(dual_lattice(x) for x in xi_d(W, d, max_order=max_order))


def hypersurface_xi1(h: Hypersurface) -> list[Subgroup]:
    """``Ξ₁`` of a hypersurface, from the admissible-partition lattices ``τ₁``."""
    H = h.parent
    out = []
    for L in admissible_tau1(h.f):
        if L.rank == 0:
            continue
        ann = L.annihilator()
        out.append(Subgroup(H, Lattice(H.ngens, list(ann.basis))))
    return _sort_subgroups(out)


# ---------------------------------------------------------------------------
# σ, U, θ
# ---------------------------------------------------------------------------

def _check_source(nu: Homomorphism, xi: Subgroup) -> None:
    if nu.source != xi.parent:
        raise InputError("homomorphism and subgroup over different groups")


def sigma_member(nu: Homomorphism, xi: Subgroup) -> bool:
    """``rank(ker ν + ξ) < rank H``."""
    _check_source(nu, xi)
    return (nu.kernel() + xi).free_rank < nu.source.free_rank


def u_member(nu: Homomorphism, xi: Subgroup) -> bool:
    """``σ_A(ξ)`` together with ``ker ν ∩ ξ̄ ⊆ ξ``."""
    if not sigma_member(nu, xi):
        return False
    return xi.contains_subgroup(nu.kernel() & xi.saturation())


def intermediate_subgroups(xi: Subgroup, *, max_order: int = DEFAULT_MAX_DETERMINANT) -> list[Subgroup]:
    """All ``ξ ≤ ξ' ⊊ ξ̄`` with ``ξ̄/ξ'`` cyclic.

    Subgroups of the finite group ``ξ̄/ξ`` with cyclic quotient are exactly the
    kernels of its nontrivial characters, so ``ξ'`` runs over ``ξ̄ ∩ ker ρ``.
    """
    sat = xi.saturation()
    out = [sat & character_kernel(rho) for rho in dual_of_quotient_torsion(xi, max_order=max_order)[1:]]
    return _sort_subgroups(out)


def theta_witness(nu: Homomorphism, xi: Subgroup, *, max_order: int = DEFAULT_MAX_DETERMINANT) -> Subgroup | None:
    """An intermediate ``ξ'`` with ``ker ν ∩ ξ̄ ⊆ ξ'``, or ``None``."""
    _check_source(nu, xi)
    meet = nu.kernel() & xi.saturation()
    for xp in intermediate_subgroups(xi, max_order=max_order):
        if xp.contains_subgroup(meet):
            return xp
    return None


def theta_member(nu: Homomorphism, xi: Subgroup, *, max_order: int = DEFAULT_MAX_DETERMINANT) -> bool:
    return theta_witness(nu, xi, max_order=max_order) is not None


# ---------------------------------------------------------------------------
# Υ and Ω
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UpsilonWitness:
    """Which component of ``im ν̂`` met which part of ``W`` in positive dimension."""

    kappa: TorsionCharacter          # character of Tors(A) selecting the component of im ν̂
    coset: TranslatedSubgroup | None  # arrangement coset (None in hypersurface mode)
    dim: int | None = None
    restricted: LaurentPolynomial | None = None


def image_components(nu: Homomorphism, *, max_order: int = DEFAULT_MAX_DETERMINANT) -> list[tuple[TorsionCharacter, TranslatedSubgroup]]:
    """Components of ``im ν̂ = V(ker ν)``: the translates ``ν̂(κ) V(ker ν)̄`` over characters ``κ`` of ``Tors(A)``."""
    K = nu.kernel()
    sat = K.saturation()
    out = []
    for kappa in torsion_characters(nu.target, max_order=max_order):
        out.append((kappa, TranslatedSubgroup(sat, kappa.pullback(nu))))
    return out


def upsilon_witness(nu: Homomorphism, W: Variety, *, max_order: int = DEFAULT_MAX_DETERMINANT) -> UpsilonWitness | None:
    """A certificate that ``dim(im ν̂ ∩ W) > 0``, or ``None`` if the intersection is finite."""
    if nu.source != W.parent:
        raise InputError("homomorphism source differs from the variety's group")
    comps = image_components(nu, max_order=max_order)
    if isinstance(W, Hypersurface):
        K = nu.kernel()
        for kappa, comp in comps:
            g = restrict_to_coset(W.f, K, comp.eta)
            if hypersurface_positive_dim(g):
                return UpsilonWitness(kappa, None, None, g)
        return None
    cosets = [c for c in W.cosets(max_order=max_order) if c.dim > 0]
    for kappa, comp in comps:
        for c in cosets:
            inter = coset_intersection(comp, c)
            if inter.dim > 0:
                return UpsilonWitness(kappa, c, inter.dim)
    return None


def upsilon_member(nu: Homomorphism, W: Variety, *, max_order: int = DEFAULT_MAX_DETERMINANT) -> bool:
    return upsilon_witness(nu, W, max_order=max_order) is not None


def omega_closed_form(nu: Homomorphism, W: Arrangement, *, max_order: int = DEFAULT_MAX_DETERMINANT) -> bool:
    """Ω-membership for arrangements from the component-wise criterion.

    ``[ν] ∈ Ω`` iff for each translated component ``η_j V(ξ_j)`` either
    ``σ_A(ξ_j)`` fails or ``ker η_j`` does not contain ``ker ν ∩ ξ_j``.
    """
    K = nu.kernel()
    for c in W.translated_components(max_order=max_order):
        if sigma_member(nu, c.xi) and character_kernel(c.eta).contains_subgroup(K & c.xi):
            return False
    return True


def omega_member(nu: Homomorphism, W: Variety, *, verify: bool = True,
                 max_order: int = DEFAULT_MAX_DETERMINANT) -> bool:
    """``[ν] ∈ Ω``: ``im ν̂ ∩ W`` is finite.

    For arrangements the answer is recomputed from the closed form and the
    two must agree.
    """
    result = not upsilon_member(nu, W, max_order=max_order)
    if verify and isinstance(W, Arrangement):
        other = omega_closed_form(nu, W, max_order=max_order)
        if other != result:
            raise InvariantViolation(
                f"Ω-membership disagrees: scan says {result}, closed form says {other} for {nu.rows()}")
    return result


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

KINDS = ("U_A", "sigma_A", "sigma_and_theta")
MODES = ("rank1-exact", "arrangement-exact", "upper-bound-only")


@dataclass(frozen=True)
class Constituent:
    xi: Subgroup
    kind: str
    witness_eta: TorsionCharacter | None = None

    def contains(self, nu: Homomorphism, *, max_order: int = DEFAULT_MAX_DETERMINANT) -> bool:
        if self.kind == "sigma_A":
            return sigma_member(nu, self.xi)
        if self.kind == "U_A":
            return u_member(nu, self.xi)
        if self.kind == "sigma_and_theta":
            return sigma_member(nu, self.xi) and theta_member(nu, self.xi, max_order=max_order)
        raise InputError(f"unknown constituent kind {self.kind}")


@dataclass(frozen=True)
class ObstructionReport:
    """``Ω`` described as ``Γ(H, A)`` minus a union of incidence sets.

    In the exact modes ``Ω`` equals the complement; in ``upper-bound-only``
    mode ``Ω`` is only known to lie inside it.
    """

    H: FgAbGroup
    A: FgAbGroup
    mode: str
    constituents: tuple[Constituent, ...]
    constant: int = 1
    notes: tuple[str, ...] = field(default=())

    @property
    def exact(self) -> bool:
        return self.mode != "upper-bound-only"

    def witness(self, nu: Homomorphism) -> Constituent | None:
        for c in self.constituents:
            if c.contains(nu):
                return c
        return None

    def in_complement(self, nu: Homomorphism) -> bool:
        """Whether ``[ν]`` avoids every constituent (equals Ω-membership in exact modes)."""
        if nu.source != self.H or nu.target != self.A:
            raise InputError("homomorphism does not belong to this report's Γ(H, A)")
        return self.witness(nu) is None


def translation_constant(W: Arrangement, *, max_order: int = DEFAULT_MAX_DETERMINANT) -> int:
    """``lcm_j ord(η_j) · c(ξ̄_j/ξ_j)`` over the translated components."""
    c = 1
    for comp in W.translated_components(max_order=max_order):
        c = _lcm(c, comp.eta.order * cyclic_exponent(comp.xi.determinant_group()))
    return c


def omega_describe(W: Variety, A: FgAbGroup, *, max_order: int = DEFAULT_MAX_DETERMINANT) -> ObstructionReport:
    """Explicit constituents whose union is the complement of Ω in ``Γ(H, A)``."""
    H = W.parent
    if A.free_rank > H.free_rank:
        raise InputError("A is not a quotient of H")
    if isinstance(W, Hypersurface):
        xis = hypersurface_xi1(W)
        if A.free_rank == 1 and not A.torsion:
            cons = tuple(Constituent(x, "sigma_A") for x in xis)
            return ObstructionReport(H, A, "rank1-exact", cons, 1)
        cons = tuple(Constituent(x, "U_A") for x in xis)
        return ObstructionReport(H, A, "upper-bound-only", cons, 1,
                                 ("only Ξ₁ of the hypersurface is available; Ω lies inside the complement",))
    comps = W.components
    if W.is_untranslated():
        xis = _sort_subgroups(c.xi.saturation() for c in comps if c.dim > 0)
        cons = tuple(Constituent(x, "sigma_A") for x in xis)
        return ObstructionReport(H, A, "arrangement-exact", cons, 1, ("untranslated subgroups",))
    if all(c.eta.vanishes_on(c.xi) for c in comps) and W.deleted:
        plain = _sort_subgroups(c.xi.saturation() for c in comps if c.dim > 0)
        cons = [Constituent(x, "sigma_A") for x in plain]
        cons += [Constituent(x, "sigma_and_theta") for x in _sort_subgroups(W.deleted)
                 if H.free_rank - x.free_rank > 0]
        return ObstructionReport(H, A, "arrangement-exact", tuple(cons), 1,
                                 ("subgroups with deleted identity components",))
    if A.free_rank == 1:
        c = cyclic_exponent(A)
        mode = "rank1-exact"
    else:
        c = translation_constant(W, max_order=max_order)
        mode = "arrangement-exact"
    cons = []
    for t in maximal_translated_tori(W, max_order=max_order):
        if c % t.translation_order() == 0:
            cons.append(Constituent(epsilon_of_cyclic_extension(t.xi, t.eta), "U_A", t.eta))
    uniq = {}
    for k in cons:
        uniq.setdefault(k.xi.preimage, k)
    ordered = tuple(uniq[k] for k in sorted(uniq, key=lambda L: (L.rank, L.basis)))
    return ObstructionReport(H, A, mode, ordered, c)


def u_set_member(nu: Homomorphism, W: Variety, *, max_order: int = DEFAULT_MAX_DETERMINANT) -> Subgroup | None:
    """Witness ``ξ`` for ``[ν] ∈ U_A(W)`` (the union over all ``Ξ_d``), or ``None``.

    For a hypersurface only ``Ξ₁`` is available, so ``None`` there means
    ``[ν] ∉ U_{A,1}(W)``.
    """
    xis = hypersurface_xi1(W) if isinstance(W, Hypersurface) else xi_all(W, max_order=max_order)
    for x in xis:
        if u_member(nu, x):
            return x
    return None


# ---------------------------------------------------------------------------
# Singular sets and pullback diagnostics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiberProbe:
    nu_bar_in_omega: bool
    fiber_size: int
    in_omega_count: int
    members: tuple[Homomorphism, ...]
    non_members: tuple[Homomorphism, ...]

    @property
    def singular(self) -> bool:
        """``[ν̄] ∈ Σ``: it lies in ``Ω_Ā`` but part of its fiber leaves ``Ω_A``."""
        return self.nu_bar_in_omega and self.in_omega_count < self.fiber_size


def singular_set_probe(W: Variety, A: FgAbGroup, nu_bar: Homomorphism, *,
                       max_order: int = DEFAULT_MAX_DETERMINANT) -> FiberProbe:
    """Count the classes over ``[ν̄]`` that stay in Ω."""
    if nu_bar.target != A.free_part():
        raise InputError("ν̄ must map onto the free part of A")
    bar_in = omega_member(nu_bar, W, max_order=max_order)
    reps = fiber_representatives(nu_bar, A)
    yes, no = [], []
    for nu in reps:
        (yes if omega_member(nu, W, max_order=max_order) else no).append(nu)
    return FiberProbe(bar_in, len(reps), len(yes), tuple(yes), tuple(no))


@dataclass(frozen=True)
class Diagnosis:
    verdict: str  # guaranteed-pullback | guaranteed-strict | inconclusive
    reason: str


def _min_order_in_coset(c: TranslatedSubgroup, *, max_order: int = DEFAULT_MAX_DETERMINANT) -> int:
    """Smallest order of a torsion point of the coset ``η V(ξ)``."""
    return min(comp.translation_order() for comp in c.components(max_order=max_order))


def pullback_diagnostics(W: Arrangement, A: FgAbGroup, *, max_order: int = DEFAULT_MAX_DETERMINANT) -> Diagnosis:
    """Decide syntactically whether ``Ω_A = q⁻¹(Ω_Ā)`` is guaranteed, guaranteed to fail, or unknown."""
    H = W.parent
    comps = [c for c in W.translated_components(max_order=max_order) if c.dim > 0]
    tors = A.torsion_order
    orders = [c.translation_order() for c in comps]
    if all(gcd(o, tors) == 1 for o in orders):
        return Diagnosis("guaranteed-pullback",
                         f"translation orders {sorted(set(orders)) or [1]} are coprime to |Tors(A)| = {tors}")
    cA = cyclic_exponent(A)
    r, n = A.free_rank, H.free_rank
    if len(comps) == 1 and not H.torsion:
        rho = comps[0]
        o = _min_order_in_coset(rho, max_order=max_order)
        if o > 1 and cA % o == 0 and r < n:
            return Diagnosis("guaranteed-strict",
                             f"single translated subgroup with ord(ρ) = {o} dividing c(A) = {cA} and rank A = {r} < {n}")
    if comps and all(c.translation_order() > 1 for c in comps):
        for i, first in enumerate(comps):
            others = [c for j, c in enumerate(comps) if j != i]
            inter = H.whole()
            for c in others:
                inter = inter & c.xi
            dim_T = n - inter.free_rank if others else 0
            if others and first.xi.saturation().contains_subgroup(inter):
                continue  # identity component of T1 lies in T'
            o = _min_order_in_coset(first, max_order=max_order)
            if cA % o == 0 and r < n - dim_T:
                return Diagnosis("guaranteed-strict",
                                 f"transverse component {i}: ord(ρ) = {o} divides c(A) = {cA}, rank A = {r} < {n} - {dim_T}")
    return Diagnosis("inconclusive", "neither the coprimality nor the strictness hypotheses hold")
