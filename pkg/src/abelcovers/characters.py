"""Torsion points of the character group and torsion-translated algebraic subgroups.

Characters are stored additively: a torsion character of ``H`` is a vector
of rationals in ``[0, 1)``, one per preimage coordinate, and the complex
character is ``h ↦ exp(2πi · values·h)``.  An algebraic subgroup ``V(ξ)``
is kept as the subgroup ``ξ`` itself; a translated subgroup ``η V(ξ)`` is
the pair ``(ξ, η)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, prod
from typing import Iterable, Sequence

from .errors import BoundExceeded, DimensionError, InputError
from .groups import FgAbGroup, Homomorphism, Subgroup
from .lattice import IntMatrix, Lattice, integer_kernel, smith_normal_form

DEFAULT_MAX_DETERMINANT = 10_000


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _frac_mod1(x) -> Fraction:
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True, init=False)
class TorsionCharacter:
    """A finite-order character of ``H`` in additive (``Q/Z``) form."""

    parent: FgAbGroup
    values: tuple[Fraction, ...]

    def __init__(self, parent: FgAbGroup, values: Iterable = ()):
        vals = tuple(_frac_mod1(v) for v in values)
        if len(vals) != parent.ngens:
            raise DimensionError(f"character with {len(vals)} values on a group with {parent.ngens} coordinates")
        for v, d in zip(vals[parent.free_rank:], parent.torsion):
            if (v * d).denominator != 1:
                raise InputError(f"value {v} on a Z_{d} generator is not a {d}-th root of unity")
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "values", vals)

    @classmethod
    def trivial(cls, parent: FgAbGroup) -> "TorsionCharacter":
        return cls(parent, [0] * parent.ngens)

    def __call__(self, v: Sequence[int]) -> Fraction:
        if len(v) != len(self.values):
            raise DimensionError("character evaluated on a vector of the wrong length")
        return _frac_mod1(sum(a * int(b) for a, b in zip(self.values, v)))

    @property
    def order(self) -> int:
        o = 1
        for v in self.values:
            o = _lcm(o, v.denominator)
        return o

    def is_trivial(self) -> bool:
        return not any(self.values)

    def _check(self, other: "TorsionCharacter") -> None:
        if self.parent != other.parent:
            raise DimensionError("characters of different groups")

    def __add__(self, other: "TorsionCharacter") -> "TorsionCharacter":
        self._check(other)
        return TorsionCharacter(self.parent, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "TorsionCharacter") -> "TorsionCharacter":
        self._check(other)
        return TorsionCharacter(self.parent, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self) -> "TorsionCharacter":
        return TorsionCharacter(self.parent, [-a for a in self.values])

    def scale(self, k: int) -> "TorsionCharacter":
        return TorsionCharacter(self.parent, [k * a for a in self.values])

    def vanishes_on(self, xi: Subgroup | Lattice) -> bool:
        L = xi.preimage if isinstance(xi, Subgroup) else xi
        return all(self(b) == 0 for b in L.basis)

    def order_on(self, xi: Subgroup | Lattice) -> int:
        """Order of the restriction of the character to ``ξ``."""
        L = xi.preimage if isinstance(xi, Subgroup) else xi
        o = 1
        for b in L.basis:
            o = _lcm(o, self(b).denominator)
        return o

    def pullback(self, nu: Homomorphism) -> "TorsionCharacter":
        """``η ∘ ν`` for ``ν`` with target this character's group."""
        if nu.target != self.parent:
            raise DimensionError("pullback through a map with a different target")
        M = nu.matrix
        vals = [sum(self.values[i] * M[i, j] for i in range(M.rows)) for j in range(M.cols)]
        return TorsionCharacter(nu.source, vals)

    def __repr__(self) -> str:
        return f"TorsionCharacter({[str(v) for v in self.values]})"


def character_kernel(eta: TorsionCharacter) -> Subgroup:
    """``{x ∈ H : η(x) = 0}``, a subgroup of index ``ord(η)``."""
    H = eta.parent
    m = eta.order
    if m == 1:
        return H.whole()
    a = [int(v * m) for v in eta.values]
    ker = integer_kernel(IntMatrix([a + [m]]))
    return Subgroup(H, Lattice(H.ngens, [b[:-1] for b in ker.basis]))


def dual_of_quotient_torsion(xi: Subgroup, *, max_order: int = DEFAULT_MAX_DETERMINANT) -> list[TorsionCharacter]:
    """Characters of ``H`` vanishing on ``ξ``, one for each character of ``ξ̄/ξ``.

    With ``U P V = D`` the Smith form of ξ's preimage basis ``P``, the map
    ``x ↦ U x`` identifies ``Z^N / P`` with ``⊕ Z/D_i ⊕ Z^{free}``, so
    ``x ↦ Σ c_i (U x)_i / D_i`` runs through the required characters as ``c``
    ranges over ``∏ [0, D_i)``.  The trivial character comes first.
    """
    H = xi.parent
    P = xi.preimage
    if P.rank == 0:
        return [TorsionCharacter.trivial(H)]
    D, U, _ = smith_normal_form(P.generators)
    slots = [(i, D[i, i]) for i in range(P.rank) if D[i, i] > 1]
    size = prod(d for _, d in slots)
    if size > max_order:
        raise BoundExceeded(f"determinant group of order {size} exceeds the bound {max_order}")
    out = []
    for cs in product(*(range(d) for _, d in slots)):
        vals = [Fraction(0)] * H.ngens
        for c, (i, d) in zip(cs, slots):
            if c:
                row = U.row(i)
                for j in range(H.ngens):
                    vals[j] += Fraction(c * row[j], d)
        out.append(TorsionCharacter(H, vals))
    return out


def torsion_characters(A: FgAbGroup, *, max_order: int = DEFAULT_MAX_DETERMINANT) -> list[TorsionCharacter]:
    """All characters of ``A`` that are trivial on the free coordinates (the dual of ``Tors(A)``)."""
    if A.torsion_order > max_order:
        raise BoundExceeded(f"|Tors(A)| = {A.torsion_order} exceeds the bound {max_order}")
    out = []
    for cs in product(*(range(d) for d in A.torsion)):
        vals = [Fraction(0)] * A.free_rank + [Fraction(c, d) for c, d in zip(cs, A.torsion)]
        out.append(TorsionCharacter(A, vals))
    return out


@dataclass(frozen=True)
class TranslatedSubgroup:
    """The coset ``η · V(ξ)`` of the character group."""

    xi: Subgroup
    eta: TorsionCharacter = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.eta is None:
            object.__setattr__(self, "eta", TorsionCharacter.trivial(self.xi.parent))
        if self.eta.parent != self.xi.parent:
            raise DimensionError("translation and subgroup live on different groups")

    @property
    def parent(self) -> FgAbGroup:
        return self.xi.parent

    @property
    def dim(self) -> int:
        return self.parent.free_rank - self.xi.free_rank

    @property
    def component_count(self) -> int:
        return self.xi.index_in_saturation()

    def is_connected(self) -> bool:
        return self.xi.is_primitive()

    def translation_order(self) -> int:
        """Order of the class of ``η`` modulo ``V(ξ)`` (order of ``η`` restricted to ``ξ``)."""
        return self.eta.order_on(self.xi)

    def key(self) -> tuple:
        """Canonical key: the subgroup plus the restriction of ``η`` to it."""
        return (self.xi.preimage.basis, tuple(self.eta(b) for b in self.xi.preimage.basis))

    def same_set(self, other: "TranslatedSubgroup") -> bool:
        return self.xi == other.xi and (self.eta - other.eta).vanishes_on(self.xi)

    def contains_character(self, chi: TorsionCharacter) -> bool:
        return (chi - self.eta).vanishes_on(self.xi)

    def components(self, *, max_order: int = DEFAULT_MAX_DETERMINANT) -> list["TranslatedSubgroup"]:
        """Split into cosets of the identity component ``V(ξ̄)``."""
        sat = self.xi.saturation()
        if sat == self.xi:
            return [self]
        return [TranslatedSubgroup(sat, self.eta + rho)
                for rho in dual_of_quotient_torsion(self.xi, max_order=max_order)]

    def __repr__(self) -> str:
        return f"TranslatedSubgroup(xi={[list(b) for b in self.xi.preimage.basis]}, eta={[str(v) for v in self.eta.values]})"


def v_of(xi: Subgroup) -> TranslatedSubgroup:
    """``V(ξ) = Hom(H/ξ, C*)`` as an untranslated coset."""
    return TranslatedSubgroup(xi, TorsionCharacter.trivial(xi.parent))


def epsilon_of_cyclic_extension(chi: Subgroup, beta: TorsionCharacter) -> Subgroup:
    """``ε(⟨β⟩ V(χ)) = χ ∩ ker β`` for saturated ``χ``."""
    if not chi.is_primitive():
        raise InputError("epsilon_of_cyclic_extension expects a saturated subgroup")
    return chi & character_kernel(beta)


def epsilon_of(c: TranslatedSubgroup) -> Subgroup:
    """Common kernel of the characters in ``V(ξ)``; recovers ``ξ`` (only for untranslated cosets)."""
    if not c.eta.is_trivial():
        raise InputError("ε of a translated coset is the subgroup generated by its torsion points")
    out = c.parent.whole()
    for rho in dual_of_quotient_torsion(c.xi):
        out = out & character_kernel(rho)
    # characters of the identity component vanish exactly on the saturation
    return out & c.xi.saturation()


@dataclass(frozen=True)
class Intersection:
    nonempty: bool
    dim: int


def coset_intersection(c1: TranslatedSubgroup, c2: TranslatedSubgroup) -> Intersection:
    """Emptiness and dimension of ``η₁V(ξ₁) ∩ η₂V(ξ₂)``; ``dim = -1`` when empty."""
    if c1.parent != c2.parent:
        raise DimensionError("cosets in character groups of different groups")
    meet = c1.xi & c2.xi
    if not (c1.eta - c2.eta).vanishes_on(meet):
        return Intersection(False, -1)
    return Intersection(True, c1.parent.free_rank - (c1.xi + c2.xi).free_rank)


def coset_containment(c1: TranslatedSubgroup, c2: TranslatedSubgroup) -> bool:
    """Whether ``c1 ⊆ c2`` for identity-component cosets (saturated subgroups)."""
    if not (c1.xi.is_primitive() and c2.xi.is_primitive()):
        raise InputError("coset_containment expects saturated subgroups")
    return c1.xi.contains_subgroup(c2.xi) and coset_intersection(c1, c2).nonempty


@dataclass(frozen=True)
class Arrangement:
    """A finite union of translated subgroups, deleted subgroups and points.

    ``deleted`` holds subgroups ``ξ`` standing for ``V(ξ) ∖ V(ξ̄)``, the union
    of the non-identity components of ``V(ξ)``.
    """

    parent: FgAbGroup
    components: tuple[TranslatedSubgroup, ...] = ()
    points: tuple[TorsionCharacter, ...] = ()
    deleted: tuple[Subgroup, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "deleted", tuple(self.deleted))
        for c in self.components:
            if c.parent != self.parent:
                raise DimensionError("component over a different group")
        for p in self.points:
            if p.parent != self.parent:
                raise DimensionError("point over a different group")
        for x in self.deleted:
            if x.parent != self.parent:
                raise DimensionError("deleted subgroup over a different group")

    def is_untranslated(self) -> bool:
        return not self.deleted and all(c.eta.vanishes_on(c.xi) for c in self.components)

    def translated_components(self, *, max_order: int = DEFAULT_MAX_DETERMINANT) -> list[TranslatedSubgroup]:
        """The components with deleted subgroups written as translated cosets ``ρV(ξ̄)``."""
        out = list(self.components)
        for xi in self.deleted:
            sat = xi.saturation()
            for rho in dual_of_quotient_torsion(xi, max_order=max_order)[1:]:
                out.append(TranslatedSubgroup(sat, rho))
        return out

    def cosets(self, *, max_order: int = DEFAULT_MAX_DETERMINANT) -> list[TranslatedSubgroup]:
        """All cosets of connected subtori making up the positive-or-zero dimensional part."""
        out = []
        for c in self.translated_components(max_order=max_order):
            out.extend(c.components(max_order=max_order))
        return out

    def contains_character(self, chi: TorsionCharacter) -> bool:
        if any((chi - p).is_trivial() for p in self.points):
            return True
        return any(c.contains_character(chi) for c in self.cosets())

    def union(self, other: "Arrangement") -> "Arrangement":
        if other.parent != self.parent:
            raise DimensionError("union of arrangements over different groups")
        return Arrangement(self.parent, self.components + other.components,
                           self.points + other.points, self.deleted + other.deleted)
