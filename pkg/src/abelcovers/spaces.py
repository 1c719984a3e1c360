"""Characteristic-variety generators for toric complexes and Brieskorn manifolds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm, prod
from typing import Iterable, Sequence

from .characters import Arrangement, TorsionCharacter, TranslatedSubgroup
from .errors import BoundExceeded, InputError, InvariantViolation, Unsupported
from .groups import FgAbGroup, Homomorphism, Subgroup
from .jumploci import ObstructionReport, omega_describe
from .lattice import IntMatrix, matrix_rank

DEFAULT_MAX_VERTICES = 16

Face = frozenset


# ---------------------------------------------------------------------------
# Simplicial complexes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SimplicialComplex:
    """A complex on vertices ``0..vertices-1`` given by its facets.

    Faces are the downward closure of the facets together with the empty
    simplex; isolated vertices must be listed as singleton facets.
    """

    vertices: int
    facets: tuple[frozenset[int], ...]

    def __init__(self, vertices: int, facets: Iterable[Iterable[int]] = ()):
        fs = []
        for f in facets:
            s = frozenset(int(v) for v in f)
            if any(v < 0 or v >= vertices for v in s):
                raise InputError(f"facet {sorted(s)} uses a vertex outside 0..{vertices - 1}")
            fs.append(s)
        object.__setattr__(self, "vertices", int(vertices))
        object.__setattr__(self, "facets", tuple(sorted(set(fs), key=lambda s: (len(s), sorted(s)))))

    @classmethod
    def from_faces(cls, vertices: int, faces: Iterable[frozenset[int]]) -> "SimplicialComplex":
        return cls(vertices, faces)

    @classmethod
    def full_simplex(cls, n: int) -> "SimplicialComplex":
        return cls(n, [range(n)])

    def faces(self) -> frozenset[frozenset[int]]:
        return _closure(self.facets)

    def induced(self, W: Iterable[int]) -> frozenset[frozenset[int]]:
        """Faces of the full subcomplex on the vertex set ``W``."""
        Ws = frozenset(W)
        return frozenset(f for f in self.faces() if f <= Ws)


@lru_cache(maxsize=4096)
def _closure(facets: tuple[frozenset[int], ...]) -> frozenset[frozenset[int]]:
    out = {frozenset()}
    for f in facets:
        items = sorted(f)
        for k in range(len(items) + 1):
            out.update(frozenset(c) for c in combinations(items, k))
    return frozenset(out)


def link(faces: frozenset[frozenset[int]], sigma: frozenset[int],
         ambient: frozenset[frozenset[int]]) -> frozenset[frozenset[int]]:
    """``lk_K(σ) = {τ ∈ K : τ ∩ σ = ∅, τ ∪ σ ∈ L}`` for a subcomplex ``K`` of ``L``."""
    return frozenset(t for t in faces if not (t & sigma) and (t | sigma) in ambient)


def reduced_homology_rank(K: SimplicialComplex | frozenset, j: int) -> int:
    """Rank of ``H̃_j(K; Q)``.

    ``K`` may be a :class:`SimplicialComplex` or a set of faces; the empty
    simplex spans the degree ``-1`` chains, so ``H̃_{-1}({∅}) = Q`` and the void
    complex (no faces at all) has no homology.
    """
    faces = K.faces() if isinstance(K, SimplicialComplex) else frozenset(K)
    return _reduced_rank(faces, j)


@lru_cache(maxsize=65536)
def _reduced_rank(faces: frozenset[frozenset[int]], j: int) -> int:
    if j < -1:
        return 0
    by_dim: dict[int, list[tuple[int, ...]]] = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(tuple(sorted(f)))
    for v in by_dim.values():
        v.sort()
    cj = len(by_dim.get(j, []))
    if cj == 0:
        return 0
    return cj - _boundary_rank(by_dim, j) - _boundary_rank(by_dim, j + 1)


def _boundary_rank(by_dim: dict[int, list[tuple[int, ...]]], k: int) -> int:
    """Rank of ``∂_k: C_k → C_{k-1}`` (with ``C_{-1}`` spanned by the empty face)."""
    src = by_dim.get(k, [])
    tgt = by_dim.get(k - 1, [])
    if not src or not tgt:
        return 0
    index = {f: i for i, f in enumerate(tgt)}
    rows = [[0] * len(src) for _ in tgt]
    for c, f in enumerate(src):
        for i in range(len(f)):
            rows[index[f[:i] + f[i + 1:]]][c] = (-1) ** i
    return matrix_rank(IntMatrix(rows, len(src)))


# ---------------------------------------------------------------------------
# Toric complexes
# ---------------------------------------------------------------------------

def coordinate_subgroup(n: int, W: Iterable[int]) -> Subgroup:
    """``ξ_W``: the span of the basis vectors ``e_i`` with ``i ∉ W``."""
    Ws = set(W)
    H = FgAbGroup(n)
    gens = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n) if i not in Ws]
    return Subgroup.generated(H, gens)


def toric_subset_qualifies(L: SimplicialComplex, W: frozenset[int], i: int) -> bool:
    """Whether the subtorus ``(C*)^W`` is part of ``V^i`` of the toric complex ``T_L``."""
    faces = L.faces()
    LW = L.induced(W)
    rest = frozenset(range(L.vertices)) - W
    for sigma in faces:
        if not sigma <= rest:
            continue
        lk = link(LW, sigma, faces)
        for j in range(1, i + 1):
            if _reduced_rank(lk, j - 1 - len(sigma)):
                return True
    return False


def toric_char_variety(L: SimplicialComplex, i: int, *, max_vertices: int = DEFAULT_MAX_VERTICES) -> Arrangement:
    """``V^i(T_L)`` as an untranslated arrangement in ``(C*)^n``.

    ``W = ∅`` contributes the trivial character, which is recorded as a point.
    """
    n = L.vertices
    if n > max_vertices:
        raise BoundExceeded(f"{n} vertices exceeds the bound {max_vertices}")
    if i < 0:
        raise InputError("degree must be non-negative")
    H = FgAbGroup(n)
    comps, points = [], []
    for k in range(n + 1):
        for W in combinations(range(n), k):
            Ws = frozenset(W)
            if not toric_subset_qualifies(L, Ws, i):
                continue
            if not Ws:
                points.append(TorsionCharacter.trivial(H))
            else:
                comps.append(TranslatedSubgroup(coordinate_subgroup(n, Ws)))
    return Arrangement(H, comps, points)


def toric_omega(L: SimplicialComplex, i: int, A: FgAbGroup, *,
                max_vertices: int = DEFAULT_MAX_VERTICES) -> ObstructionReport:
    """Ω of the toric complex: ``Γ(H, A)`` minus the σ-sets of the coordinate subgroups."""
    return omega_describe(toric_char_variety(L, i, max_vertices=max_vertices), A)


# ---------------------------------------------------------------------------
# Brieskorn manifolds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeifertData:
    """Seifert invariants of ``Σ(a_1, ..., a_n)``.

    ``orbits`` lists ``(α_j, β_j, s_j)`` with the ``α_j = 1`` entries removed.
    """

    exponents: tuple[int, ...]
    orbits: tuple[tuple[int, int, int], ...]
    genus: int
    euler: Fraction
    torsion_order: int
    alpha: int

    @property
    def first_betti(self) -> int:
        return 2 * self.genus


def brieskorn_invariants(a: Sequence[int]) -> SeifertData:
    """Seifert data, genus, Euler number, ``|Tors H_1|`` and the number ``α`` for ``Σ(a)``."""
    a = tuple(int(x) for x in a)
    if len(a) < 3:
        raise InputError("a Brieskorn manifold needs at least three exponents")
    if any(x < 2 for x in a):
        raise InputError("Brieskorn exponents must be at least 2")
    n = len(a)
    l = lcm(*a)
    total = prod(a)
    orbits = []
    s_sum = Fraction(0)
    tors = Fraction(1)
    for j, aj in enumerate(a):
        lj = lcm(*(a[:j] + a[j + 1:]))
        alpha_j = l // lj
        s_j = Fraction(total, aj * lj)
        if s_j.denominator != 1:
            raise InvariantViolation(f"s_{j + 1} = {s_j} is not an integer")
        s_sum += s_j
        tors *= Fraction(alpha_j) ** int(s_j)
        if alpha_j == 1:
            continue
        # β_j l ≡ a_j (mod α_j); α_j divides both l and a_j, so the smallest solution is 0
        beta_j = next(b for b in range(alpha_j) if (b * l - aj) % alpha_j == 0)
        orbits.append((alpha_j, beta_j, int(s_j)))
    g2 = 2 + Fraction((n - 2) * total, l) - s_sum
    if g2.denominator != 1 or g2 < 0 or int(g2) % 2:
        raise InvariantViolation(f"genus formula gives {g2 / 2}")
    e = Fraction(-total, l * l)
    tors_order = tors * abs(e)
    if tors_order.denominator != 1 or tors_order < 1:
        raise InvariantViolation(f"torsion order formula gives {tors_order}")
    alphas = [o[0] for o in orbits]
    big = prod(o[0] ** o[2] for o in orbits)
    alpha = Fraction(big, lcm(*alphas) if alphas else 1)
    if alpha.denominator != 1:
        raise InvariantViolation(f"α = {alpha} is not an integer")
    return SeifertData(a, tuple(orbits), int(g2) // 2, e, int(tors_order), int(alpha))


def brieskorn_group(a: Sequence[int], torsion: Sequence[int] | None = None) -> FgAbGroup:
    """``H_1(Σ(a))`` with caller-supplied torsion factors (checked against the order).

    Without ``torsion`` a cyclic torsion part of the computed order is assumed.
    """
    data = brieskorn_invariants(a)
    if torsion is None:
        torsion = [data.torsion_order] if data.torsion_order > 1 else []
    H = FgAbGroup.from_orders(2 * data.genus, torsion)
    if H.torsion_order != data.torsion_order:
        raise InputError(f"torsion factors {list(torsion)} have order {H.torsion_order}, "
                         f"expected {data.torsion_order}")
    return H


def default_translations(H: FgAbGroup, alpha: int) -> list[TorsionCharacter]:
    """The translation characters used when none are supplied.

    Only the case ``α = 2`` with cyclic torsion of even order has a canonical
    choice: the character of order 2 on the torsion generator.
    """
    if alpha == 1:
        return []
    if alpha == 2 and len(H.torsion) == 1 and H.torsion[0] % 2 == 0:
        vals = [0] * H.free_rank + [Fraction(1, 2)]
        return [TorsionCharacter(H, vals)]
    raise InputError("translation characters must be supplied for this Brieskorn manifold")


def brieskorn_v1(a: Sequence[int], H: FgAbGroup | None = None,
                 translations: Sequence[TorsionCharacter] | None = None) -> Arrangement:
    """Positive-dimensional part of ``V^1`` plus the trivial character.

    The translated copies of ``Ĥ_0 = V(Tors H)`` are ``ρ_i V(Tors H)`` for the
    supplied characters ``ρ_i`` (nontrivial on ``Tors H``).  For ``g > 1`` the
    untranslated ``Ĥ_0`` is included as well.
    """
    data = brieskorn_invariants(a)
    if data.genus == 0:
        raise Unsupported("genus 0 base curve: no description of V¹ is available")
    if H is None:
        H = brieskorn_group(a)
    if H.free_rank != 2 * data.genus or H.torsion_order != data.torsion_order:
        raise InputError("group does not match the Brieskorn invariants")
    if translations is None:
        translations = default_translations(H, data.alpha)
    translations = list(translations)
    if len(translations) != data.alpha - 1:
        raise InputError(f"expected {data.alpha - 1} translation characters, got {len(translations)}")
    T = H.torsion_subgroup()
    comps = []
    seen = set()
    for rho in translations:
        if rho.parent != H:
            raise InputError("translation character over a different group")
        if any(rho.values[:H.free_rank]):
            raise InputError("translation characters must vanish on the free coordinates")
        if rho.vanishes_on(T):
            raise InputError("translation characters must be nontrivial on Tors(H)")
        c = TranslatedSubgroup(T, rho)
        if c.key() in seen:
            raise InputError("repeated translation character")
        seen.add(c.key())
        comps.append(c)
    if data.genus > 1:
        comps.insert(0, TranslatedSubgroup(T))
    return Arrangement(H, comps, [TorsionCharacter.trivial(H)])


def brieskorn_omega(a: Sequence[int], H: FgAbGroup | None, A: FgAbGroup,
                    translations: Sequence[TorsionCharacter] | None = None) -> ObstructionReport:
    return omega_describe(brieskorn_v1(a, H, translations), A)


def brieskorn_formula_member(nu: Homomorphism, h_elements: Sequence[Sequence[int]]) -> bool:
    """The printed membership rule ``ν(h_i) = 0`` for all listed torsion elements."""
    return all(not any(nu(h)) for h in h_elements)
