"""Finitely generated abelian groups, subgroups, homomorphisms and Γ(H, A).

Coordinates are fixed once and for all: a group ``Z^n ⊕ Z_{d_1} ⊕ ... ⊕ Z_{d_k}``
lives on ``Z^{n+k}`` with the free coordinates first.  Its relation lattice is
``R = span{d_i e_{n+i}}`` and every subgroup is stored as the preimage lattice
of ``Z^{n+k}`` that contains ``R``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, prod
from typing import Iterable, Sequence

from .errors import BoundExceeded, DimensionError, InputError, InvariantViolation
from .lattice import (
    IntMatrix,
    Lattice,
    hermite_normal_form,
    smith_normal_form,
)

DEFAULT_MAX_GROUP_ORDER = 512
DEFAULT_MAX_MAPS = 2_000_000


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


def prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# Groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FgAbGroup:
    """``Z^free_rank ⊕ Z_{d_1} ⊕ ... ⊕ Z_{d_k}`` with ``d_1 | d_2 | ... | d_k``."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise InputError("negative free rank")
        for d in self.torsion:
            if d < 2:
                raise InputError(f"torsion factor {d} < 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise InputError(f"torsion factors {self.torsion} are not a divisibility chain")

    @classmethod
    def from_orders(cls, free_rank: int, orders: Iterable[int]) -> "FgAbGroup":
        """Normalize an arbitrary list of cyclic orders into invariant factors."""
        orders = [int(o) for o in orders if int(o) != 1]
        if any(o < 1 for o in orders):
            raise InputError(f"bad cyclic orders {orders}")
        if not orders:
            return cls(free_rank, ())
        D, _, _ = smith_normal_form(IntMatrix.diagonal(orders))
        return cls(free_rank, tuple(D[i, i] for i in range(len(orders)) if D[i, i] != 1))

    # basic data -----------------------------------------------------------
    @property
    def ngens(self) -> int:
        """Number of preimage coordinates ``n + k``."""
        return self.free_rank + len(self.torsion)

    @property
    def rank(self) -> int:
        return self.free_rank

    @property
    def moduli(self) -> tuple[int, ...]:
        """Per-coordinate modulus, 0 for free coordinates."""
        return (0,) * self.free_rank + self.torsion

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self) -> int:
        if self.free_rank:
            raise ValueError("infinite group has no finite order")
        return prod(self.torsion)

    @property
    def torsion_order(self) -> int:
        return prod(self.torsion)

    def relation_lattice(self) -> Lattice:
        n, N = self.free_rank, self.ngens
        return Lattice(N, [tuple(d if j == n + i else 0 for j in range(N))
                           for i, d in enumerate(self.torsion)])

    def free_part(self) -> "FgAbGroup":
        return FgAbGroup(self.free_rank)

    def torsion_part(self) -> "FgAbGroup":
        return FgAbGroup(0, self.torsion)

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        """Canonical coordinates of an element (torsion entries mod ``d_i``)."""
        if len(v) != self.ngens:
            raise DimensionError(f"element of length {len(v)} in a group with {self.ngens} coordinates")
        return tuple(int(x) % m if m else int(x) for x, m in zip(v, self.moduli))

    def is_zero(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def elements(self) -> list[tuple[int, ...]]:
        if not self.is_finite():
            raise ValueError("cannot list the elements of an infinite group")
        return [tuple(e) for e in product(*(range(d) for d in self.torsion))]

    def element_order(self, v: Sequence[int]) -> int:
        """Order of a torsion element; 0 for elements of infinite order."""
        v = self.reduce(v)
        if any(v[: self.free_rank]):
            return 0
        o = 1
        for x, d in zip(v[self.free_rank:], self.torsion):
            o = _lcm(o, d // gcd(x, d))
        return o

    def generator_orders(self) -> tuple[int, ...]:
        return (0,) * self.free_rank + self.torsion

    def whole(self) -> "Subgroup":
        return Subgroup(self, Lattice.full(self.ngens))

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, self.relation_lattice())

    def subgroup(self, generators: Iterable[Sequence[int]]) -> "Subgroup":
        return Subgroup.generated(self, generators)

    def torsion_subgroup(self) -> "Subgroup":
        N = self.ngens
        return Subgroup(self, Lattice(N, [tuple(int(j == i) for j in range(N))
                                          for i in range(self.free_rank, N)]))

    def identity(self) -> "Homomorphism":
        return Homomorphism(self, self, IntMatrix.identity(self.ngens))

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z_{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


FiniteAbGroup = FgAbGroup  # a FgAbGroup with free_rank == 0


def cyclic_exponent(A: FgAbGroup) -> int:
    """``c(A)``: the largest invariant factor of ``Tors(A)``, 1 if ``A`` is torsion-free."""
    return A.torsion[-1] if A.torsion else 1


# ---------------------------------------------------------------------------
# Subgroups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subgroup:
    parent: FgAbGroup
    preimage: Lattice

    def __post_init__(self):
        if self.preimage.ambient_rank != self.parent.ngens:
            raise DimensionError("subgroup lattice has the wrong ambient rank")
        if not self.preimage.contains_lattice(self.parent.relation_lattice()):
            raise InputError("subgroup preimage must contain the relation lattice")

    @classmethod
    def generated(cls, parent: FgAbGroup, generators: Iterable[Sequence[int]]) -> "Subgroup":
        gens = [tuple(int(x) for x in g) for g in generators]
        for g in gens:
            if len(g) != parent.ngens:
                raise DimensionError(
                    f"generator of length {len(g)} for a group with {parent.ngens} coordinates")
        R = parent.relation_lattice()
        return cls(parent, Lattice(parent.ngens, gens + list(R.basis)))

    @property
    def free_rank(self) -> int:
        """Rank of the subgroup as an abelian group."""
        return self.preimage.rank - len(self.parent.torsion)

    rank = free_rank

    def contains(self, v: Sequence[int]) -> bool:
        return self.preimage.contains(v)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def contains_subgroup(self, other: "Subgroup") -> bool:
        self._check(other)
        return self.preimage.contains_lattice(other.preimage)

    def __le__(self, other: "Subgroup") -> bool:
        return other.contains_subgroup(self)

    def _check(self, other: "Subgroup") -> None:
        if self.parent != other.parent:
            raise DimensionError("subgroups of different groups")

    def __add__(self, other: "Subgroup") -> "Subgroup":
        self._check(other)
        return Subgroup(self.parent, self.preimage + other.preimage)

    def __and__(self, other: "Subgroup") -> "Subgroup":
        self._check(other)
        return Subgroup(self.parent, self.preimage & other.preimage)

    def saturation(self) -> "Subgroup":
        """Primitive closure: elements some nonzero multiple of which lies in the subgroup."""
        return Subgroup(self.parent, self.preimage.saturation())

    def is_primitive(self) -> bool:
        return self.saturation() == self

    def quotient(self) -> FgAbGroup:
        return quotient_invariants(self.parent, self)

    def determinant_group(self) -> FgAbGroup:
        return determinant_group(self)

    def index_in_saturation(self) -> int:
        return prod(determinant_group(self).torsion)

    def generators(self) -> list[tuple[int, ...]]:
        """Canonical preimage basis reduced to group coordinates (zero vectors dropped)."""
        out = []
        for b in self.preimage.basis:
            r = self.parent.reduce(b)
            if any(r):
                out.append(r)
        return out

    def __repr__(self) -> str:
        return f"Subgroup({self.parent}, {[list(b) for b in self.preimage.basis]})"


def quotient_invariants(H: FgAbGroup, xi: Subgroup) -> FgAbGroup:
    """Structure of ``H/ξ`` from the Smith form of ξ's preimage generators."""
    if xi.parent != H:
        raise DimensionError("subgroup of a different group")
    N = H.ngens
    P = xi.preimage
    if P.rank == 0:
        return FgAbGroup(N)
    D, _, _ = smith_normal_form(P.generators)
    diag = [D[i, i] for i in range(P.rank)]
    return FgAbGroup(N - P.rank, tuple(d for d in diag if d > 1))


def determinant_group(xi: Subgroup) -> FgAbGroup:
    """``ξ̄/ξ ≅ Tors(H/ξ)``."""
    return quotient_invariants(xi.parent, xi).torsion_part()


# ---------------------------------------------------------------------------
# Homomorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Homomorphism:
    """A homomorphism given by an integer matrix on preimage coordinates.

    ``matrix`` has ``target.ngens`` rows and ``source.ngens`` columns.
    """

    source: FgAbGroup
    target: FgAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        M = self.matrix
        if not isinstance(M, IntMatrix):
            object.__setattr__(self, "matrix", IntMatrix(M, self.source.ngens))
            M = self.matrix
        if M.shape != (self.target.ngens, self.source.ngens):
            raise DimensionError(
                f"matrix shape {M.shape} does not match {self.target.ngens}x{self.source.ngens}")
        Rt = self.target.relation_lattice()
        for r in self.source.relation_lattice().basis:
            if not Rt.contains(M.apply(r)):
                raise InputError("matrix does not define a homomorphism (relations not preserved)")
        # store a reduced matrix so equal maps compare equal
        reduced = [self.target.reduce(c) for c in M.columns()]
        object.__setattr__(self, "matrix", IntMatrix.from_columns(reduced, self.target.ngens))

    @classmethod
    def from_rows(cls, source: FgAbGroup, target: FgAbGroup, rows) -> "Homomorphism":
        return cls(source, target, IntMatrix(rows, source.ngens))

    def __call__(self, v: Sequence[int]) -> tuple[int, ...]:
        return self.target.reduce(self.matrix.apply(v))

    def image(self) -> Subgroup:
        return Subgroup.generated(self.target, self.matrix.columns())

    def is_epi(self) -> bool:
        Rt = self.target.relation_lattice()
        return (Lattice(self.target.ngens, self.matrix.columns()) + Rt) == Lattice.full(self.target.ngens)

    def kernel(self) -> Subgroup:
        return kernel(self)

    def compose(self, other: "Homomorphism") -> "Homomorphism":
        """``self ∘ other``."""
        if other.target != self.source:
            raise DimensionError("composition of incompatible maps")
        return Homomorphism(other.source, self.target, self.matrix @ other.matrix)

    def free_quotient(self) -> "Homomorphism":
        """``ν̄ = π ∘ ν`` onto ``Ā = A / Tors(A)`` (the first ``rank A`` rows)."""
        r = self.target.free_rank
        rows = [self.matrix.row(i) for i in range(r)]
        return Homomorphism(self.source, self.target.free_part(), IntMatrix(rows, self.source.ngens))

    def equivalent(self, other: "Homomorphism") -> bool:
        """Equality in ``Γ(H, A)``: epimorphisms differ by an automorphism iff kernels agree."""
        return (self.source == other.source and self.target == other.target
                and self.kernel() == other.kernel())

    def rows(self) -> list[list[int]]:
        return self.matrix.tolist()


def kernel(nu: Homomorphism) -> Subgroup:
    """``ker ν`` as the preimage of ``R_target`` under the matrix."""
    P = nu.target.relation_lattice().preimage(nu.matrix)
    return Subgroup(nu.source, P)


def unimodular_inverse(U: IntMatrix) -> IntMatrix:
    """Integer inverse of a unimodular matrix (its Hermite form is the identity)."""
    H, V = hermite_normal_form(U)
    if H != IntMatrix.identity(U.rows):
        raise InputError("matrix is not unimodular")
    return V


def section(nu_bar: Homomorphism) -> tuple[IntMatrix, IntMatrix]:
    """Split a surjection ``ν̄: H ↠ Z^r``.

    Returns ``(U, Uinv)`` with ``U`` unimodular on ``Z^{ngens(H)}`` such that
    ``ν̄ U = [I_r | 0]``: the first ``r`` columns of ``U`` are a section and the
    remaining ones span the preimage of ``ker ν̄``.
    """
    if nu_bar.target.torsion:
        raise InputError("section() expects a torsion-free target")
    Hm, U = hermite_normal_form(nu_bar.matrix)
    r = nu_bar.target.free_rank
    expected = [[int(i == j) for j in range(nu_bar.source.ngens)] for i in range(r)]
    if Hm.tolist() != expected:
        raise InputError("ν̄ is not surjective")
    return U, unimodular_inverse(U)


# ---------------------------------------------------------------------------
# Counting Γ(H, A)
# ---------------------------------------------------------------------------

def _partition(factors: Iterable[int], p: int) -> tuple[int, ...]:
    parts = []
    for d in factors:
        e = 0
        while d % p == 0:
            d //= p
            e += 1
        if e:
            parts.append(e)
    return tuple(sorted(parts, reverse=True))


def _theta_i(lam_i: int, tau: Sequence[int]) -> int:
    return sum(min(lam_i, t) for t in tau)


def _phi(m: int, t: Fraction) -> Fraction:
    out = Fraction(1)
    for i in range(1, m + 1):
        out *= 1 - t ** i
    return out


def gamma_local_factor(p: int, lam: Sequence[int], tau: Sequence[int], free: int) -> Fraction:
    """The factor for one prime in the closed counting formula.

    ``lam`` is the partition of the ``p``-part of ``Tors(A)``, ``tau`` that of
    ``Tors(H)`` and ``free = rank H - rank A``.
    """
    lam = tuple(lam)
    l = len(lam)
    size = sum(lam)
    bracket = sum(i * x for i, x in enumerate(lam))  # sum (i-1) λ_i with 1-based i
    lam_minus = tuple(x - 1 for x in lam)
    theta_minus = sum(_theta_i(x, tau) for x in lam_minus)
    num = Fraction(p) ** ((size - l) * free + theta_minus)
    for i in range(1, l + 1):
        e = free + _theta_i(lam[i - 1], tau) - _theta_i(lam_minus[i - 1], tau)
        num *= Fraction(p) ** e - Fraction(p) ** (i - 1)
    den = Fraction(p) ** (size + 2 * bracket)
    for k in set(lam):
        den *= _phi(lam.count(k), Fraction(1, p))
    return num / den


def gamma_count(H: FgAbGroup, A: FgAbGroup) -> int:
    """Size of every fiber of ``q: Γ(H, A) → Γ(H, Ā)``, i.e. ``|Γ(H/Ā, A/Ā)|``.

    Evaluated with the closed product formula over the primes dividing
    ``|Tors(A)|``.  Returns 0 when ``A`` is not a quotient of ``H``.
    """
    n, r = H.free_rank, A.free_rank
    if r > n:
        return 0
    total = Fraction(1)
    for p in prime_factors(A.torsion_order):
        total *= gamma_local_factor(p, _partition(A.torsion, p), _partition(H.torsion, p), n - r)
    if total.denominator != 1 or total < 0:
        raise InvariantViolation(f"counting formula produced a non-natural value {total}")
    return int(total)


def gamma_formula_cyclic(n: int, p: int, s: int) -> int:
    """``|Γ(Z^n, Z_{p^s})|`` from its two-term closed form."""
    val = Fraction(p ** (s * n) - p ** ((s - 1) * n), p ** s - p ** (s - 1))
    return int(val)


def gamma_formula_elementary(n: int, p: int, s: int) -> int:
    """``|Γ(Z^n, (Z_p)^s)|`` as a product of Gaussian-binomial style ratios."""
    val = Fraction(1)
    for i in range(s):
        val *= Fraction(p ** n - p ** i, p ** s - p ** i)
    return int(val)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def _hom_candidates(orders: Sequence[int], A: FgAbGroup) -> list[list[tuple[int, ...]]]:
    """For each source generator order ``e`` (0 = infinite), the elements ``a`` of finite ``A`` with ``e a = 0``."""
    elems = A.elements()
    out = []
    for e in orders:
        if e == 0:
            out.append(elems)
        else:
            out.append([a for a in elems if A.is_zero([e * x for x in a])])
    return out


def _generates(images: Sequence[Sequence[int]], A: FgAbGroup) -> bool:
    L = Lattice(A.ngens, list(images)) + A.relation_lattice()
    return L == Lattice.full(A.ngens)


def automorphisms(A: FgAbGroup, max_maps: int = DEFAULT_MAX_MAPS) -> list[tuple[tuple[int, ...], ...]]:
    """All automorphisms of a finite group, as tuples of generator images."""
    if not A.is_finite():
        raise InputError("automorphisms() needs a finite group")
    cands = _hom_candidates(A.torsion, A)
    if prod(len(c) for c in cands) > max_maps:
        raise BoundExceeded("too many candidate maps for automorphism enumeration")
    return [imgs for imgs in product(*cands) if _generates(imgs, A)]


def _apply_images(images: Sequence[Sequence[int]], v: Sequence[int], A: FgAbGroup) -> tuple[int, ...]:
    acc = [0] * A.ngens
    for c, img in zip(v, images):
        if c:
            for i, x in enumerate(img):
                acc[i] += c * x
    return A.reduce(acc)


def enumerate_epis_mod_aut(H: FgAbGroup, A: FgAbGroup, *, max_order: int = DEFAULT_MAX_GROUP_ORDER,
                           max_maps: int = DEFAULT_MAX_MAPS) -> list[Homomorphism]:
    """One representative per ``Aut(A)``-orbit of epimorphisms ``H ↠ A`` (both finite).

    Orbits are computed by applying every automorphism explicitly; the
    representative is the lexicographically smallest matrix in its orbit.
    """
    if not A.is_finite() or not H.is_finite():
        raise InputError("enumerate_epis_mod_aut works on finite groups")
    if A.order > max_order:
        raise BoundExceeded(f"|A| = {A.order} exceeds the bound {max_order}")
    cands = _hom_candidates(H.torsion, A)
    if prod(len(c) for c in cands) > max_maps:
        raise BoundExceeded("too many candidate homomorphisms")
    auts = automorphisms(A, max_maps)
    seen: set = set()
    reps = []
    for imgs in product(*cands):
        if not _generates(imgs, A):
            continue
        key = tuple(imgs)
        if key in seen:
            continue
        orbit = {tuple(_apply_images(alpha, g, A) for g in imgs) for alpha in auts}
        seen |= orbit
        rep = min(orbit)
        reps.append(Homomorphism(H, A, IntMatrix.from_columns(rep, A.ngens)))
    reps.sort(key=lambda h: h.matrix.tolist())
    return reps


def _kernel_in_coords(images: Sequence[Sequence[int]], T: FgAbGroup) -> Lattice:
    """``{c in Z^m : sum c_j images_j = 0 in T}``."""
    m = len(images)
    M = IntMatrix.from_columns(images, T.ngens) if images else IntMatrix.zeros(T.ngens, 0)
    return T.relation_lattice().preimage(M) if m else Lattice.zero(0)


def fiber_representatives(nu_bar: Homomorphism, A: FgAbGroup, *,
                          max_maps: int = DEFAULT_MAX_MAPS) -> list[Homomorphism]:
    """One epimorphism ``ν: H ↠ A`` for each class in the fiber ``q⁻¹([ν̄])``.

    ``ν̄`` is split by a unimodular change of coordinates ``U`` with
    ``ν̄ U = [I | 0]``; the last columns of ``U`` generate ``ker ν̄``.  A class in
    the fiber is an epimorphism ``γ: ker ν̄ ↠ Tors(A)`` up to ``Aut(Tors(A))``,
    i.e. its kernel, and it is assembled into ``ν`` by sending the section to
    the free part and ``ker ν̄`` through ``γ``.
    """
    H = nu_bar.source
    r = A.free_rank
    if nu_bar.target != A.free_part():
        raise InputError(f"ν̄ must map onto Z^{r}")
    U, Uinv = section(nu_bar)
    N = H.ngens
    m = N - r
    T = A.torsion_part()
    # relations of ker ν̄ in the basis given by the last columns of U
    Rk = []
    for rel in H.relation_lattice().basis:
        y = Uinv.apply(rel)
        if any(y[:r]):
            raise InvariantViolation("relation not in ker ν̄")
        Rk.append(y[r:])
    if T.is_trivial():
        choices: list[tuple[tuple[int, ...], ...]] = [tuple(() for _ in range(m))]
    else:
        elems = T.elements()
        if len(elems) ** m > max_maps:
            raise BoundExceeded(f"|Tors(A)|^{m} = {len(elems) ** m} candidate maps")
        choices = []
        seen: set = set()
        for imgs in product(elems, repeat=m):
            if not _generates(imgs, T):
                continue
            if any(any(T.reduce(_apply_images(imgs, rel, T))) for rel in Rk):
                continue
            key = _kernel_in_coords(imgs, T)
            if key in seen:
                continue
            seen.add(key)
            choices.append(imgs)
    reps = []
    tail = [Uinv.row(i) for i in range(r, N)]  # coordinates in the kgens basis
    for imgs in choices:
        rows = [list(nu_bar.matrix.row(i)) for i in range(r)]
        for t in range(len(T.torsion)):
            rows.append([sum(imgs[j][t] * tail[j][c] for j in range(m)) for c in range(N)])
        nu = Homomorphism(H, A, IntMatrix(rows, N))
        reps.append(nu)
    reps.sort(key=lambda h: h.matrix.tolist())
    return reps


def epimorphism_classes(H: FgAbGroup, A: FgAbGroup, bound: int = 2) -> list[Homomorphism]:
    """Representatives of ``Γ(H, A)`` whose free rows have entries in ``[-bound, bound]``.

    Used for sampling: it lists the distinct classes whose ``ν̄`` is one of the
    primitive, sign-normalized row matrices in the box, together with their
    complete fibers.
    """
    n, r = H.free_rank, A.free_rank
    N = H.ngens
    Abar = A.free_part()
    seen_bar = set()
    out = []
    rng = range(-bound, bound + 1)
    for flat in product(rng, repeat=r * n):
        rows = [list(flat[i * n:(i + 1) * n]) + [0] * (N - n) for i in range(r)]
        nu_bar = Homomorphism(H, Abar, IntMatrix(rows, N))
        if not nu_bar.is_epi():
            continue
        key = nu_bar.kernel()
        if key in seen_bar:
            continue
        seen_bar.add(key)
        out.extend(fiber_representatives(nu_bar, A))
    return out
