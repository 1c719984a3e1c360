"""Laurent polynomials over ``Z[H]``, hypersurface tests and Fox calculus."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import sympy

from .characters import TorsionCharacter
from .cyclotomic import CyclotomicScalar
from .errors import BoundExceeded, DimensionError, InputError, Unsupported
from .groups import FgAbGroup, Subgroup
from .lattice import IntMatrix, Lattice, integer_kernel, smith_normal_form

DEFAULT_MAX_SUPPORT = 12


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, CyclotomicScalar) else c == 0


def _normalize_coeff(c):
    if isinstance(c, CyclotomicScalar):
        q = c.as_rational()
        if q is not None:
            c = q
        else:
            return c
    c = Fraction(c)
    return int(c) if c.denominator == 1 else c


class LaurentPolynomial:
    """``Σ c_a t^a`` with exponents in the coordinates of ``ambient``.

    Coefficients are integers, rationals or :class:`CyclotomicScalar`s;
    zero coefficients are never stored and torsion exponents are reduced.
    """

    __slots__ = ("ambient", "terms")

    def __init__(self, ambient: FgAbGroup, terms: Mapping[Sequence[int], object] | Iterable = ()):
        self.ambient = ambient
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, ...], object] = {}
        for exp, c in items:
            e = ambient.reduce(tuple(int(x) for x in exp))
            acc[e] = acc[e] + c if e in acc else c
        self.terms = {e: _normalize_coeff(c) for e, c in acc.items() if not _is_zero(c)}

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, ambient: FgAbGroup) -> "LaurentPolynomial":
        return cls(ambient, {})

    @classmethod
    def monomial(cls, ambient: FgAbGroup, exp: Sequence[int], coeff=1) -> "LaurentPolynomial":
        return cls(ambient, {tuple(exp): coeff})

    @classmethod
    def constant(cls, ambient: FgAbGroup, c) -> "LaurentPolynomial":
        return cls.monomial(ambient, (0,) * ambient.ngens, c)

    @classmethod
    def variable(cls, ambient: FgAbGroup, i: int) -> "LaurentPolynomial":
        return cls.monomial(ambient, tuple(int(j == i) for j in range(ambient.ngens)))

    # ring operations ------------------------------------------------------
    def _check(self, other: "LaurentPolynomial") -> None:
        if self.ambient != other.ambient:
            raise DimensionError("Laurent polynomials over different groups")

    def _lift(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            self._check(other)
            return other
        return LaurentPolynomial.constant(self.ambient, other)

    def __add__(self, other) -> "LaurentPolynomial":
        other = self._lift(other)
        return LaurentPolynomial(self.ambient, list(self.terms.items()) + list(other.terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial(self.ambient, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPolynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "LaurentPolynomial":
        return self._lift(other) - self

    def __mul__(self, other) -> "LaurentPolynomial":
        other = self._lift(other)
        out = []
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out.append((tuple(a + b for a, b in zip(e1, e2)), c1 * c2))
        return LaurentPolynomial(self.ambient, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPolynomial":
        out = LaurentPolynomial.constant(self.ambient, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPolynomial):
            try:
                other = self._lift(other)
            except Exception:
                return NotImplemented
        return self.ambient == other.ambient and (self - other).is_zero()

    def __hash__(self):
        return hash((self.ambient, frozenset(self.terms)))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def support(self) -> list[tuple[int, ...]]:
        return sorted(self.terms)

    def has_integer_coefficients(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def evaluate(self, chi: TorsionCharacter) -> CyclotomicScalar:
        """Value at a torsion point of the character group."""
        if chi.parent != self.ambient:
            raise DimensionError("evaluation at a character of another group")
        total = CyclotomicScalar.rational(0)
        for e, c in self.terms.items():
            v = chi(e)
            total = total + CyclotomicScalar.coerce(c) * CyclotomicScalar.root_of_unity(v.numerator, v.denominator)
        return total

    def shift(self, exp: Sequence[int]) -> "LaurentPolynomial":
        """Multiply by the monomial ``t^exp``."""
        return self * LaurentPolynomial.monomial(self.ambient, exp)

    def to_json(self) -> dict:
        from .serialize import scalar_to_json
        return {"terms": [{"exp": list(e), "coeff": scalar_to_json(c)} for e, c in sorted(self.terms.items())]}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"t{i + 1}" if x == 1 else f"t{i + 1}^{x}" for i, x in enumerate(e) if x)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# Hypersurfaces: τ₁ by admissible partitions, restriction to cosets
# ---------------------------------------------------------------------------

def admissible_partitions(f: LaurentPolynomial, *, max_support: int = DEFAULT_MAX_SUPPORT):
    """Yield the partitions of the support of ``f`` into blocks of zero coefficient sum."""
    support = f.support
    if len(support) > max_support:
        raise BoundExceeded(f"support of size {len(support)} exceeds the bound {max_support}")
    coeff = f.terms

    def rec(remaining: tuple):
        if not remaining:
            yield []
            return
        first, rest = remaining[0], remaining[1:]
        for k in range(len(rest) + 1):
            for extra in combinations(range(len(rest)), k):
                block = (first,) + tuple(rest[i] for i in extra)
                if sum(coeff[b] for b in block) != 0:
                    continue
                left = tuple(x for i, x in enumerate(rest) if i not in extra)
                for tail in rec(left):
                    yield [block] + tail

    yield from rec(tuple(support))


def partition_lattice(partition: Sequence[Sequence[Sequence[int]]], n: int) -> Lattice:
    """``L(p) = {x : (a - b)·x = 0 whenever a, b share a block}``."""
    rows = []
    for block in partition:
        a0 = block[0]
        rows.extend([tuple(a - b for a, b in zip(a, a0)) for a in block[1:]])
    if not rows:
        return Lattice.full(n)
    return integer_kernel(IntMatrix(rows, n))


def maximal_lattices(lattices: Iterable[Lattice]) -> list[Lattice]:
    uniq = sorted(set(lattices), key=lambda L: (-L.rank, L.basis))
    out = []
    for L in uniq:
        if not any(M != L and M.contains_lattice(L) for M in uniq):
            out.append(L)
    return out


def admissible_tau1(f: LaurentPolynomial, *, max_support: int = DEFAULT_MAX_SUPPORT) -> list[Lattice]:
    """Inclusion-maximal lattices ``L(p)`` over the admissible partitions ``p`` of ``f``.

    Their union is ``τ₁`` of the hypersurface ``f = 0``.
    """
    if f.ambient.torsion:
        raise Unsupported("admissible_tau1 needs a torsion-free exponent group")
    if not f.has_integer_coefficients():
        raise Unsupported("admissible_tau1 needs integer coefficients")
    n = f.ambient.free_rank
    lats = {partition_lattice(p, n) for p in admissible_partitions(f, max_support=max_support)}
    return maximal_lattices(lats)


def coset_parametrization(ker: Subgroup) -> IntMatrix:
    """Matrix ``Y`` (``r x N``) with ``t ∈ V(ker̄) ↔ s ∈ (C*)^r`` via ``t^a = s^{Y a}``.

    The rows of ``Y`` are a basis of the functionals vanishing on the saturation
    of ``ker``; since that saturation is primitive, ``a ↦ Y a`` is onto ``Z^r``.
    """
    N = ker.parent.ngens
    ann = ker.preimage.saturation().annihilator()
    return IntMatrix(ann.basis, N)


def restrict_to_coset(f: LaurentPolynomial, ker: Subgroup, alpha: TorsionCharacter) -> LaurentPolynomial:
    """``f`` restricted to ``α · V(ker̄)``, as a polynomial in ``r = dim V(ker)`` variables.

    The translation contributes the root of unity ``exp(2πi α(a))`` to the
    coefficient of ``t^a``.  The result is zero iff the coset lies in ``f = 0``.
    """
    if ker.parent != f.ambient or alpha.parent != f.ambient:
        raise DimensionError("restriction data over different groups")
    Y = coset_parametrization(ker)
    target = FgAbGroup(Y.rows)
    out = []
    for e, c in f.terms.items():
        v = alpha(e)
        coeff = c if v == 0 else CyclotomicScalar.coerce(c) * CyclotomicScalar.root_of_unity(v.numerator, v.denominator)
        out.append((Y.apply(e), coeff))
    return LaurentPolynomial(target, out)


def hypersurface_positive_dim(g: LaurentPolynomial) -> bool:
    """Whether ``g = 0`` has a positive-dimensional solution set in ``(C*)^r``."""
    r = g.ambient.free_rank
    if g.ambient.torsion:
        raise InputError("expected a polynomial on a torus (torsion-free exponents)")
    if g.is_zero():
        return r >= 1
    if r <= 1:
        return False
    return len(g.terms) >= 2


# ---------------------------------------------------------------------------
# Words, presentations, Fox calculus
# ---------------------------------------------------------------------------

@dataclass(frozen=True, init=False)
class GroupWord:
    """A freely reduced word in ``x_1, ..., x_q`` stored as ``(index, ±1)`` letters (0-based)."""

    q: int
    letters: tuple[tuple[int, int], ...]

    def __init__(self, q: int, letters: Iterable[tuple[int, int]]):
        stack: list[tuple[int, int]] = []
        for i, s in letters:
            if not 0 <= i < q or s not in (1, -1):
                raise InputError(f"bad letter {(i, s)} for {q} generators")
            if stack and stack[-1] == (i, -s):
                stack.pop()
            else:
                stack.append((i, s))
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "letters", tuple(stack))

    _TOKEN = re.compile(r"^x(\d+)(?:\^(-?\d+))?$")

    @classmethod
    def parse(cls, q: int, text: str) -> "GroupWord":
        """Parse ``"x1 x2 x1^-1 x2^-1"`` (1-based generators, integer powers)."""
        letters = []
        for tok in text.replace("*", " ").split():
            m = cls._TOKEN.match(tok)
            if not m:
                raise InputError(f"cannot parse word token {tok!r}")
            i = int(m.group(1)) - 1
            k = int(m.group(2)) if m.group(2) is not None else 1
            letters.extend([(i, 1 if k > 0 else -1)] * abs(k))
        return cls(q, letters)

    def exponent_sums(self) -> tuple[int, ...]:
        out = [0] * self.q
        for i, s in self.letters:
            out[i] += s
        return tuple(out)

    def __str__(self) -> str:
        return " ".join(f"x{i + 1}" if s == 1 else f"x{i + 1}^-1" for i, s in self.letters) or "1"


class Presentation:
    """A finite presentation together with its abelianization ``H``.

    ``images`` is the integer matrix sending generator ``x_j`` to its class in
    ``H`` (preimage coordinates).
    """

    def __init__(self, q: int, relators: Sequence[GroupWord | str]):
        self.q = q
        self.relators = tuple(r if isinstance(r, GroupWord) else GroupWord.parse(q, r) for r in relators)
        for r in self.relators:
            if r.q != q:
                raise InputError("relator over a different alphabet")
        self.abelianization, self.images = self._abelianize()

    def _abelianize(self) -> tuple[FgAbGroup, IntMatrix]:
        q = self.q
        cols = [r.exponent_sums() for r in self.relators]
        if not cols:
            return FgAbGroup(q), IntMatrix.identity(q)
        E = IntMatrix.from_columns(cols, q)  # q x m, relations as columns
        D, U, _ = smith_normal_form(E)
        diag = [D[i, i] if i < min(D.rows, D.cols) else 0 for i in range(q)]
        free_idx = [i for i in range(q) if diag[i] == 0]
        tors_idx = [i for i in range(q) if diag[i] > 1]
        H = FgAbGroup(len(free_idx), tuple(diag[i] for i in tors_idx))
        rows = [U.row(i) for i in free_idx + tors_idx]
        M = IntMatrix(rows, q) if rows else IntMatrix.zeros(0, q)
        reduced = [H.reduce(c) for c in M.columns()]
        return H, IntMatrix.from_columns(reduced, H.ngens)

    def generator_image(self, j: int) -> tuple[int, ...]:
        return self.images.column(j)


def fox_derivative(word: GroupWord, j: int, P: Presentation) -> LaurentPolynomial:
    """Abelianized Fox derivative ``φ(∂w/∂x_j)`` in ``Z[H]``."""
    H = P.abelianization
    prefix = [0] * H.ngens
    acc = []
    for i, s in word.letters:
        img = P.generator_image(i)
        if s == 1:
            if i == j:
                acc.append((tuple(prefix), 1))
            prefix = [a + b for a, b in zip(prefix, img)]
        else:
            prefix = [a - b for a, b in zip(prefix, img)]
            if i == j:
                acc.append((tuple(prefix), -1))
    return LaurentPolynomial(H, acc)


def fox_alexander_matrix(P: Presentation) -> list[list[LaurentPolynomial]]:
    """The ``m x q`` matrix of abelianized Fox derivatives of the relators."""
    return [[fox_derivative(r, j, P) for j in range(P.q)] for r in P.relators]


def fox_identity_holds(P: Presentation, matrix: Sequence[Sequence[LaurentPolynomial]] | None = None) -> bool:
    """Check ``Σ_i φ(∂r/∂x_i)(t_i - 1) = 0`` for every relator."""
    H = P.abelianization
    matrix = matrix if matrix is not None else fox_alexander_matrix(P)
    one = LaurentPolynomial.constant(H, 1)
    for row in matrix:
        total = LaurentPolynomial.zero(H)
        for i, entry in enumerate(row):
            total = total + entry * (LaurentPolynomial.monomial(H, P.generator_image(i)) - one)
        if not total.is_zero():
            return False
    return True


def _to_sympy(f: LaurentPolynomial, syms):
    expr = sympy.Integer(0)
    for e, c in f.terms.items():
        if not isinstance(c, int):
            raise Unsupported("minors_gcd needs integer coefficients")
        term = sympy.Integer(c)
        for s, k in zip(syms, e):
            term *= s ** k
        expr += term
    return expr


def _from_sympy_poly(poly: sympy.Poly, H: FgAbGroup) -> LaurentPolynomial:
    return LaurentPolynomial(H, {tuple(int(k) for k in m): int(c) for m, c in poly.terms()})


def normalize_unit(f: LaurentPolynomial) -> LaurentPolynomial:
    """Remove the monomial factor and make the lexicographically leading coefficient positive."""
    if f.is_zero():
        return f
    n = f.ambient.ngens
    mins = [min(e[i] for e in f.terms) for i in range(n)]
    g = f.shift([-m for m in mins])
    lead = g.terms[max(g.terms)]
    return -g if lead < 0 else g


def minors_gcd(matrix: Sequence[Sequence[LaurentPolynomial]], H: FgAbGroup, *, max_size: int = 6) -> LaurentPolynomial:
    """gcd of the ``(q-1) x (q-1)`` minors of an ``m x q`` Alexander matrix over ``Z[Z^n]``.

    The result is normalized up to units.  It describes the first
    characteristic variety only away from the trivial character.
    """
    if H.torsion:
        raise Unsupported("minors_gcd needs a free abelian exponent group")
    m = len(matrix)
    q = len(matrix[0]) if m else 0
    if max(m, q) > max_size:
        raise BoundExceeded(f"matrix of size {m}x{q} exceeds {max_size}")
    k = q - 1
    if k <= 0:
        return LaurentPolynomial.constant(H, 1)
    if m < k:
        return LaurentPolynomial.zero(H)
    syms = sympy.symbols(f"t1:{H.ngens + 1}")
    S = [[_to_sympy(x, syms) for x in row] for row in matrix]
    g = None
    for rows in combinations(range(m), k):
        for cols in combinations(range(q), k):
            minor = sympy.Matrix([[S[i][j] for j in cols] for i in rows]).det(method="berkowitz")
            num, _ = sympy.fraction(sympy.together(sympy.expand(minor)))
            num = sympy.expand(num)
            if num == 0:
                continue
            p = sympy.Poly(num, *syms)
            g = p if g is None else sympy.gcd(g, p)
    if g is None:
        return LaurentPolynomial.zero(H)
    return normalize_unit(_from_sympy_poly(sympy.Poly(g, *syms), H))
