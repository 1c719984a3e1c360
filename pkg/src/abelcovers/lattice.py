"""Exact integer linear algebra: Hermite/Smith normal forms and lattices in Z^n.

Everything here works over Python's arbitrary-precision integers.  Matrices
are immutable :class:`IntMatrix` objects; the algorithms copy into plain
nested lists, do their row/column operations there, and wrap the result.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionError

__all__ = [
    "IntMatrix",
    "Lattice",
    "xgcd",
    "hermite_normal_form",
    "smith_normal_form",
    "integer_kernel",
    "matrix_rank",
    "determinant",
    "lattice_sum",
    "lattice_intersection",
    "saturation",
]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class IntMatrix:
    """An immutable ``rows x cols`` integer matrix stored row-major."""

    __slots__ = ("_rows", "_nrows", "_ncols")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        data = tuple(tuple(int(v) for v in r) for r in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise DimensionError("ragged matrix rows")
            if ncols is not None and ncols != width:
                raise DimensionError(f"expected {ncols} columns, got {width}")
        else:
            width = 0 if ncols is None else ncols
        self._rows = data
        self._nrows = len(data)
        self._ncols = width

    # construction helpers -------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls([[0] * n for _ in range(m)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> "IntMatrix":
        cols = [tuple(c) for c in columns]
        for c in cols:
            if len(c) != nrows:
                raise DimensionError(f"column of length {len(c)} in a {nrows}-row matrix")
        return cls([[c[i] for c in cols] for i in range(nrows)], len(cols))

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> "IntMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n)

    # accessors ------------------------------------------------------------
    @property
    def rows(self) -> int:
        return self._nrows

    @property
    def cols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return self._nrows, self._ncols

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self._ncols)]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._nrows, self._ncols, self._rows))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})"

    # arithmetic -----------------------------------------------------------
    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            [[self._rows[i][j] for i in range(self._nrows)] for j in range(self._ncols)],
            self._nrows,
        )

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self._ncols != other._nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.columns()
        return IntMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in ocols] for r in self._rows],
            other._ncols,
        )

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product."""
        if len(v) != self._ncols:
            raise DimensionError(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self._rows)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self._nrows != other._nrows:
            raise DimensionError("hstack needs equal row counts")
        return IntMatrix(
            [a + b for a, b in zip(self._rows, other._rows)], self._ncols + other._ncols
        )

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self._ncols != other._ncols:
            raise DimensionError("vstack needs equal column counts")
        return IntMatrix(self._rows + other._rows, self._ncols)


def _as_lists(M: IntMatrix) -> list[list[int]]:
    return [list(r) for r in M]


def determinant(M: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = M.rows
    if n != M.cols:
        raise DimensionError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = _as_lists(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def matrix_rank(M: IntMatrix) -> int:
    """Rank over Q (the number of nonzero columns of the Hermite form)."""
    return _hnf_lists(_as_lists(M), M.cols)[2]


# ---------------------------------------------------------------------------
# Hermite normal form
# ---------------------------------------------------------------------------

def _col_combine(A: list[list[int]], j: int, k: int, x: int, y: int, u: int, v: int) -> None:
    """Replace columns (j, k) by (x*c_j + y*c_k, u*c_j + v*c_k) in place."""
    for r in A:
        cj, ck = r[j], r[k]
        r[j] = x * cj + y * ck
        r[k] = u * cj + v * ck


def _hnf_lists(A: list[list[int]], ncols: int) -> tuple[list[list[int]], list[list[int]], int]:
    """Column HNF on lists.  Returns (H, U, number of nonzero columns)."""
    m = len(A)
    U = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    piv = 0
    for i in range(m):
        if piv == ncols:
            break
        row = A[i]
        for j in range(piv + 1, ncols):
            b = row[j]
            if b == 0:
                continue
            a = row[piv]
            g, x, y = xgcd(a, b)
            # unimodular 2x2 step: new c_piv = x c_piv + y c_j, new c_j = -(b/g) c_piv + (a/g) c_j
            _col_combine(A, piv, j, x, y, -(b // g), a // g)
            _col_combine(U, piv, j, x, y, -(b // g), a // g)
        p = row[piv]
        if p == 0:
            continue
        if p < 0:
            for r in A:
                r[piv] = -r[piv]
            for r in U:
                r[piv] = -r[piv]
            p = -p
        for j in range(piv):
            q = row[j] // p
            if q:
                for r in A:
                    r[j] -= q * r[piv]
                for r in U:
                    r[j] -= q * r[piv]
        piv += 1
    return A, U, piv


def hermite_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``M @ U == H``.  Pivots are
    positive and sit in strictly increasing rows, entries to the left of a
    pivot lie in ``[0, pivot)``, and all zero columns come last.
    """
    A, U, _ = _hnf_lists(_as_lists(M), M.cols)
    return IntMatrix(A, M.cols), IntMatrix(U, M.cols)


def integer_kernel(M: IntMatrix) -> "Lattice":
    """The lattice ``{x in Z^cols : M x = 0}``."""
    A, U, r = _hnf_lists(_as_lists(M), M.cols)
    basis = [tuple(U[i][j] for i in range(M.cols)) for j in range(r, M.cols)]
    return Lattice(M.cols, basis)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def smith_normal_form(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form with transforms: returns ``(D, U, V)`` with ``U M V = D``.

    ``D`` has the shape of ``M``; its diagonal is non-negative and forms a
    divisibility chain (zeros, if any, trail).
    """
    m, n = M.shape
    A = _as_lists(M)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for r in A:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]

    def add_row(dst, src, f):  # row_dst += f * row_src
        A[dst] = [a + f * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):  # col_dst += f * col_src
        for r in A:
            r[dst] += f * r[src]
        for r in V:
            r[dst] += f * r[src]

    for t in range(min(m, n)):
        # pick the smallest nonzero entry of the trailing block as pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(i, t, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(j, t, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            p = A[t][t]
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return IntMatrix(A, n), IntMatrix(U, m), IntMatrix(V, n)


def invariant_factors(M: IntMatrix) -> list[int]:
    """Diagonal of the Smith form of ``M`` (length ``min(rows, cols)``)."""
    D, _, _ = smith_normal_form(M)
    return [D[i, i] for i in range(min(D.rows, D.cols))]


# ---------------------------------------------------------------------------
# Lattices
# ---------------------------------------------------------------------------

def _canonical_basis(n: int, vectors: Iterable[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    cols = [tuple(int(x) for x in v) for v in vectors]
    for c in cols:
        if len(c) != n:
            raise DimensionError(f"generator of length {len(c)} in Z^{n}")
    if not cols:
        return ()
    M = IntMatrix.from_columns(cols, n)
    A, _, r = _hnf_lists(_as_lists(M), M.cols)
    return tuple(tuple(A[i][j] for i in range(n)) for j in range(r))


@dataclass(frozen=True, init=False)
class Lattice:
    """A sublattice of ``Z^n`` held by its canonical (column HNF) basis."""

    ambient_rank: int
    basis: tuple[tuple[int, ...], ...]

    def __init__(self, ambient_rank: int, generators: Iterable[Sequence[int]] = ()):
        object.__setattr__(self, "ambient_rank", int(ambient_rank))
        object.__setattr__(self, "basis", _canonical_basis(int(ambient_rank), generators))

    @classmethod
    def full(cls, n: int) -> "Lattice":
        return cls(n, [tuple(int(i == j) for i in range(n)) for j in range(n)])

    @classmethod
    def zero(cls, n: int) -> "Lattice":
        return cls(n, ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def generators(self) -> IntMatrix:
        """The canonical generator matrix (``n`` rows, one column per basis vector)."""
        return IntMatrix.from_columns(self.basis, self.ambient_rank)

    def is_zero(self) -> bool:
        return not self.basis

    def _check(self, other: "Lattice") -> None:
        if self.ambient_rank != other.ambient_rank:
            raise DimensionError(
                f"lattices in Z^{self.ambient_rank} and Z^{other.ambient_rank}"
            )

    def solve(self, v: Sequence[int]) -> tuple[int, ...] | None:
        """Coefficients ``c`` with ``sum c_j b_j == v``, or ``None`` if ``v`` is not in the lattice.

        The canonical basis is echelon, so this is back-substitution.
        """
        if len(v) != self.ambient_rank:
            raise DimensionError(f"vector of length {len(v)} in Z^{self.ambient_rank}")
        rest = [int(x) for x in v]
        coeffs = []
        for b in self.basis:
            p = next(i for i, x in enumerate(b) if x)
            if any(rest[:p]):
                return None
            q, r = divmod(rest[p], b[p])
            if r:
                return None
            coeffs.append(q)
            if q:
                rest = [x - q * y for x, y in zip(rest, b)]
        return tuple(coeffs) if not any(rest) else None

    def contains(self, v: Sequence[int]) -> bool:
        return self.solve(v) is not None

    def __contains__(self, v: Sequence[int]) -> bool:
        return self.contains(v)

    def contains_lattice(self, other: "Lattice") -> bool:
        self._check(other)
        return all(self.contains(b) for b in other.basis)

    def __le__(self, other: "Lattice") -> bool:
        return other.contains_lattice(self)

    def __add__(self, other: "Lattice") -> "Lattice":
        return lattice_sum(self, other)

    def __and__(self, other: "Lattice") -> "Lattice":
        return lattice_intersection(self, other)

    def saturation(self) -> "Lattice":
        return saturation(self)

    def is_saturated(self) -> bool:
        return saturation(self) == self

    def annihilator(self) -> "Lattice":
        """Integer functionals (as vectors of ``Z^n``) vanishing on the lattice."""
        if not self.basis:
            return Lattice.full(self.ambient_rank)
        return integer_kernel(IntMatrix(self.basis, self.ambient_rank))

    def index_in(self, other: "Lattice") -> int:
        """``[other : self]`` for ``self <= other`` of equal rank."""
        if not other.contains_lattice(self) or other.rank != self.rank:
            raise ValueError("index only defined for a finite-index sublattice")
        # express self's basis in other's basis and take |det|
        coords = [other.solve(b) for b in self.basis]
        return abs(determinant(IntMatrix.from_columns(coords, other.rank))) if coords else 1

    def map(self, M: IntMatrix) -> "Lattice":
        """Image of the lattice under ``M`` (``M.cols == ambient_rank``)."""
        if M.cols != self.ambient_rank:
            raise DimensionError("matrix/lattice dimension mismatch")
        return Lattice(M.rows, [M.apply(b) for b in self.basis])

    def preimage(self, M: IntMatrix) -> "Lattice":
        """``{x : M x in self}`` for ``M`` with ``M.rows == ambient_rank``."""
        if M.rows != self.ambient_rank:
            raise DimensionError("matrix/lattice dimension mismatch")
        k = M.cols
        stacked = M.hstack(IntMatrix.from_columns([[-x for x in b] for b in self.basis], M.rows)) \
            if self.basis else M
        ker = integer_kernel(stacked)
        return Lattice(k, [b[:k] for b in ker.basis])

    def __repr__(self) -> str:
        return f"Lattice({self.ambient_rank}, {[list(b) for b in self.basis]})"


def lattice_sum(L1: Lattice, L2: Lattice) -> Lattice:
    L1._check(L2)
    return Lattice(L1.ambient_rank, L1.basis + L2.basis)


def lattice_intersection(L1: Lattice, L2: Lattice) -> Lattice:
    """``L1 ∩ L2`` from the kernel of ``[B1 | -B2]``."""
    L1._check(L2)
    n = L1.ambient_rank
    if not L1.basis or not L2.basis:
        return Lattice.zero(n)
    B1 = L1.generators
    stacked = B1.hstack(IntMatrix.from_columns([[-x for x in b] for b in L2.basis], n))
    ker = integer_kernel(stacked)
    k = L1.rank
    return Lattice(n, [B1.apply(v[:k]) for v in ker.basis])


def saturation(L: Lattice) -> Lattice:
    """Primitive closure ``(L ⊗ Q) ∩ Z^n``: the double annihilator."""
    ann = L.annihilator()
    if not ann.basis:
        return Lattice.full(L.ambient_rank)
    return integer_kernel(IntMatrix(ann.basis, L.ambient_rank))
