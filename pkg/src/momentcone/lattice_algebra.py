"""Exact integer linear algebra.

Everything here works on Python ints, so entries never overflow no matter how
far intermediate values grow during elimination.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

Vector = tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored as a tuple of rows."""

    entries: tuple[Vector, ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def _trusted(cls, rows: list[list[int]]) -> IntMatrix:
        # rows are known rectangular lists of ints
        M = object.__new__(cls)
        object.__setattr__(M, "entries", tuple(map(tuple, rows)))
        return M

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> IntMatrix:
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> IntMatrix:
        return cls(tuple(zip(*columns)))

    @classmethod
    def identity(cls, size: int) -> IntMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(size)) for i in range(size)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(tuple(zip(*self.entries)))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.entries))
        return IntMatrix(tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
            for row in self.entries
        ))

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


@dataclass(frozen=True)
class SmithDecomposition:
    """``D == U @ A @ V`` with ``U`` and ``V`` unimodular and ``D`` in Smith form."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


@dataclass(frozen=True)
class FinAbGroup:
    """A finitely generated abelian group ``Z/d_1 + ... + Z/d_k + Z^r``.

    Invariant factors are > 1 and each divides the next.
    """

    invariant_factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        if any(d <= 1 for d in factors):
            raise ValueError(f"invariant factors must exceed 1: {factors}")
        if any(b % a for a, b in zip(factors, factors[1:])):
            raise ValueError(f"invariant factors do not form a divisibility chain: {factors}")
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        object.__setattr__(self, "invariant_factors", factors)

    @classmethod
    def from_diagonal(cls, diagonal: Iterable[int], generators: int) -> FinAbGroup:
        """Group presented by ``generators`` generators and a Smith diagonal of relations."""
        diagonal = [abs(d) for d in diagonal]
        nonzero = [d for d in diagonal if d != 0]
        return cls(tuple(d for d in nonzero if d > 1), generators - len(nonzero))

    def order(self) -> int | float:
        if self.free_rank:
            return math.inf
        return math.prod(self.invariant_factors)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors and not self.free_rank

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def _as_matrix(A) -> IntMatrix:
    return A if isinstance(A, IntMatrix) else IntMatrix.from_rows(A)


def _min_pivot(D: list[list[int]], t: int) -> tuple[int, int] | None:
    best = None
    best_abs = 0
    for i in range(t, len(D)):
        row = D[i]
        for j in range(t, len(row)):
            a = abs(row[j])
            if a and (best is None or a < best_abs):
                best, best_abs = (i, j), a
    return best


def snf(A) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    The pivot is always the nonzero entry of smallest absolute value in the
    unfinished block, ties broken by lowest row then lowest column, so the
    output is a deterministic function of ``A``.

    Args:
      A: an ``IntMatrix`` or a nested sequence of ints, shape m x N.

    Returns:
      ``SmithDecomposition(U, D, V)`` with ``D == U @ A @ V``.
    """
    A = _as_matrix(A)
    m, n = A.shape
    D = A.tolist()
    U = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()

    def swap_rows(i, k):
        D[i], D[k] = D[k], D[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for M in (D, V):
            for row in M:
                row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        for M in (D, U):
            a, b = M[dst], M[src]
            for j in range(len(a)):
                a[j] += q * b[j]

    def add_col(dst, src, q):
        for M in (D, V):
            for row in M:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            pivot = _min_pivot(D, t)
            if pivot is None:
                break
            i, j = pivot
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = D[i][t] // p
                if q:
                    add_row(i, t, -q)
                dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                q = D[t][j] // p
                if q:
                    add_col(j, t, -q)
                dirty = dirty or D[t][j] != 0
            if dirty:
                continue
            bad_row = next(
                (i for i in range(t + 1, m) if any(D[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad_row is None:
                break
            add_row(t, bad_row, 1)
        if pivot is None:
            break
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]

    return SmithDecomposition(IntMatrix._trusted(U), IntMatrix._trusted(D), IntMatrix._trusted(V))


def cokernel(A) -> FinAbGroup:
    """The group ``Z^n / A Z^N`` for an n x N matrix ``A``."""
    A = _as_matrix(A)
    return FinAbGroup.from_diagonal(snf(A).diagonal, A.rows)


def det(A) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    M = _as_matrix(A).tolist()
    n = len(M)
    if n != len(M[0]):
        raise ValueError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
        prev = pivot
    return sign * M[n - 1][n - 1]


def rank(vectors: Iterable[Sequence[int]]) -> int:
    """Rank over the rationals of a family of integer vectors."""
    rows = [list(v) for v in vectors if any(v)]
    r = 0
    if not rows:
        return 0
    width = len(rows[0])
    for col in range(width):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r]
        for i in range(r + 1, len(rows)):
            a = rows[i][col]
            if a:
                rows[i] = [x * p[col] - a * y for x, y in zip(rows[i], p)]
        r += 1
        if r == len(rows):
            break
    return r


def primitive(v: Sequence[int]) -> Vector:
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = math.gcd(*v)
    return tuple(v) if g in (0, 1) else tuple(x // g for x in v)


def hermite_rows(A) -> IntMatrix | None:
    """Row Hermite normal form, with zero rows dropped.

    Pivots are positive, and entries above a pivot lie in ``[0, pivot)``.
    Returns None when every row is zero.
    """
    H = [list(r) for r in _as_matrix(A).entries]
    m, n = len(H), len(H[0])
    r = 0
    for col in range(n):
        if r == m:
            break
        # Euclid on column entries at rows r.. until only row r is nonzero.
        while True:
            nz = [i for i in range(r, m) if H[i][col]]
            if not nz:
                break
            i = min(nz, key=lambda k: (abs(H[k][col]), k))
            H[r], H[i] = H[i], H[r]
            p = H[r][col]
            done = True
            for k in range(r + 1, m):
                q = H[k][col] // p
                if q:
                    H[k] = [x - q * y for x, y in zip(H[k], H[r])]
                done = done and H[k][col] == 0
            if done:
                break
        if H[r][col] == 0:
            continue
        if H[r][col] < 0:
            H[r] = [-x for x in H[r]]
        p = H[r][col]
        for k in range(r):
            q = H[k][col] // p
            if q:
                H[k] = [x - q * y for x, y in zip(H[k], H[r])]
        r += 1
    if r == 0:
        return None
    return IntMatrix.from_rows(H[:r])


def kernel_basis(A) -> list[Vector]:
    """Basis of the integer kernel lattice ``{k in Z^N : A k = 0}``.

    The basis is read off the column transform of the Smith form, which makes
    it saturated, then put in row Hermite form so it is canonical. An
    injective ``A`` gives an empty list.
    """
    A = _as_matrix(A)
    dec = snf(A)
    r = dec.rank
    basis = [dec.V.column(j) for j in range(r, A.cols)]
    if not basis:
        return []
    return list(hermite_rows(basis).entries)


def is_direct_summand(rows) -> bool:
    """True iff the rows are independent and span a saturated sublattice."""
    M = _as_matrix(rows)
    diagonal = snf(M).diagonal
    return len(diagonal) == M.rows and all(d == 1 for d in diagonal)


def minor_gcd(A, k: int) -> int:
    """gcd of all k x k minors of ``A`` (the k-th determinantal divisor).

    Enumerates every minor directly and never touches the Smith form code, so
    it can serve as an oracle for it.
    """
    A = _as_matrix(A)
    if not 1 <= k <= min(A.shape):
        raise ValueError(f"k={k} out of range for shape {A.shape}")
    g = 0
    for rows in itertools.combinations(range(A.rows), k):
        for cols in itertools.combinations(range(A.cols), k):
            g = math.gcd(g, det([[A[i, j] for j in cols] for i in rows]))
            if g == 1:
                return 1
    return g
