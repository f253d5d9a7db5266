"""
Exact matrices over QPoly and fraction-free determinants.

Hankel, Toeplitz, compound and submatrix constructions, a Bareiss determinant
engine with row-swap pivoting, and a memoized Laplace expansion used both as the
engine's fallback and as an independent oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Sequence

from app.errors import (
    BadIndexSets,
    EmptySequence,
    InsufficientTerms,
    NotSquare,
    ShapeMismatch,
    TooSmall,
)
from app.services.qpoly import QPoly, as_qpoly

IndexPair = tuple[int, int]


@dataclass(frozen=True, slots=True)
class ExactMatrix:
    """Immutable rectangular matrix of QPoly entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[QPoly, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeMismatch("Matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )
        object.__setattr__(self, "entries", tuple(as_qpoly(e) for e in self.entries))

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> ExactMatrix:
        n_rows = len(rows)
        n_cols = len(rows[0]) if n_rows else 0
        if any(len(r) != n_cols for r in rows):
            raise ShapeMismatch("Ragged rows")
        return cls(n_rows, n_cols, tuple(as_qpoly(e) for r in rows for e in r))

    @classmethod
    def from_function(cls, rows: int, cols: int, fn: Callable[[int, int], QPoly]) -> ExactMatrix:
        return cls(rows, cols, tuple(as_qpoly(fn(i, j)) for i in range(rows) for j in range(cols)))

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls.from_function(n, n, lambda i, j: QPoly.one() if i == j else QPoly.zero())

    # ------------------------------------------------------------------
    # Access
    # ------------------------------------------------------------------

    def __getitem__(self, index: tuple[int, int]) -> QPoly:
        i, j = index
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) outside {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[QPoly, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_lists(self) -> list[list[QPoly]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_numeric(self) -> bool:
        return all(e.is_constant for e in self.entries)

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def is_lower_triangular(self) -> bool:
        return all(self[i, j].is_zero for i in range(self.rows) for j in range(i + 1, self.cols))

    # ------------------------------------------------------------------
    # Algebra
    # ------------------------------------------------------------------

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.cols != other.rows:
            raise ShapeMismatch(
                f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )

        def entry(i: int, j: int) -> QPoly:
            acc = QPoly.zero()
            for k in range(self.cols):
                a = self[i, k]
                if a.is_zero:
                    continue
                b = other[k, j]
                if not b.is_zero:
                    acc = acc + a * b
            return acc

        return ExactMatrix.from_function(self.rows, other.cols, entry)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> ExactMatrix:
        rows, cols = list(rows), list(cols)
        _validate_indices(rows, self.rows)
        _validate_indices(cols, self.cols)
        return ExactMatrix.from_function(len(rows), len(cols), lambda i, j: self[rows[i], cols[j]])

    def to_json(self) -> list[list[list]]:
        """Array-of-arrays of coefficient arrays."""
        return [[e.to_json() for e in self.row(i)] for i in range(self.rows)]

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(e) for e in self.row(i)) + "]" for i in range(self.rows))


def _validate_indices(indices: Sequence[int], bound: int) -> None:
    if any(not 0 <= i < bound for i in indices):
        raise BadIndexSets(f"Indices {list(indices)} out of range 0..{bound - 1}")
    if len(set(indices)) != len(indices):
        raise BadIndexSets(f"Repeated indices in {list(indices)}")


# ============================================================================
# Structured matrices
# ============================================================================

def hankel(seq: Sequence, n: int) -> ExactMatrix:
    """(n+1)x(n+1) Hankel matrix [a_{i+j}]."""
    if n < 0:
        raise BadIndexSets("Hankel order must be nonnegative")
    if len(seq) < 2 * n + 1:
        raise InsufficientTerms(f"Hankel order {n} needs {2 * n + 1} terms, got {len(seq)}")
    terms = [as_qpoly(a) for a in seq[:2 * n + 1]]
    return ExactMatrix.from_function(n + 1, n + 1, lambda i, j: terms[i + j])


def toeplitz(seq: Sequence, n: int) -> ExactMatrix:
    """(n+1)x(n+1) Toeplitz matrix [a_{i-j}], zero above the diagonal."""
    if n < 0:
        raise BadIndexSets("Toeplitz order must be nonnegative")
    if len(seq) < n + 1:
        raise InsufficientTerms(f"Toeplitz order {n} needs {n + 1} terms, got {len(seq)}")
    terms = [as_qpoly(a) for a in seq[:n + 1]]
    return ExactMatrix.from_function(
        n + 1, n + 1, lambda i, j: terms[i - j] if i >= j else QPoly.zero()
    )


def shift(seq: Sequence) -> list:
    """Drop the first term: (a_{k+1})_k."""
    if len(seq) == 0:
        raise EmptySequence("Cannot shift an empty sequence")
    return list(seq[1:])


def tridiagonal(diagonal: Sequence, sub: Sequence, super_: Sequence | None = None) -> ExactMatrix:
    """Square tridiagonal matrix; the superdiagonal defaults to ones."""
    n = len(diagonal)
    if len(sub) < n - 1:
        raise InsufficientTerms(f"Need {n - 1} subdiagonal entries, got {len(sub)}")
    upper = [QPoly.one()] * max(n - 1, 0) if super_ is None else list(super_)

    def entry(i: int, j: int) -> QPoly:
        if i == j:
            return as_qpoly(diagonal[i])
        if i == j + 1:
            return as_qpoly(sub[j])
        if j == i + 1:
            return as_qpoly(upper[i])
        return QPoly.zero()

    return ExactMatrix.from_function(n, n, entry)


# ============================================================================
# Determinants
# ============================================================================

def det_cofactor(m: ExactMatrix) -> QPoly:
    """Laplace expansion memoized over column subsets (O(n 2^n) products)."""
    if not m.is_square:
        raise NotSquare(f"Determinant of a {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return QPoly.one()

    # minors[cols] = det of rows 0..len(cols)-1 restricted to cols
    minors: dict[tuple[int, ...], QPoly] = {(): QPoly.one()}
    for r in range(n):
        nxt: dict[tuple[int, ...], QPoly] = {}
        for cols in combinations(range(n), r + 1):
            acc = QPoly.zero()
            for pos, c in enumerate(cols):
                entry = m[r, c]
                if entry.is_zero:
                    continue
                rest = minors[cols[:pos] + cols[pos + 1:]]
                if rest.is_zero:
                    continue
                term = entry * rest
                acc = acc + term if (r + pos) % 2 == 0 else acc - term
            nxt[cols] = acc
        minors = nxt
    return minors[tuple(range(n))]


def det_bareiss(m: ExactMatrix) -> QPoly:
    """Fraction-free determinant over Q[q].

    Pivot divisions are exact; a zero pivot is replaced by a row swap (sign
    tracked), and when no swap exists the Laplace expansion takes over.
    """
    if not m.is_square:
        raise NotSquare(f"Determinant of a {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return QPoly.one()
    if n == 1:
        return m[0, 0]
    if n == 2:
        return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]

    a = m.to_lists()
    sign = 1
    prev = QPoly.one()
    for k in range(n - 1):
        if a[k][k].is_zero:
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero), None)
            if swap is None:
                return det_cofactor(m)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            a_ik = a[i][k]
            for j in range(k + 1, n):
                value = pivot * a[i][j] - a_ik * a[k][j]
                a[i][j] = value.exact_div(prev) if k else value
            a[i][k] = QPoly.zero()
        prev = pivot
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def leading_principal_minors(m: ExactMatrix) -> list[QPoly]:
    """Determinants of the leading k x k blocks, k = 1..n.

    Without row swaps the Bareiss pivots are exactly these minors; after a zero
    pivot the remaining blocks are evaluated directly.
    """
    if not m.is_square:
        raise NotSquare(f"Leading minors of a {m.rows}x{m.cols} matrix")
    n = m.rows
    a = m.to_lists()
    minors: list[QPoly] = []
    prev = QPoly.one()
    for k in range(n):
        pivot = a[k][k]
        minors.append(pivot)
        if pivot.is_zero:
            minors.extend(
                det_bareiss(m.submatrix(range(size), range(size))) for size in range(k + 2, n + 1)
            )
            return minors
        for i in range(k + 1, n):
            a_ik = a[i][k]
            for j in range(k + 1, n):
                value = pivot * a[i][j] - a_ik * a[k][j]
                a[i][j] = value.exact_div(prev) if k else value
        prev = pivot
    return minors


def minor(m: ExactMatrix, rows: Sequence[int], cols: Sequence[int]) -> QPoly:
    if len(rows) != len(cols):
        raise BadIndexSets(f"Row set {list(rows)} and column set {list(cols)} differ in size")
    return det_bareiss(m.submatrix(rows, cols))


# ============================================================================
# Compound matrices
# ============================================================================

def index_pairs(size: int) -> list[IndexPair]:
    """Pairs (i, j), i < j < size, in lexicographic order."""
    return list(combinations(range(size), 2))


def consecutive_pair_positions(size: int) -> list[int]:
    """Positions of the pairs (i, i+1) within index_pairs(size)."""
    pairs = index_pairs(size)
    return [pairs.index((i, i + 1)) for i in range(size - 1)]


def compound2(m: ExactMatrix) -> ExactMatrix:
    """Second compound: all 2x2 minors, rows/cols indexed by lexicographic pairs."""
    if not m.is_square:
        raise NotSquare("Compound of a non-square matrix")
    if m.rows < 2:
        raise TooSmall("Compound matrix needs at least 2 rows")
    pairs = index_pairs(m.rows)

    def entry(r: int, c: int) -> QPoly:
        (i, j), (k, l) = pairs[r], pairs[c]
        return m[i, k] * m[j, l] - m[i, l] * m[j, k]

    return ExactMatrix.from_function(len(pairs), len(pairs), entry)


def principal_submatrix(m: ExactMatrix, idx: Iterable[int]) -> ExactMatrix:
    idx = list(idx)
    if not m.is_square:
        raise NotSquare("Principal submatrix of a non-square matrix")
    return m.submatrix(idx, idx)


def hankel_determinants(seq: Sequence, n: int) -> list[QPoly]:
    """det H_k(seq) for k = 0..n."""
    return leading_principal_minors(hankel(seq, n))
