"""Exact dense linear algebra over rational scalars.

All scalars are `fractions.Fraction`: stored reduced, positive denominator,
exact arithmetic throughout.  Matrices are immutable, dense, and small, so
determinants and inverses use plain Gaussian elimination; that is the right
trade-off at the sizes this package meets (n <= ~20).

Rows and columns may carry integer labels (vertex numbers), which lets
callers drive row/column operations by vertex identity instead of position.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Optional, Sequence

__all__ = [
    "Fraction",
    "LinAlgError",
    "Matrix",
    "NonSquareMatrix",
    "SingularBlock",
    "SingularMatrix",
    "rat",
    "rat_str",
    "solve_linear_system",
]


class LinAlgError(Exception):
    """Base class for exact linear-algebra failures."""


class NonSquareMatrix(LinAlgError):
    """The operation requires a square matrix."""


class SingularMatrix(LinAlgError):
    """The matrix (or linear system) is singular."""


class SingularBlock(LinAlgError):
    """The eliminated block of a Schur complement is singular."""


_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/[1-9]\d*)?$")


def rat(value: object) -> Fraction:
    """Coerce an int, a Fraction, or a "p/q" / "p" string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational value")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise ValueError(f"not a rational literal: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot coerce {type(value).__name__} to a rational")


def rat_str(value: Fraction) -> str:
    """Serialize a Fraction as "p/q", or as "p" when the denominator is 1."""
    return str(value)


def _check_labels(labels: Optional[Iterable[int]], count: int, axis: str):
    if labels is None:
        return None
    tup = tuple(labels)
    if len(tup) != count:
        raise ValueError(f"{axis} labels do not match the {axis} count")
    if len(set(tup)) != len(tup):
        raise ValueError(f"{axis} labels must be distinct")
    return tup


class Matrix:
    """Immutable rational matrix with optional integer row/column labels."""

    __slots__ = ("entries", "rows", "cols", "row_labels", "col_labels")

    def __init__(self, entries, row_labels=None, col_labels=None, labels=None):
        grid = tuple(tuple(Fraction(x) for x in row) for row in entries)
        rows = len(grid)
        cols = len(grid[0]) if rows else 0
        if any(len(row) != cols for row in grid):
            raise ValueError("rows have unequal lengths")
        if labels is not None:
            if row_labels is not None or col_labels is not None:
                raise ValueError("pass either labels or row/col labels, not both")
            row_labels = col_labels = tuple(labels)
        self.entries = grid
        self.rows = rows
        self.cols = cols
        self.row_labels = _check_labels(row_labels, rows, "row")
        self.col_labels = _check_labels(col_labels, cols, "column")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def identity(cls, n: int, labels: Optional[Sequence[int]] = None) -> "Matrix":
        return cls(
            [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)],
            labels=labels,
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[Fraction(0)] * cols for _ in range(rows)])

    # -- basic protocol -------------------------------------------------------

    def __getitem__(self, i: int):
        return self.entries[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.entries == other.entries
            and self.row_labels == other.row_labels
            and self.col_labels == other.col_labels
        )

    def __hash__(self) -> int:
        return hash((self.entries, self.row_labels, self.col_labels))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def row_pos(self, label: int) -> int:
        if self.row_labels is None:
            raise ValueError("matrix has no row labels")
        return self.row_labels.index(label)

    def col_pos(self, label: int) -> int:
        if self.col_labels is None:
            raise ValueError("matrix has no column labels")
        return self.col_labels.index(label)

    def entry(self, row_label: int, col_label: int) -> Fraction:
        """Entry addressed by labels (falls back to 1-based positions)."""
        if self.row_labels is not None:
            i = self.row_pos(row_label)
        else:
            i = row_label - 1
        if self.col_labels is not None:
            j = self.col_pos(col_label)
        else:
            j = col_label - 1
        return self.entries[i][j]

    # -- arithmetic -----------------------------------------------------------

    def _merge_labels(self, other: "Matrix"):
        rlab = self.row_labels if self.row_labels == other.row_labels else None
        clab = self.col_labels if self.col_labels == other.col_labels else None
        return rlab, clab

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        rlab, clab = self._merge_labels(other)
        return Matrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
            row_labels=rlab,
            col_labels=clab,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        rlab, clab = self._merge_labels(other)
        return Matrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
            row_labels=rlab,
            col_labels=clab,
        )

    def __neg__(self) -> "Matrix":
        return Matrix(
            [[-a for a in row] for row in self.entries],
            row_labels=self.row_labels,
            col_labels=self.col_labels,
        )

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch in matrix product")
            cols = other.cols
            out = []
            for i in range(self.rows):
                srow = self.entries[i]
                orow = [Fraction(0)] * cols
                for k in range(self.cols):
                    a = srow[k]
                    if a:
                        brow = other.entries[k]
                        for j in range(cols):
                            orow[j] += a * brow[j]
                out.append(orow)
            return Matrix(out, row_labels=self.row_labels, col_labels=other.col_labels)
        scalar = Fraction(other)
        return Matrix(
            [[scalar * a for a in row] for row in self.entries],
            row_labels=self.row_labels,
            col_labels=self.col_labels,
        )

    __rmul__ = __mul__

    def transpose(self) -> "Matrix":
        return Matrix(
            list(zip(*self.entries)) if self.rows else [],
            row_labels=self.col_labels,
            col_labels=self.row_labels,
        )

    # -- structure ------------------------------------------------------------

    def submatrix(self, row_positions: Iterable[int], col_positions: Iterable[int]) -> "Matrix":
        rp = list(row_positions)
        cp = list(col_positions)
        rlab = tuple(self.row_labels[i] for i in rp) if self.row_labels else None
        clab = tuple(self.col_labels[j] for j in cp) if self.col_labels else None
        return Matrix(
            [[self.entries[i][j] for j in cp] for i in rp],
            row_labels=rlab,
            col_labels=clab,
        )

    def take(self, row_labels: Iterable[int], col_labels: Iterable[int]) -> "Matrix":
        """Submatrix addressed by labels, in the order given."""
        return self.submatrix(
            (self.row_pos(r) for r in row_labels),
            (self.col_pos(c) for c in col_labels),
        )

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def row_sums(self) -> tuple[Fraction, ...]:
        return tuple(sum(row, Fraction(0)) for row in self.entries)

    # -- elimination ----------------------------------------------------------

    def det(self) -> Fraction:
        """Determinant by fraction-exact Gaussian elimination; det of the
        empty (0 x 0) matrix is 1."""
        if self.rows != self.cols:
            raise NonSquareMatrix(f"determinant of a {self.rows}x{self.cols} matrix")
        n = self.rows
        if n == 0:
            return Fraction(1)
        a = [list(row) for row in self.entries]
        result = Fraction(1)
        for col in range(n):
            pivot_row = None
            for r in range(col, n):
                if a[r][col]:
                    pivot_row = r
                    break
            if pivot_row is None:
                return Fraction(0)
            if pivot_row != col:
                a[col], a[pivot_row] = a[pivot_row], a[col]
                result = -result
            pivot = a[col][col]
            result *= pivot
            prow = a[col]
            for r in range(col + 1, n):
                factor = a[r][col] / pivot
                if factor:
                    arow = a[r]
                    for c in range(col + 1, n):
                        arow[c] -= factor * prow[c]
        return result

    def invert(self) -> "Matrix":
        """Inverse by Gauss-Jordan elimination; raises SingularMatrix.

        Labels travel with the inverse map: the result's rows carry the
        original column labels and vice versa.
        """
        if self.rows != self.cols:
            raise NonSquareMatrix(f"inverse of a {self.rows}x{self.cols} matrix")
        n = self.rows
        if n == 0:
            return Matrix((), row_labels=self.col_labels, col_labels=self.row_labels)
        a = [list(row) + [Fraction(1 if i == j else 0) for j in range(n)]
             for i, row in enumerate(self.entries)]
        for col in range(n):
            pivot_row = None
            for r in range(col, n):
                if a[r][col]:
                    pivot_row = r
                    break
            if pivot_row is None:
                raise SingularMatrix("matrix is singular")
            if pivot_row != col:
                a[col], a[pivot_row] = a[pivot_row], a[col]
            pivot = a[col][col]
            if pivot != 1:
                inv = Fraction(1) / pivot
                a[col] = [x * inv for x in a[col]]
            prow = a[col]
            for r in range(n):
                if r == col:
                    continue
                factor = a[r][col]
                if factor:
                    arow = a[r]
                    for c in range(col, 2 * n):
                        arow[c] -= factor * prow[c]
        return Matrix(
            [row[n:] for row in a],
            row_labels=self.col_labels,
            col_labels=self.row_labels,
        )

    def schur_complement(self, keep: Iterable[int]) -> "Matrix":
        """Schur complement onto the kept positions.

        `keep` lists 0-based row/column positions (the matrix must be
        square); the complementary block is eliminated and must be
        invertible, otherwise SingularBlock is raised.
        """
        if self.rows != self.cols:
            raise NonSquareMatrix("Schur complement of a non-square matrix")
        kept = sorted(set(keep))
        if any(i < 0 or i >= self.rows for i in kept):
            raise ValueError("keep positions out of range")
        dropped = [i for i in range(self.rows) if i not in set(kept)]
        if not dropped:
            return self
        a = self.submatrix(kept, kept)
        b = self.submatrix(kept, dropped)
        c = self.submatrix(dropped, kept)
        d = self.submatrix(dropped, dropped)
        try:
            d_inv = d.invert()
        except SingularMatrix as exc:
            raise SingularBlock("eliminated block is singular") from exc
        return a - b * d_inv * c


def solve_linear_system(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Solve a square exact linear system; raises SingularMatrix if singular."""
    n = len(rows)
    if len(rhs) != n:
        raise ValueError("right-hand side does not match the system")
    if n == 0:
        return []
    if any(len(row) != n for row in rows):
        raise ValueError("system matrix must be square")
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    for col in range(n):
        pivot_row = None
        for r in range(col, n):
            if a[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            raise SingularMatrix("linear system is singular")
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
        pivot = a[col][col]
        if pivot != 1:
            inv = Fraction(1) / pivot
            a[col] = [x * inv for x in a[col]]
        prow = a[col]
        for r in range(n):
            if r == col:
                continue
            factor = a[r][col]
            if factor:
                arow = a[r]
                for c in range(col, n + 1):
                    arow[c] -= factor * prow[c]
    return [a[i][n] for i in range(n)]
