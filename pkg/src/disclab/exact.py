"""Exact integer linear algebra on small dense matrices.

Everything here works on Python ints, so entries and determinants never
overflow or round.  Rationals use :class:`fractions.Fraction`.
"""

from __future__ import annotations

import itertools
import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    IndexOutOfRange,
    NotSquare,
    ParseError,
    TargetSmallerThanSource,
)

BigRational = Fraction


class IntMatrix:
    """Immutable dense integer matrix stored row-major."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        entries = tuple(operator.index(v) for v in entries)
        if rows < 1 or cols < 1:
            raise ValueError(f"matrix must be at least 1x1, got {rows}x{cols}")
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self._hash = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix must be at least 1x1")
        width = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != width:
                raise ValueError(f"ragged row {i}: {len(r)} entries, expected {width}")
        return cls(len(rows), width, itertools.chain.from_iterable(rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [int(i == j) for i in range(n) for j in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexOutOfRange(f"index {ij} outside {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         (self.entries[i * self.cols + j]
                          for j in range(self.cols) for i in range(self.rows)))

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return IntMatrix(self.rows, self.cols,
                         (a - b for a, b in zip(self.entries, other.entries)))

    def __repr__(self):
        return f"IntMatrix({self.to_rows()!r})"

    def is_binary(self) -> bool:
        return all(v in (0, 1) for v in self.entries)

    def matvec(self, x: Sequence[int]) -> list[int]:
        if len(x) != self.cols:
            raise ValueError(f"vector length {len(x)} != {self.cols} columns")
        return [sum(a * b for a, b in zip(self.row(i), x) if a) for i in range(self.rows)]


@dataclass(frozen=True)
class SubmatrixIndex:
    row_ids: tuple[int, ...]
    col_ids: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "row_ids", tuple(self.row_ids))
        object.__setattr__(self, "col_ids", tuple(self.col_ids))
        for name, ids in (("row_ids", self.row_ids), ("col_ids", self.col_ids)):
            if not ids:
                raise ValueError(f"{name} must be nonempty")
            if any(b <= a for a, b in zip(ids, ids[1:])):
                raise ValueError(f"{name} must be sorted and distinct: {ids}")

    def check_within(self, A: IntMatrix) -> None:
        if self.row_ids[0] < 0 or self.row_ids[-1] >= A.rows:
            raise IndexOutOfRange(f"row ids {self.row_ids} outside 0..{A.rows - 1}")
        if self.col_ids[0] < 0 or self.col_ids[-1] >= A.cols:
            raise IndexOutOfRange(f"col ids {self.col_ids} outside 0..{A.cols - 1}")


def submatrix(A: IntMatrix, idx: SubmatrixIndex) -> IntMatrix:
    idx.check_within(A)
    return IntMatrix(len(idx.row_ids), len(idx.col_ids),
                     (A.entries[i * A.cols + j] for i in idx.row_ids for j in idx.col_ids))


def select_columns(A: IntMatrix, cols: Sequence[int]) -> IntMatrix:
    return submatrix(A, SubmatrixIndex(tuple(range(A.rows)), tuple(cols)))


def kronecker(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    """Kronecker product; block (i, j) of the result is ``A[i, j] * B``."""
    rows = []
    for i in range(A.rows):
        a_row = A.row(i)
        for p in range(B.rows):
            b_row = B.row(p)
            rows.append([a * b for a in a_row for b in b_row])
    return IntMatrix.from_rows(rows)


def pad_zeros(A: IntMatrix, m: int, n: int) -> IntMatrix:
    """Place ``A`` in the top-left corner of an ``m x n`` zero matrix."""
    if m < A.rows or n < A.cols:
        raise TargetSmallerThanSource(f"cannot pad {A.rows}x{A.cols} into {m}x{n}")
    extra = [0] * (n - A.cols)
    rows = [list(A.row(i)) + extra for i in range(A.rows)]
    rows += [[0] * n for _ in range(m - A.rows)]
    return IntMatrix.from_rows(rows)


def vstack(*mats: IntMatrix) -> IntMatrix:
    width = mats[0].cols
    if any(M.cols != width for M in mats):
        raise ValueError("vstack needs equal column counts")
    return IntMatrix(sum(M.rows for M in mats), width,
                     itertools.chain.from_iterable(M.entries for M in mats))


def _bareiss(a: list[list[int]]) -> int:
    """Fraction-free elimination with full pivoting; destroys ``a``."""
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        # full pivoting: smallest nonzero magnitude keeps intermediates small
        pivot = None
        for i in range(k, n):
            row = a[i]
            for j in range(k, n):
                v = row[j]
                if v and (pivot is None or abs(v) < pivot[0]):
                    pivot = (abs(v), i, j)
        if pivot is None:
            return 0
        _, pi, pj = pivot
        if pi != k:
            a[k], a[pi] = a[pi], a[k]
            sign = -sign
        if pj != k:
            for row in a:
                row[k], row[pj] = row[pj], row[k]
            sign = -sign
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (akk * ri[j] - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def det_rows(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square list-of-rows matrix."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        (a, b), (c, d) = rows
        return a * d - b * c
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return _bareiss([list(r) for r in rows])


def det_exact(M: IntMatrix) -> int:
    if M.rows != M.cols:
        raise NotSquare(f"determinant needs a square matrix, got {M.rows}x{M.cols}")
    return det_rows(M.to_rows())


def det_cofactor(M: IntMatrix) -> int:
    """Laplace expansion along the first row; exponential, for cross-checks only."""
    if M.rows != M.cols:
        raise NotSquare(f"determinant needs a square matrix, got {M.rows}x{M.cols}")

    def expand(rows):
        if len(rows) == 1:
            return rows[0][0]
        total = 0
        for j, v in enumerate(rows[0]):
            if v:
                minor = [r[:j] + r[j + 1:] for r in rows[1:]]
                total += (-1) ** j * v * expand(minor)
        return total

    return expand(M.to_rows())


def root_power_compare(a: int, j: int, b: int, k: int) -> int:
    """Compare ``|a|**(1/j)`` with ``|b|**(1/k)`` exactly.

    Returns -1, 0 or 1 like a classic ``cmp``.
    """
    if j < 1 or k < 1:
        raise ValueError("root orders must be >= 1")
    lhs = abs(a) ** k
    rhs = abs(b) ** j
    return (lhs > rhs) - (lhs < rhs)


def root_value(det: int, k: int) -> float:
    """Float ``|det|**(1/k)`` for reporting; safe for huge ints."""
    if det == 0:
        return 0.0
    return math.exp(math.log(abs(det)) / k)


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def format_csv(A: IntMatrix) -> str:
    return "".join(",".join(str(v) for v in A.row(i)) + "\n" for i in range(A.rows))


def parse_csv(text: str) -> IntMatrix:
    """Parse the shared matrix format: signed decimal integers, no header."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        try:
            rows.append([int(tok.strip(), 10) for tok in line.split(",")])
        except ValueError:
            raise ParseError(f"line {lineno}: not a comma-separated integer row: {line!r}") from None
        if len(rows[-1]) != len(rows[0]):
            raise ParseError(f"line {lineno}: ragged row ({len(rows[-1])} vs {len(rows[0])} entries)")
    if not rows:
        raise ParseError("empty matrix")
    return IntMatrix.from_rows(rows)
