"""Dense matrices over the rational-function field.

Solving is fraction-free: rows are cleared to polynomial form and eliminated
Bareiss-style (each step divides exactly by the previous pivot), which keeps
intermediate degrees linear instead of exponential.  The local Smith routine
works over the localization of Q[s] at a chosen point and reads off the
(s - s0)-adic valuations of the elementary divisors.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import (
    InconsistentSystemError,
    PreconditionError,
    SingularMatrixError,
)
from .poly import ONE, Poly, Scalar, poly_lcm
from .ratfunc import RF_ZERO, RatFunc, rf


class RFMatrix:
    """Immutable dense matrix of rational functions."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable]):
        grid = tuple(tuple(rf(e) for e in row) for row in entries)
        if grid:
            width = len(grid[0])
            if any(len(row) != width for row in grid):
                raise PreconditionError("ragged rows in matrix constructor")
        else:
            width = 0
        self.entries = grid
        self.rows = len(grid)
        self.cols = width

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RFMatrix":
        return cls([[RF_ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "RFMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, values: Sequence) -> "RFMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "RFMatrix":
        if not columns:
            return cls([])
        height = len(columns[0])
        return cls([[col[i] for col in columns] for i in range(height)])

    @classmethod
    def hstack(cls, blocks: Sequence["RFMatrix"]) -> "RFMatrix":
        if not blocks:
            return cls([])
        rows = blocks[0].rows
        if any(b.rows != rows for b in blocks):
            raise PreconditionError("hstack blocks must share a row count")
        return cls([sum((list(b.entries[i]) for b in blocks), []) for i in range(rows)])

    # -- access ------------------------------------------------------------------

    def __getitem__(self, key: tuple[int, int]) -> RatFunc:
        i, j = key
        return self.entries[i][j]

    def row(self, i: int) -> tuple[RatFunc, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[RatFunc, ...]:
        return tuple(row[j] for row in self.entries)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "RFMatrix":
        return RFMatrix([[self.entries[i][j] for j in col_idx] for i in row_idx])

    def map_entries(self, fn: Callable[[RatFunc], RatFunc]) -> "RFMatrix":
        return RFMatrix([[fn(e) for e in row] for row in self.entries])

    def transpose(self) -> "RFMatrix":
        return RFMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    # -- arithmetic -----------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RFMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __add__(self, other: "RFMatrix") -> "RFMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise PreconditionError("matrix addition shape mismatch")
        return RFMatrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "RFMatrix") -> "RFMatrix":
        return self + other.map_entries(lambda e: -e)

    def __mul__(self, other):
        if isinstance(other, RFMatrix):
            if self.cols != other.rows:
                raise PreconditionError(
                    f"matrix product shape mismatch: {self.cols} vs {other.rows}"
                )
            cols = other.transpose().entries
            return RFMatrix(
                [
                    [
                        sum((a * b for a, b in zip(row, col)), RF_ZERO)
                        for col in cols
                    ]
                    for row in self.entries
                ]
            )
        return self.map_entries(lambda e: e * rf(other))

    def __rmul__(self, other):
        return self.map_entries(lambda e: rf(other) * e)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def rank(self) -> int:
        """Rank over the function field (plain Gaussian elimination)."""
        work = [list(row) for row in self.entries]
        rank = 0
        for col in range(self.cols):
            pivot = next((i for i in range(rank, self.rows) if work[i][col]), None)
            if pivot is None:
                continue
            work[rank], work[pivot] = work[pivot], work[rank]
            inv = work[rank][col].inverse()
            work[rank] = [e * inv for e in work[rank]]
            for i in range(self.rows):
                if i != rank and work[i][col]:
                    f = work[i][col]
                    work[i] = [a - f * b for a, b in zip(work[i], work[rank])]
            rank += 1
            if rank == self.rows:
                break
        return rank

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"RFMatrix[{self.rows}x{self.cols}: {body}]"


def _cleared_rows(matrix: RFMatrix, rhs: Sequence[RatFunc]) -> list[list[Poly]]:
    """Augmented rows [M | b] with denominators cleared row by row."""
    out = []
    for i in range(matrix.rows):
        row = list(matrix.entries[i]) + [rhs[i]]
        common = ONE
        for e in row:
            common = poly_lcm(common, e.den)
        out.append([e.num * (common // e.den) for e in row])
    return out


def linsolve(matrix: RFMatrix, rhs: Sequence) -> tuple[RatFunc, ...]:
    """Solve M x = b for a full-column-rank M, exactly.

    Overdetermined consistent systems are fine; a missing pivot raises
    SingularMatrixError and an unsolvable equation raises
    InconsistentSystemError, so the two failure modes stay distinguishable.
    """
    rhs = [rf(b) for b in rhs]
    if len(rhs) != matrix.rows:
        raise PreconditionError("right-hand side length does not match the matrix")
    n, c = matrix.rows, matrix.cols
    if n < c:
        raise SingularMatrixError(f"underdetermined shape {n}x{c}: rank below {c}")
    aug = _cleared_rows(matrix, rhs)
    prev = ONE
    for col in range(c):
        pivot_row = next((i for i in range(col, n) if not aug[i][col].is_zero()), None)
        if pivot_row is None:
            raise SingularMatrixError(f"no pivot in column {col}: matrix is rank-deficient")
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        pivot = aug[col][col]
        for i in range(col + 1, n):
            head = aug[i][col]
            row = aug[i]
            for j in range(col + 1, c + 1):
                row[j] = (pivot * row[j] - head * aug[col][j]) // prev
            row[col] = Poly()
        prev = pivot
    for i in range(c, n):
        if not aug[i][c].is_zero():
            raise InconsistentSystemError("system has no solution: residual row is nonzero")
    solution: list[RatFunc] = [RF_ZERO] * c
    for i in range(c - 1, -1, -1):
        acc = RatFunc(aug[i][c])
        for j in range(i + 1, c):
            acc = acc - RatFunc(aug[i][j]) * solution[j]
        solution[i] = acc / RatFunc(aug[i][i])
    return tuple(solution)


def clear_local_poles(matrix: RFMatrix, s0: Scalar) -> tuple[RFMatrix, int]:
    """Multiply by the least power of (s - s0) making every entry regular there.

    Returns the cleared matrix and the power used (0 if already regular).
    """
    s0 = Fraction(s0)
    worst = 0
    for row in matrix.entries:
        for e in row:
            v = e.valuation(s0)
            if v is not math.inf and v < worst:
                worst = v
    if worst == 0:
        return matrix, 0
    power = -worst
    factor = RatFunc(Poly((-s0, Fraction(1)))) ** power
    return matrix.map_entries(lambda e: e * factor), power


def smith_local_valuations(matrix: RFMatrix, s0: Scalar) -> tuple[int, ...]:
    """(s - s0)-adic valuations of the elementary divisors, ascending.

    Entries must be regular at s0 (clear poles first with clear_local_poles);
    the pivot of minimal valuation is a unit times a power of (s - s0) in the
    local ring, so every elimination step stays inside that ring.
    """
    if matrix.rows != matrix.cols:
        raise PreconditionError("local Smith form needs a square matrix")
    s0 = Fraction(s0)
    n = matrix.rows
    work = [list(row) for row in matrix.entries]
    for row in work:
        for e in row:
            if e and e.valuation(s0) < 0:
                raise PreconditionError(
                    f"entry {e} has a pole at s = {s0}; clear denominators first"
                )
    vals: list[int] = []
    for k in range(n):
        best: tuple[int, int, int] | None = None
        for i in range(k, n):
            for j in range(k, n):
                e = work[i][j]
                if not e:
                    continue
                v = e.valuation(s0)
                if best is None or v < best[0]:
                    best = (v, i, j)
        if best is None:
            raise SingularMatrixError(
                "matrix is singular as a rational-function matrix; "
                "its determinant vanishes identically"
            )
        v, bi, bj = best
        work[k], work[bi] = work[bi], work[k]
        for row in work:
            row[k], row[bj] = row[bj], row[k]
        pivot = work[k][k]
        for i in range(k + 1, n):
            if work[i][k]:
                f = work[i][k] / pivot
                work[i] = [a - f * b for a, b in zip(work[i], work[k])]
        for j in range(k + 1, n):
            work[k][j] = RF_ZERO
        vals.append(v)
    vals.sort()
    return tuple(vals)
