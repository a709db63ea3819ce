"""Dense exact matrices over Fraction/Cyclotomic scalars.

Rank, determinant, and kernel come from fraction-free (Bareiss-style)
forward elimination: every division is by a previous pivot and is exact,
which bounds coefficient growth without floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .errors import NonInvertibleError, UsageError
from .scalars import Scalar, scalar_is_zero

ZERO = Fraction(0)
ONE = Fraction(1)


class ExactMatrix:
    """Row-major dense matrix of exact scalars."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Sequence[Scalar]):
        assert rows >= 0 and cols >= 0
        assert len(data) == rows * cols, "entries.length must equal rows*cols"
        self.rows = rows
        self.cols = cols
        self.data = list(data)

    @staticmethod
    def from_rows(rows: Sequence[Sequence[Scalar]]) -> "ExactMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat: list[Scalar] = []
        for row in rows:
            assert len(row) == c
            flat.extend(row)
        return ExactMatrix(r, c, flat)

    @staticmethod
    def identity(n: int) -> "ExactMatrix":
        m = ExactMatrix.zeros(n, n)
        for i in range(n):
            m.data[i * n + i] = ONE
        return m

    @staticmethod
    def zeros(rows: int, cols: int) -> "ExactMatrix":
        return ExactMatrix(rows, cols, [ZERO] * (rows * cols))

    def __getitem__(self, key: tuple[int, int]) -> Scalar:
        i, j = key
        return self.data[i * self.cols + j]

    def __setitem__(self, key: tuple[int, int], value: Scalar) -> None:
        i, j = key
        self.data[i * self.cols + j] = value

    def row(self, i: int) -> list[Scalar]:
        return self.data[i * self.cols : (i + 1) * self.cols]

    def copy(self) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, list(self.data))

    def transpose(self) -> "ExactMatrix":
        out = ExactMatrix.zeros(self.cols, self.rows)
        for i in range(self.rows):
            for j in range(self.cols):
                out.data[j * self.rows + i] = self.data[i * self.cols + j]
        return out

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        assert (self.rows, self.cols) == (other.rows, other.cols)
        return ExactMatrix(
            self.rows, self.cols, [a + b for a, b in zip(self.data, other.data)]
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        assert (self.rows, self.cols) == (other.rows, other.cols)
        return ExactMatrix(
            self.rows, self.cols, [a - b for a, b in zip(self.data, other.data)]
        )

    def scale(self, s: Scalar) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, [s * a for a in self.data])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise UsageError(
                f"matmul dimension mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}"
            )
        out = ExactMatrix.zeros(self.rows, other.cols)
        oc = other.cols
        for i in range(self.rows):
            base = i * self.cols
            for k in range(self.cols):
                a = self.data[base + k]
                if scalar_is_zero(a):
                    continue
                obase = k * oc
                tbase = i * oc
                for j in range(oc):
                    b = other.data[obase + j]
                    if not scalar_is_zero(b):
                        out.data[tbase + j] = out.data[tbase + j] + a * b
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(a == b for a, b in zip(self.data, other.data))

    __hash__ = None

    def is_zero(self) -> bool:
        return all(scalar_is_zero(a) for a in self.data)

    def trace(self) -> Scalar:
        assert self.rows == self.cols
        t: Scalar = ZERO
        for i in range(self.rows):
            t = t + self.data[i * self.cols + i]
        return t

    def map(self, f: Callable[[Scalar], Scalar]) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, [f(a) for a in self.data])

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols})"


class RankDetKernel:
    """Result record of mat_rank_det_kernel; det only exists for square input.

    kernel_basis is a list of length-cols coordinate lists spanning the
    right kernel.
    """

    def __init__(self, rank: int, det_value: Scalar | None, kernel_basis: list[list[Scalar]]):
        self.rank = rank
        self._det = det_value
        self.kernel_basis = kernel_basis

    @property
    def det(self) -> Scalar:
        if self._det is None:
            raise UsageError("determinant requested on non-square matrix")
        return self._det


def _bareiss_forward(m: ExactMatrix) -> tuple[ExactMatrix, list[tuple[int, int]], int]:
    """Fraction-free forward elimination; returns echelon copy, pivots, swap sign."""
    a = m.copy()
    pivots: list[tuple[int, int]] = []
    sign = 1
    prev: Scalar = ONE
    r = 0
    for col in range(a.cols):
        pivot_row = -1
        for i in range(r, a.rows):
            if not scalar_is_zero(a[i, col]):
                pivot_row = i
                break
        if pivot_row < 0:
            continue
        if pivot_row != r:
            for j in range(a.cols):
                a[r, j], a[pivot_row, j] = a[pivot_row, j], a[r, j]
            sign = -sign
        p = a[r, col]
        for i in range(r + 1, a.rows):
            head = a[i, col]
            for j in range(col, a.cols):
                # one-step Bareiss update; division by prev is exact
                num = p * a[i, j] - head * a[r, j]
                a[i, j] = num / prev
            a[i, col] = ZERO
        pivots.append((r, col))
        prev = p
        r += 1
        if r == a.rows:
            break
    return a, pivots, sign


def mat_rank_det_kernel(m: ExactMatrix) -> RankDetKernel:
    """Exact rank, determinant (square case), and kernel basis of m."""
    ech, pivots, sign = _bareiss_forward(m)
    rank = len(pivots)
    det_value: Scalar | None = None
    if m.rows == m.cols:
        if rank < m.rows:
            det_value = ZERO
        else:
            p = ech[pivots[-1][0], pivots[-1][1]] if pivots else ONE
            det_value = p if sign > 0 else -p
    pivot_cols = [c for _, c in pivots]
    free_cols = [c for c in range(m.cols) if c not in pivot_cols]
    kernel: list[list[Scalar]] = []
    for f in free_cols:
        v: list[Scalar] = [ZERO] * m.cols
        v[f] = ONE
        for k in range(rank - 1, -1, -1):
            row_idx, col = pivots[k]
            s: Scalar = ZERO
            for j in range(col + 1, m.cols):
                x = ech[row_idx, j]
                if not scalar_is_zero(x) and not scalar_is_zero(v[j]):
                    s = s + x * v[j]
            v[col] = (-s) / ech[row_idx, col]
        kernel.append(v)
    return RankDetKernel(rank, det_value, kernel)


def solve(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Solve a @ x = b exactly (b may have several columns).

    Raises NonInvertibleError when the system is singular/inconsistent,
    with the failing pivot column as witness.
    """
    if a.rows != b.rows:
        raise UsageError(f"solve dimension mismatch: {a.rows} vs {b.rows}")
    n, m = a.rows, a.cols
    aug = ExactMatrix.zeros(n, m + b.cols)
    for i in range(n):
        for j in range(m):
            aug[i, j] = a[i, j]
        for j in range(b.cols):
            aug[i, m + j] = b[i, j]
    # ordinary exact Gauss-Jordan (entries are field elements)
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(m):
        pr = -1
        for i in range(r, n):
            if not scalar_is_zero(aug[i, col]):
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(m + b.cols):
                aug[r, j], aug[pr, j] = aug[pr, j], aug[r, j]
        inv = aug[r, col]
        for j in range(col, m + b.cols):
            aug[r, j] = aug[r, j] / inv
        for i in range(n):
            if i != r and not scalar_is_zero(aug[i, col]):
                f = aug[i, col]
                for j in range(col, m + b.cols):
                    aug[i, j] = aug[i, j] - f * aug[r, j]
        pivots.append((r, col))
        r += 1
    # consistency of dropped rows
    for i in range(r, n):
        for j in range(b.cols):
            if not scalar_is_zero(aug[i, m + j]):
                raise NonInvertibleError(f"inconsistent system at row {i}")
    if len(pivots) < m:
        missing = [c for c in range(m) if c not in [c0 for _, c0 in pivots]]
        raise NonInvertibleError(f"singular system: no pivot in columns {missing}")
    x = ExactMatrix.zeros(m, b.cols)
    for (ri, col) in pivots:
        for j in range(b.cols):
            x[col, j] = aug[ri, m + j]
    return x


def inverse(a: ExactMatrix) -> ExactMatrix:
    assert a.rows == a.cols
    return solve(a, ExactMatrix.identity(a.rows))
