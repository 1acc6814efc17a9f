"""Dense matrices and kernels over the rational or big-float field."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .scalar import RATIONAL, Backend

__all__ = ["Matrix", "DegenerateSystem", "nullspace", "rank"]


class DegenerateSystem(ValueError):
    pass


@dataclass(frozen=True)
class Matrix:
    """Row-major dense matrix."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows * self.cols != len(self.entries):
            raise ValueError(
                f"matrix shape {self.rows}x{self.cols} does not match {len(self.entries)} entries")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> Matrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]

    def apply(self, v: Sequence) -> list:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum((a * b for a, b in zip(self.row(i), v)), 0 * v[0] if v else 0)
                for i in range(self.rows)]

    def transpose(self) -> Matrix:
        return Matrix.from_rows([[self[i, j] for i in range(self.rows)] for j in range(self.cols)],
                                cols=self.rows)


def _rref(M: Matrix, backend: Backend):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    a = [[backend.convert(x) if not backend.exact else Fraction(x) for x in r]
         for r in M.to_rows()]
    tol = backend.rank_tolerance()
    # per-row scale for the relative pivot test
    scale = [max((abs(x) for x in r), default=0) for r in a]
    pivots: list[int] = []
    r = 0
    for c in range(M.cols):
        if r == M.rows:
            break
        if backend.exact:
            p = next((i for i in range(r, M.rows) if a[i][c] != 0), None)
        else:
            best, p = 0, None
            for i in range(r, M.rows):
                v = abs(a[i][c])
                if scale[i] and v > tol * scale[i] and v > best:
                    best, p = v, i
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        scale[r], scale[p] = scale[p], scale[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(M.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                if not backend.exact:
                    a[i][c] = 0 * f
        pivots.append(c)
        r += 1
    return a, pivots


def rank(M: Matrix, backend: Backend = RATIONAL) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    return len(_rref(M, backend)[1])


def nullspace(M: Matrix, backend: Backend = RATIONAL) -> list[list]:
    """Basis of ker M, each vector with its first nonzero entry equal to 1.

    Rank decisions in the big-float backend treat a pivot as zero when it is
    below ``backend.rank_tolerance()`` relative to the largest entry of its
    row.
    """
    if M.rows == 0 or M.cols == 0:
        raise DegenerateSystem("degenerate system")
    a, pivots = _rref(M, backend)
    free = [c for c in range(M.cols) if c not in pivots]
    one, zero = backend.one(), backend.zero()
    basis = []
    for f in free:
        v = [zero] * M.cols
        v[f] = one
        for r, pc in enumerate(pivots):
            v[pc] = -a[r][f]
        if backend.exact:
            lead = next(x for x in v if x != 0)
        else:
            big = max(abs(x) for x in v)
            lead = next(x for x in v if abs(x) > backend.rank_tolerance() * big)
        basis.append([x / lead for x in v])
    return basis
