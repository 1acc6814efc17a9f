"""Series-matching route to the mixed-type conditions, used as an oracle.

Each Markov entry ``S^_{j,k}`` is built as a rational function, multiplied
by ``z^r`` and expanded at infinity; equation ``(j, nu)`` collects the
coefficients of ``z^{-nu-1}``. The result must agree with the moment matrix.
"""

from __future__ import annotations

from ..exactnum import Matrix, RationalFunction, nullspace
from .indices import CombinedIndex
from .solvers import CompatiblePair

__all__ = ["markov_entry_rational", "series_matrix", "series_kernel"]


def markov_entry_rational(pair: CompatiblePair, j: int, k: int) -> RationalFunction:
    """``S^_{j,k}`` with atom weights taken from the tails' rational forms."""
    xs = pair.root.positions
    one = pair.backend.one()
    u = [one] * len(xs) if j == 0 else [pair.S2.rational(1, j)(x) for x in xs]
    v = [one] * len(xs) if k == 0 else [pair.S1.rational(1, k)(x) for x in xs]
    ws = [w * a * b for w, a, b in zip(pair.root.weights, u, v)]
    return pair.root.as_rational(ws)


def series_matrix(pair: CompatiblePair, n: CombinedIndex) -> Matrix:
    cache: dict = {}
    rows = []
    for j in range(len(n.n2)):
        for nu in range(n.n2[j]):
            row = []
            for k in range(len(n.n1)):
                if (j, k) not in cache:
                    cache[(j, k)] = markov_entry_rational(pair, j, k)
                f = cache[(j, k)]
                for r in range(n.n1[k]):
                    shifted = RationalFunction(f.num.shift(r), f.den)
                    row.append(shifted.laurent(nu + 1)[nu])
            rows.append(row)
    return Matrix.from_rows(rows, cols=n.n1.norm)


def series_kernel(pair: CompatiblePair, n: CombinedIndex) -> list[list]:
    if n.n2.norm == 0:
        b = pair.backend
        size = n.n1.norm
        return [[b.one() if i == c else b.zero() for i in range(size)] for c in range(size)]
    return nullspace(series_matrix(pair, n), pair.backend)

