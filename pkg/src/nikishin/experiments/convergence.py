"""Convergence of type II approximants ``P_{n,k}/Q_n`` to ``s^_{0,k}`` on a grid.

Errors are computed in the system's own arithmetic (exact for rational
systems) and only the logarithms used by the trend fit are floating point.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..exactnum import format_rational
from ..hermitepade import solve_type2
from ..hermitepade.indices import MultiIndex, step_line
from ..measures import NikishinSystem
from ..parallel import parallel_map

__all__ = ["ConvergenceRow", "ConvergenceTable", "default_grid", "stieltjes_convergence",
           "balanced_sequence", "log_slope"]


def default_grid(lo, hi, count: int = 21, backend=None) -> list:
    """``count`` equispaced points on ``[lo, hi]`` (rational when the ends are)."""
    lo, hi = Fraction(lo), Fraction(hi)
    pts = [lo + (hi - lo) * i / (count - 1) for i in range(count)]
    if backend is not None and not backend.exact:
        return [backend.convert(p) for p in pts]
    return pts


def balanced_sequence(parts: int, max_norm: int, first: int = 1) -> list[MultiIndex]:
    """Step-line ``(1,0,..), (1,1,..), ...`` from norm ``first`` up to ``max_norm``."""
    return step_line(parts, max_norm - first + 1, first)


def _log(x) -> float:
    """Natural log of a positive exact or big-float number without underflow."""
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return math.log(x.numerator) - math.log(x.denominator)
    import mpmath
    return float(mpmath.log(x))


def _sci(x) -> str:
    """Scientific notation that survives magnitudes far below the float range."""
    if not x:
        return "0"
    lg = _log(x) / math.log(10)
    e = math.floor(lg)
    return f"{10 ** (lg - e):.6f}e{e:+d}"


def log_slope(norms: Sequence[int], errors: Sequence) -> float | None:
    """Least-squares slope of ``log(error)`` against ``|n|``; zero errors are skipped."""
    pts = [(n, _log(e)) for n, e in zip(norms, errors) if e is not None and e > 0]
    if len(pts) < 2:
        return None
    mx = sum(p[0] for p in pts) / len(pts)
    my = sum(p[1] for p in pts) / len(pts)
    sxx = sum((p[0] - mx) ** 2 for p in pts)
    if sxx == 0:
        return None
    return sum((p[0] - mx) * (p[1] - my) for p in pts) / sxx


@dataclass
class ConvergenceRow:
    index: MultiIndex
    norm: int
    errors: list
    finding: str = ""

    @property
    def sup_error(self):
        vals = [e for e in self.errors if e is not None]
        return max(vals) if vals else None


@dataclass
class ConvergenceTable:
    rows: list
    grid: list
    slope: float | None = None
    notes: list = field(default_factory=list)

    @property
    def norms(self) -> list[int]:
        return [r.norm for r in self.rows]

    @property
    def sup_errors(self) -> list:
        return [r.sup_error for r in self.rows]

    def non_increasing(self, from_norm: int = 1) -> bool:
        errs = [r.sup_error for r in self.rows if r.norm >= from_norm]
        return all(b <= a for a, b in zip(errs, errs[1:]))

    def strictly_decreasing(self, from_norm: int = 1) -> bool:
        errs = [r.sup_error for r in self.rows if r.norm >= from_norm]
        return all(b < a for a, b in zip(errs, errs[1:]))

    def to_json(self) -> dict:
        return {
            "grid": [format_rational(x) for x in self.grid],
            "slope": self.slope,
            "notes": self.notes,
            "rows": [{
                "index": r.index.to_list(),
                "norm": r.norm,
                "errors": [None if e is None else format_rational(e) for e in r.errors],
                "sup_error": None if r.sup_error is None else format_rational(r.sup_error),
                "log10_sup_error": None if not r.sup_error else _log(r.sup_error) / math.log(10),
                "finding": r.finding,
            } for r in self.rows],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        k = len(self.rows[0].errors) if self.rows else 0
        w.writerow(["index", "norm"] + [f"err_{i}" for i in range(k)] + ["log10_sup_error"])
        for r in self.rows:
            sup = r.sup_error
            w.writerow([" ".join(map(str, r.index.to_list())), r.norm]
                       + ["" if e is None else _sci(e) for e in r.errors]
                       + ["" if not sup else f"{_log(sup) / math.log(10):.6f}"])
        return buf.getvalue()

    def to_gnuplot(self) -> str:
        """Two columns, ``|n|`` and ``log10`` of the sup-error; zero errors are commented out."""
        lines = ["# norm log10_sup_error"]
        for r in self.rows:
            sup = r.sup_error
            if sup:
                lines.append(f"{r.norm} {_log(sup) / math.log(10):.6f}")
            else:
                lines.append(f"# {r.norm} exact")
        return "\n".join(lines) + "\n"


def _row(system: NikishinSystem, n: MultiIndex, grid: Sequence, enforce_budget: bool) -> ConvergenceRow:
    sol = solve_type2(system, n, enforce_budget=enforce_budget)
    errors = []
    finding = ""
    for k in range(system.end + 1):
        target = system.rational(0, k)
        worst = None
        for x in grid:
            q = sol.Q(x)
            if q == 0:
                finding = f"Q vanishes at grid point {format_rational(x)}"
                continue
            e = abs(sol.P[k](x) / q - target(x))
            worst = e if worst is None or e > worst else worst
        errors.append(worst)
    return ConvergenceRow(n, n.norm, errors, finding)


def stieltjes_convergence(system: NikishinSystem, seq: Sequence, grid: Sequence,
                          workers: int = 1, enforce_budget: bool = True,
                          fit_from: int = 1) -> ConvergenceTable:
    """Sup-errors of ``P_{n,k}/Q_n - s^_{0,k}`` over ``grid`` for each index in ``seq``.

    ``system`` must start at label 0 (the root measure). The slope is fitted
    to ``log(sup-error)`` over rows with ``|n| >= fit_from``.
    """
    if system.start != 0:
        raise ValueError("system must start at the root measure (label 0)")
    seq = sorted((MultiIndex(n) for n in seq), key=lambda n: n.norm)
    root = system.measure(0)
    grid = [system.backend.convert(x) for x in grid]
    for x in grid:
        if root.lo <= x <= root.hi:
            raise ValueError(f"grid point {format_rational(x)} lies on the root hull")
    rows = parallel_map(lambda n: _row(system, n, grid, enforce_budget), seq, workers)
    table = ConvergenceTable(rows, grid)
    fit = [r for r in rows if r.norm >= fit_from]
    table.slope = log_slope([r.norm for r in fit], [r.sup_error for r in fit])
    table.notes = [r.finding for r in rows if r.finding]
    return table
