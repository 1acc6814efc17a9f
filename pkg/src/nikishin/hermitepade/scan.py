"""Perfectness scans, diagonal interlacing and biorthogonal sequences."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..exactnum import format_rational, to_fraction
from ..parallel import parallel_map
from ..rootloc import LinearForm, interlacing_check, zeros_in_hull
from .indices import CombinedIndex, MultiIndex, check_complete, combined_indices, diagonal_sequence
from .solvers import (CompatiblePair, NormalityReport, VectorPolynomialSolution,
                      normality_check, orthogonality_residuals, solve_mixed)

__all__ = ["ScanEntry", "ScanReport", "perfectness_scan", "diagonal_interlacing",
           "GramTable", "biorthogonal_sequences", "residual_ok"]


def residual_ok(total, scale, backend) -> bool:
    """Exact zero (rational) or below ``2^(16-p)`` relative to the sum of |terms|."""
    if backend.exact:
        return total == 0
    return abs(total) <= backend.residual_tolerance() * max(scale, backend.one())


@dataclass
class ScanEntry:
    index: CombinedIndex
    a: list
    normality: NormalityReport
    zero_count: int | None = None
    zeros_simple: bool | None = None
    endpoint_zero: bool = False
    residuals_ok: bool = True
    max_residual: object = 0

    @property
    def zeros_ok(self) -> bool:
        return (self.zero_count == self.index.n2.norm and bool(self.zeros_simple)
                and not self.endpoint_zero)

    def to_json(self) -> dict:
        return {
            "index": self.index.to_json(),
            "label": str(self.index),
            "degrees": self.normality.degrees,
            "kernel_dim": self.normality.kernel_dim,
            "normal": self.normality.normal,
            "zeros_in_hull": self.zero_count,
            "zeros_expected": self.index.n2.norm,
            "zeros_simple": self.zeros_simple,
            "endpoint_zero": self.endpoint_zero,
            "orthogonality_ok": self.residuals_ok,
            "max_residual": format_rational(self.max_residual),
            "a": [p.to_strings() for p in self.a],
        }


@dataclass
class ScanReport:
    entries: list
    budget: int
    m1: int
    m2: int
    backend: str
    interlacing: list = field(default_factory=list)

    @property
    def all_normal(self) -> bool:
        return all(e.normality.normal for e in self.entries)

    @property
    def all_kernel_one(self) -> bool:
        return all(e.normality.kernel_dim == 1 for e in self.entries)

    @property
    def zeros_ok(self) -> bool:
        return all(e.zeros_ok for e in self.entries)

    @property
    def orthogonality_ok(self) -> bool:
        return all(e.residuals_ok for e in self.entries)

    @property
    def interlacing_ok(self) -> bool:
        return all(ok for _, _, ok, _ in self.interlacing)

    @property
    def passed(self) -> bool:
        return (self.all_normal and self.all_kernel_one and self.zeros_ok
                and self.orthogonality_ok and self.interlacing_ok)

    def summary(self) -> dict:
        return {
            "indices": len(self.entries),
            "all_normal": self.all_normal,
            "all_kernel_dim_one": self.all_kernel_one,
            "zeros_exact_count_simple_interior": self.zeros_ok,
            "orthogonality_residuals_ok": self.orthogonality_ok,
            "interlacing_pairs": len(self.interlacing),
            "interlacing_ok": self.interlacing_ok,
            "passed": self.passed,
        }

    def to_json(self) -> dict:
        return {
            "budget": self.budget, "m1": self.m1, "m2": self.m2, "backend": self.backend,
            "summary": self.summary(),
            "entries": [e.to_json() for e in self.entries],
            "interlacing": [{"from": str(a), "to": str(b), "ok": ok, "finding": f}
                            for a, b, ok, f in self.interlacing],
        }


def root_hull(pair: CompatiblePair):
    return (to_fraction(pair.root.lo), to_fraction(pair.root.hi))


def _scan_one(pair: CompatiblePair, n: CombinedIndex, zeros: bool) -> ScanEntry:
    sol = solve_mixed(pair, n)
    rep = normality_check(sol)
    entry = ScanEntry(n, sol.a, rep)
    worst = pair.backend.zero()
    ok = True
    for _, _, total, scale in orthogonality_residuals(sol):
        if not residual_ok(total, scale, pair.backend):
            ok = False
        rel = abs(total) if pair.backend.exact else abs(total) / max(scale, pair.backend.one())
        worst = max(worst, rel)
    entry.residuals_ok = ok
    entry.max_residual = worst
    if zeros:
        z = zeros_in_hull(sol.linear_form(), root_hull(pair), isolate=False)
        entry.zero_count = z.count_in_hull
        entry.zeros_simple = z.all_simple
        entry.endpoint_zero = z.endpoint_zero
    return entry


def diagonal_interlacing(pair: CompatiblePair, budget: int, solutions: dict | None = None) -> list:
    """Interlacing verdicts for consecutive indices on the balanced diagonal."""
    seq = diagonal_sequence(pair.m1, pair.m2, budget)
    solutions = solutions or {}

    def form(n):
        a = solutions.get(n)
        if a is None:
            a = solve_mixed(pair, n).a
            solutions[n] = a
        return LinearForm(a, pair.S1)

    hull = root_hull(pair)
    out = []
    for n, nl in zip(seq, seq[1:]):
        res = interlacing_check(form(n), form(nl), hull)
        out.append((n, nl, res.ok, res.finding))
    return out


def perfectness_scan(pair: CompatiblePair, budget: int, workers: int = 1, zeros: bool = True,
                     interlacing: bool = True) -> ScanReport:
    """Solve every combined index with ``|n1| <= budget`` and certify each one."""
    if budget > pair.atom_budget():
        from ..errors import BudgetExceeded
        raise BudgetExceeded(f"budget {budget} exceeds the atom budget {pair.atom_budget()}")
    idx = combined_indices(pair.m1, pair.m2, budget)
    # fill the read-only caches before any worker forks
    top = 2 * budget
    for j in range(pair.m2 + 1):
        for k in range(pair.m1 + 1):
            pair.moment(j, k, top)
    entries = parallel_map(lambda n: _scan_one(pair, n, zeros), idx, workers)
    report = ScanReport(entries, budget, pair.m1, pair.m2, pair.backend.name)
    if interlacing:
        sols = {e.index: e.a for e in entries}
        report.interlacing = diagonal_interlacing(pair, budget, sols)
    return report


@dataclass
class GramTable:
    lambda1: list
    lambda2: list
    values: list

    def band_ok(self, backend=None) -> bool:
        """Zero off the |n1| = |n2| diagonal and nonzero on it."""
        for i, n1 in enumerate(self.lambda1):
            for j, n2 in enumerate(self.lambda2):
                g = self.values[i][j]
                if n1.norm == n2.norm:
                    if g == 0:
                        return False
                elif backend is None or backend.exact:
                    if g != 0:
                        return False
        return True

    def to_json(self) -> dict:
        return {"lambda1": [str(n) for n in self.lambda1], "lambda2": [str(n) for n in self.lambda2],
                "gram": [[format_rational(g) for g in row] for row in self.values]}


def _with_zero(seq: Sequence[MultiIndex], parts: int) -> dict:
    table = {0: MultiIndex([0] * parts)}
    for n in seq:
        table[n.norm] = n
    return table


def biorthogonal_sequences(pair: CompatiblePair, lambda1: Sequence[MultiIndex],
                           lambda2: Sequence[MultiIndex]):
    """Forms Q_{n1} (for S1) and P_{n2} (roles swapped) plus their Gram table.

    The sequences start at norm 1; the zero multi-index is prepended implicitly
    so the first forms have no orthogonality conditions.
    """
    lambda1 = [MultiIndex(n) for n in lambda1]
    lambda2 = [MultiIndex(n) for n in lambda2]
    check_complete(lambda1)
    check_complete(lambda2)
    by1 = _with_zero(lambda1, pair.m1 + 1)
    by2 = _with_zero(lambda2, pair.m2 + 1)
    swapped = pair.swapped()
    Q: list[VectorPolynomialSolution] = []
    for n1 in lambda1:
        if n1.norm - 1 not in by2:
            break
        Q.append(solve_mixed(pair, CombinedIndex(n1, by2[n1.norm - 1])))
    P: list[VectorPolynomialSolution] = []
    for n2 in lambda2:
        if n2.norm - 1 not in by1:
            break
        P.append(solve_mixed(swapped, CombinedIndex(n2, by1[n2.norm - 1])))
    xs, ws = pair.root.positions, pair.root.weights

    def values(sol, tab):
        out = []
        for i, x in enumerate(xs):
            acc = pair.backend.zero()
            for k, p in enumerate(sol.a):
                if not p.is_zero():
                    acc = acc + p(x) * tab[k][i]
            out.append(acc)
        return out

    qv = [values(s, pair.v) for s in Q]
    pv = [values(s, pair.u) for s in P]
    gram = [[sum((w * a * b for w, a, b in zip(ws, qa, pb)), pair.backend.zero()) for pb in pv]
            for qa in qv]
    return Q, P, GramTable([s.index.n1 for s in Q], [s.index.n1 for s in P], gram)
