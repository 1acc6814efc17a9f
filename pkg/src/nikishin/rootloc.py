"""Zero counting and localization for linear forms ``p_0 + sum p_k s^_{1,k}``.

Over the common denominator ``D = prod (x - atoms of sigma_1)`` a form is
``(p_0 D + sum p_k N_k) / D``. Numerators are assembled over the integers
from a per-system integer basis, then handed to exact Sturm counting.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from gmpy2 import mpz

from .exactnum import Polynomial, RationalFunction, format_rational, to_fraction
from .exactnum.sturm import (SturmChain, _eval_sign, count_with_multiplicity, exact_gcd,
                             integer_primitive, isolate_roots, refine_interval)
from .measures import NikishinSystem

__all__ = ["LinearForm", "ZeroReport", "ATReport", "zeros_in_hull", "count_zeros_off_delta1",
           "interlacing_check", "at_system_zero_bound", "random_rational", "InterlacingResult"]


def _int_list(fracs: Sequence[Fraction], scale: int) -> list:
    return [mpz(c.numerator * (scale // c.denominator)) for c in fracs]


def _conv(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [mpz(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _add_into(acc: list, b: list) -> list:
    if len(acc) < len(b):
        acc = acc + [mpz(0)] * (len(b) - len(acc))
    for i, y in enumerate(b):
        acc[i] += y
    return acc


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


class _Basis:
    """Integer multiples ``L*D, L*N_1, ..., L*N_m`` for one system (exact copy)."""

    def __init__(self, system: NikishinSystem):
        ex = system.exact()
        self.labels = list(range(1, ex.end + 1)) if ex.end >= 1 else []
        if not self.labels:
            self.atoms = ()
            self.polys = [Polynomial([Fraction(1)])]
        else:
            self.atoms = ex.measure(1).positions
            d = ex.rational(1, 1).den
            self.polys = [d] + [ex.rational(1, k).num for k in self.labels]
        L = 1
        for p in self.polys:
            for c in p.coeffs:
                L = math.lcm(L, to_fraction(c).denominator)
        self.scale = L
        self.ints = [_int_list([to_fraction(c) for c in p.coeffs], L) for p in self.polys]

    @property
    def delta1(self):
        if not self.atoms:
            return None
        return (self.atoms[0], self.atoms[-1])


def _basis(system: NikishinSystem) -> _Basis:
    b = getattr(system, "_int_basis", None)
    if b is None:
        b = _Basis(system)
        system._int_basis = b
    return b


@dataclass
class LinearForm:
    """``p_0 + sum_{k>=1} p_k s^_{1,k}`` for the system's measures labelled 1..m."""

    coeffs: list
    system: NikishinSystem
    _num: list | None = field(default=None, repr=False)
    _reduced: tuple | None = field(default=None, repr=False)

    def __post_init__(self):
        m = max(self.system.end, 0)
        if len(self.coeffs) > m + 1:
            raise ValueError(f"{len(self.coeffs)} coefficients for a system with m={m}")

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.coeffs)

    def integer_numerator(self) -> list:
        """Positive multiple of ``p_0 D + sum p_k N_k`` with integer coefficients."""
        if self._num is None:
            b = _basis(self.system)
            ex = [[to_fraction(c) for c in p.coeffs] for p in self.coeffs]
            q = 1
            for cs in ex:
                for c in cs:
                    q = math.lcm(q, c.denominator)
            acc: list = []
            for k, cs in enumerate(ex):
                if cs:
                    acc = _add_into(acc, _conv(_int_list(cs, q), b.ints[k]))
            self._num = _trim(acc)
        return self._num

    def as_rational(self) -> RationalFunction:
        """Exact rational form (numerator scaled back to the true value)."""
        b = _basis(self.system)
        ex = [p.exact() for p in self.coeffs]
        num = Polynomial()
        for k, p in enumerate(ex):
            num = num + p * b.polys[k]
        return RationalFunction(num, b.polys[0])

    def reduced_numerator(self) -> list:
        """Integer numerator with every factor shared with ``D`` removed."""
        if self._reduced is None:
            num = self.integer_numerator()
            if not num:
                raise ValueError("linear form is identically zero")
            b = _basis(self.system)
            common = [y for y in b.atoms if _eval_sign(num, y) == 0]
            if common:
                p = Polynomial([Fraction(int(c)) for c in num])
                p = p // Polynomial.from_roots(common)
                num = list(integer_primitive(p))
            self._reduced = (num, tuple(common))
        return self._reduced[0]

    def cancelled_atoms(self) -> tuple:
        self.reduced_numerator()
        return self._reduced[1]

    def evaluate(self, x):
        return self.as_rational()(x)


@dataclass
class ZeroReport:
    count_in_hull: int
    isolating_intervals: list
    all_simple: bool
    count_outside_delta1: int | None = None
    endpoint_zero: bool = False

    def to_json(self) -> dict:
        return {
            "count_in_hull": self.count_in_hull,
            "isolating_intervals": [[format_rational(a), format_rational(b)]
                                    for a, b in self.isolating_intervals],
            "all_simple": self.all_simple,
            "count_outside_delta1": self.count_outside_delta1,
            "endpoint_zero": self.endpoint_zero,
        }


def _hull_bounds(hull):
    if hasattr(hull, "lo"):
        return to_fraction(hull.lo), to_fraction(hull.hi)
    lo, hi = hull
    return to_fraction(lo), to_fraction(hi)


def zeros_in_hull(form: LinearForm, hull, isolate: bool = True,
                  off_delta1: bool = False) -> ZeroReport:
    """Distinct zeros of the form strictly inside ``hull``, with simplicity check."""
    num = form.reduced_numerator()
    lo, hi = _hull_bounds(hull)
    if len(num) == 1:
        return ZeroReport(0, [], True, 0 if off_delta1 else None)
    chain = SturmChain(num)
    count = chain.count(lo, hi)
    endpoint = chain.is_root(lo) or chain.is_root(hi)
    if chain.degree_gcd == 0:
        simple = True
    else:
        g = Polynomial([Fraction(int(c)) for c in num])
        g = exact_gcd(g, g.derivative())
        simple = SturmChain(g).count(lo, hi) == 0
    intervals = isolate_roots(chain.square_free, lo, hi) if isolate and count else []
    off = count_zeros_off_delta1(form) if off_delta1 else None
    return ZeroReport(count, intervals, simple, off, endpoint)


def count_zeros_off_delta1(form: LinearForm) -> int:
    """Finite complex zeros (with multiplicity) outside the closed hull of sigma_1."""
    num = form.reduced_numerator()
    deg = len(num) - 1
    b = _basis(form.system)
    if deg <= 0 or b.delta1 is None:
        return max(deg, 0)
    lo, hi = (to_fraction(x) for x in b.delta1)
    chain = SturmChain(num)
    if chain.degree_gcd == 0:
        inside = chain.count(lo, hi, open_lo=False, open_hi=False)
    else:
        inside = count_with_multiplicity(Polynomial([Fraction(int(c)) for c in num]),
                                         lo, hi, open_lo=False, open_hi=False)
    return deg - inside


def count_zeros_in(form: LinearForm, lo, hi) -> int:
    """Zeros with multiplicity in the closed interval [lo, hi]."""
    num = form.reduced_numerator()
    if len(num) == 1:
        return 0
    return count_with_multiplicity(Polynomial([Fraction(int(c)) for c in num]),
                                   to_fraction(lo), to_fraction(hi), False, False)


@dataclass
class InterlacingResult:
    ok: bool
    finding: str = ""

    def __bool__(self):
        return self.ok


def _separate(ia: list, ib: list, chain_a: SturmChain, chain_b: SturmChain):
    """Refine isolating intervals until no interval of one set meets one of the other."""
    while True:
        merged = sorted([(a, b, 0, i) for i, (a, b) in enumerate(ia)] +
                        [(a, b, 1, i) for i, (a, b) in enumerate(ib)])
        clash = None
        for x, y in zip(merged, merged[1:]):
            if x[2] != y[2] and y[0] <= x[1]:
                clash = (x, y)
                break
        if clash is None:
            return merged
        for a, b, which, i in clash:
            if a == b:
                continue
            if which == 0:
                ia[i] = refine_interval(chain_a, ia[i], (b - a) / 2)
            else:
                ib[i] = refine_interval(chain_b, ib[i], (b - a) / 2)


def interlacing_check(form_a: LinearForm, form_b: LinearForm, hull) -> InterlacingResult:
    """Between consecutive zeros of ``form_b`` inside ``hull`` lies exactly one zero of ``form_a``."""
    lo, hi = _hull_bounds(hull)
    na, nb = form_a.reduced_numerator(), form_b.reduced_numerator()
    pa = Polynomial([Fraction(int(c)) for c in na])
    pb = Polynomial([Fraction(int(c)) for c in nb])
    if len(nb) <= 2:
        return InterlacingResult(True, "fewer than two zeros in the longer form")
    g = exact_gcd(pa, pb)
    if g.degree > 0 and SturmChain(g).count(lo, hi) > 0:
        return InterlacingResult(False, "common zero")
    ca, cb = SturmChain(na), SturmChain(nb)
    ia = isolate_roots(ca.square_free, lo, hi) if len(na) > 1 else []
    ib = isolate_roots(cb.square_free, lo, hi)
    merged = _separate(list(ia), list(ib), ca, cb)
    order = [w for _, _, w, _ in merged]
    positions_b = [i for i, w in enumerate(order) if w == 1]
    for u, v in zip(positions_b, positions_b[1:]):
        between = sum(1 for w in order[u + 1:v] if w == 0)
        if between != 1:
            return InterlacingResult(False, f"{between} zeros between consecutive zeros")
    return InterlacingResult(True)


def random_rational(rng: random.Random, bound: int = 10, max_den: int = 16) -> Fraction:
    """Uniform-ish rational in [-bound, bound] with denominator at most ``max_den``."""
    d = rng.randint(1, max_den)
    return Fraction(rng.randint(-bound * d, bound * d), d)


@dataclass
class ATReport:
    index: tuple
    trials: int
    max_off_delta1: int
    bound: int
    max_in_delta: int | None = None
    counts: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        ok = self.max_off_delta1 <= self.bound
        if self.max_in_delta is not None:
            ok = ok and self.max_in_delta <= self.bound
        return ok

    def to_json(self) -> dict:
        return {"index": list(self.index), "trials": self.trials,
                "max_off_delta1": self.max_off_delta1, "bound": self.bound,
                "max_in_delta": self.max_in_delta, "certified": self.certified,
                "histogram": {str(k): v for k, v in sorted(self.counts.items())}}


def at_system_zero_bound(system: NikishinSystem, n: Sequence[int], trials: int, seed: int,
                         delta=None) -> ATReport:
    """Largest zero count over random forms with ``deg p_k <= n_k - 1``.

    ``system`` supplies sigma_1..sigma_m as labels 1..m. Each trial draws
    its coefficients from ``random.Random(f"{seed}:{n}:{t}")``. ``delta``
    optionally adds a count restricted to an interval disjoint from Delta_1.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    n = tuple(int(c) for c in n)
    if sum(n) < 1:
        raise ValueError("multi-index must be nonzero")
    b = _basis(system)
    if len(n) != len(b.labels) + 1:
        raise ValueError(f"index {n} needs {len(b.labels) + 1} components")
    if delta is not None and b.delta1 is not None:
        dlo, dhi = _hull_bounds(delta)
        lo1, hi1 = (to_fraction(x) for x in b.delta1)
        if dlo < hi1 and lo1 < dhi:
            raise ValueError("interval Δ intersects the interior of Δ_1")
    best, best_delta = 0, None if delta is None else 0
    hist: dict = {}
    key = ",".join(map(str, n))
    for t in range(trials):
        rng = random.Random(f"{seed}:{key}:{t}")
        while True:
            coeffs = [Polynomial([random_rational(rng) for _ in range(nk)]) for nk in n]
            if not all(p.is_zero() for p in coeffs):
                break
        form = LinearForm(coeffs, system)
        c = count_zeros_off_delta1(form)
        hist[c] = hist.get(c, 0) + 1
        best = max(best, c)
        if delta is not None:
            best_delta = max(best_delta, count_zeros_in(form, *_hull_bounds(delta)))
    return ATReport(n, trials, best, sum(n) - 1, best_delta, hist)
