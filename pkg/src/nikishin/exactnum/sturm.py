"""Exact real-root counting with Sturm chains.

Chains are built with a primitive pseudo-remainder sequence over the
integers (gmpy2 ``mpz``), which keeps coefficient growth in check. Every
pseudo-remainder is scaled by a positive power of the divisor's leading
coefficient, so signs match the classical chain exactly.
"""

from __future__ import annotations

import math
from fractions import Fraction

import gmpy2
from gmpy2 import mpz

from .poly import Polynomial
from .scalar import to_fraction

__all__ = [
    "SturmChain",
    "sturm_count",
    "count_with_multiplicity",
    "isolate_roots",
    "refine_interval",
    "square_free_part",
    "is_square_free",
    "integer_primitive",
    "sign_at_roots",
    "exact_gcd",
]

INF = math.inf


def integer_primitive(p: Polynomial) -> list:
    """Positive rational multiple of ``p`` with coprime integer coefficients."""
    fr = [to_fraction(c) for c in p.coeffs]
    if not fr:
        return []
    den = 1
    for c in fr:
        den = math.lcm(den, c.denominator)
    ints = [mpz(c.numerator * (den // c.denominator)) for c in fr]
    return _prim(ints)


def _prim(a: list) -> list:
    g = mpz(0)
    for c in a:
        g = gmpy2.gcd(g, c)
        if g == 1:
            return a
    if g > 1:
        return [c // g for c in a]
    return a


def _prem(a: list, b: list) -> list:
    """``|lc b|^(deg a - deg b + 1) * a mod b`` for integer lists, low-first."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    alb = abs(lb)
    delta = len(a) - len(b) + 1
    sgn = 1 if lb > 0 else -1
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        sh = k - db
        f = c * sgn
        a = [alb * x for x in a]
        for i in range(db + 1):
            a[sh + i] -= f * b[i]
        delta -= 1
        a.pop()
    if delta > 0:
        m = alb ** delta
        a = [m * x for x in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def _derivative(a: list) -> list:
    return [i * a[i] for i in range(1, len(a))]


def _chain(p: list) -> list:
    ch = [p]
    dp = _derivative(p)
    if not dp:
        return ch
    ch.append(_prim(dp))
    while len(ch[-1]) > 1:
        r = _prem(ch[-2], ch[-1])
        if not r:
            break
        ch.append(_prim([-c for c in r]))
    return ch


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _eval_sign(a: list, x) -> int:
    """Sign of the integer polynomial ``a`` at a Fraction or at +-inf."""
    if x == INF:
        return _sign(a[-1])
    if x == -INF:
        return _sign(a[-1]) * (-1 if (len(a) - 1) % 2 else 1)
    x = Fraction(x)
    num, den = mpz(x.numerator), mpz(x.denominator)
    # sum c_i num^i den^(d-i) has the sign of p(x) since den > 0
    h = mpz(0)
    pw = mpz(1)
    for c in reversed(a):
        h = h * num + c * pw
        pw *= den
    return _sign(h)


def _to_poly(a: list) -> Polynomial:
    return Polynomial([Fraction(int(c)) for c in a])


def _exact_div(a: list, b: list) -> list:
    q, r = divmod(_to_poly(a), _to_poly(b))
    if not r.is_zero():
        raise ArithmeticError("inexact division in square-free reduction")
    return integer_primitive(q)


def _check_interval(lo, hi):
    if not lo < hi:
        raise ValueError(f"empty interval: lo={lo} must be < hi={hi}")


class SturmChain:
    """Sturm chain of the square-free part of a nonzero polynomial.

    ``chain`` holds the integer chain as Polynomials with Fraction
    coefficients. ``degree_gcd`` is the degree of gcd(p, p'); it is zero
    exactly when p is square-free.
    """

    __slots__ = ("_ints", "degree_gcd", "_sqf")

    def __init__(self, p):
        if isinstance(p, list):
            if not p:
                raise ValueError("Sturm chain of the zero polynomial")
            a = _prim([mpz(c) for c in p])
        else:
            if p.is_zero():
                raise ValueError("Sturm chain of the zero polynomial")
            a = integer_primitive(p)
        ch = _chain(a)
        g = ch[-1] if len(ch) > 1 else [mpz(1)]
        self.degree_gcd = len(g) - 1
        if self.degree_gcd > 0:
            a = _exact_div(a, g)
            ch = _chain(a)
        self._sqf = a
        self._ints = ch

    @classmethod
    def from_integers(cls, a: list) -> SturmChain:
        """Chain for an integer coefficient list (low-first, no trailing zeros)."""
        return cls(list(a))

    @property
    def chain(self) -> list[Polynomial]:
        return [_to_poly(c) for c in self._ints]

    @property
    def square_free(self) -> Polynomial:
        return _to_poly(self._sqf)

    def variations(self, x) -> int:
        v = 0
        last = 0
        for c in self._ints:
            s = _eval_sign(c, x)
            if s == 0:
                continue
            if last and s != last:
                v += 1
            last = s
        return v

    def is_root(self, x) -> bool:
        if x in (INF, -INF):
            return False
        return _eval_sign(self._sqf, x) == 0

    def count(self, lo, hi, open_lo: bool = True, open_hi: bool = True) -> int:
        """Distinct real roots between ``lo`` and ``hi`` (either may be infinite)."""
        _check_interval(lo, hi)
        c = self.variations(lo) - self.variations(hi)  # roots in (lo, hi]
        if open_hi and self.is_root(hi):
            c -= 1
        if not open_lo and self.is_root(lo):
            c += 1
        return c


def sturm_count(p: Polynomial, lo, hi, open_lo: bool = True, open_hi: bool = True) -> int:
    """Number of distinct real roots of ``p`` in the interval.

    ``lo``/``hi`` may be ``-math.inf``/``math.inf``; ``open_lo``/``open_hi``
    select whether the endpoints themselves are counted.
    """
    _check_interval(lo, hi)
    return SturmChain(p).count(lo, hi, open_lo, open_hi)


def square_free_part(p: Polynomial) -> Polynomial:
    return SturmChain(p).square_free


def is_square_free(p: Polynomial) -> bool:
    return SturmChain(p).degree_gcd == 0


def count_with_multiplicity(p: Polynomial, lo, hi, open_lo: bool = True,
                            open_hi: bool = True) -> int:
    """Real roots in the interval counted with multiplicity.

    Sums distinct-root counts over g_0 = p, g_{k+1} = gcd(g_k, g_k').
    """
    _check_interval(lo, hi)
    total = 0
    g = p.exact()
    while g.degree > 0:
        total += SturmChain(g).count(lo, hi, open_lo, open_hi)
        g = exact_gcd(g, g.derivative())
    return total


def _finite_bounds(chain: SturmChain, lo, hi):
    """Replace infinite ends with a Cauchy root bound."""
    if lo != -INF and hi != INF:
        return Fraction(lo), Fraction(hi)
    a = chain._sqf
    lc = abs(a[-1])
    bound = 1 + max((Fraction(int(abs(c)), int(lc)) for c in a[:-1]), default=Fraction(0))
    lo = -bound - 1 if lo == -INF else Fraction(lo)
    hi = bound + 1 if hi == INF else Fraction(hi)
    return lo, hi


def isolate_roots(p: Polynomial, lo, hi, width=None) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals, one per distinct root of ``p`` in ``(lo, hi)``.

    Each pair ``(a, b)`` either has ``a < b`` with exactly one root in the
    open interval, or ``a == b`` when the root is that rational point.
    Intervals are sorted. ``width`` optionally refines each to that size.
    """
    _check_interval(lo, hi)
    chain = SturmChain(p)
    a0, b0 = _finite_bounds(chain, lo, hi)
    out: list = []
    stack = [(a0, b0, chain.count(a0, b0))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        if chain.is_root(m):
            out.append((m, m))
            stack.append((a, m, chain.count(a, m)))
            stack.append((m, b, chain.count(m, b)))
            continue
        stack.append((a, m, chain.count(a, m)))
        stack.append((m, b, chain.count(m, b)))
    out.sort()
    if width is not None:
        out = [refine_interval(chain, iv, width) for iv in out]
    return out


def refine_interval(chain, interval, width) -> tuple[Fraction, Fraction]:
    """Bisect an isolating interval until it is narrower than ``width``."""
    if not isinstance(chain, SturmChain):
        chain = SturmChain(chain)
    a, b = interval
    width = Fraction(width)
    while b - a >= width and a != b:
        m = (a + b) / 2
        if chain.is_root(m):
            return (m, m)
        if chain.count(a, m) == 1:
            b = m
        else:
            a = m
    return (a, b)


def sign_at_roots(f: Polynomial, g: Polynomial, lo=-INF, hi=INF) -> list[int]:
    """Exact sign of ``g`` at each distinct real root of ``f`` in ``(lo, hi)``.

    Roots are taken in increasing order. Isolating intervals of ``f`` are
    shrunk until ``g`` has no root in the closed interval, so ``g`` keeps one
    sign there; a common root of ``f`` and ``g`` gives sign 0.
    """
    fc = SturmChain(f)
    common = exact_gcd(f, g) if not g.is_zero() else None
    cc = SturmChain(common) if common is not None and common.degree > 0 else None
    gc = SturmChain(g) if not g.is_zero() and g.degree > 0 else None
    gi = integer_primitive(g) if not g.is_zero() else []
    out = []
    for a, b in isolate_roots(f, lo, hi):
        if g.is_zero():
            out.append(0)
            continue
        if a == b:
            out.append(_eval_sign(gi, a))
            continue
        if cc is not None and cc.count(a, b) > 0:
            out.append(0)
            continue
        if gc is not None:
            while gc.count(a, b, open_lo=False, open_hi=False) > 0:
                m = (a + b) / 2
                if fc.is_root(m):
                    a = b = m
                    break
                if fc.count(a, m) == 1:
                    b = m
                else:
                    a = m
        out.append(_eval_sign(gi, a))
    return out


def _int_gcd(a: list, b: list) -> list:
    """Primitive gcd of two integer polynomials by the primitive PRS."""
    a, b = _prim(list(a)), _prim(list(b))
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, (_prim(r) if r else r)
    if a and a[-1] < 0:
        a = [-c for c in a]
    return a


def exact_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd over the rationals, computed with integer arithmetic."""
    if p.is_zero():
        return q.exact().monic()
    if q.is_zero():
        return p.exact().monic()
    g = _int_gcd(integer_primitive(p), integer_primitive(q))
    return _to_poly(g).monic()
