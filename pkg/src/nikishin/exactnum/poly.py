"""Dense univariate polynomials over an exact or big-float field.

Coefficients are stored lowest degree first with no trailing zeros; the zero
polynomial is the empty tuple and has degree -1.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .scalar import format_rational, to_fraction

__all__ = ["Polynomial"]


def _trim(coeffs: list) -> tuple:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class Polynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim(list(coeffs))

    # constructors -----------------------------------------------------

    @classmethod
    def constant(cls, c) -> Polynomial:
        return cls([c])

    @classmethod
    def x(cls, one=Fraction(1)) -> Polynomial:
        return cls([one * 0, one])

    @classmethod
    def from_roots(cls, roots: Sequence, one=Fraction(1)) -> Polynomial:
        """Monic polynomial with the given roots (with repetition)."""
        c = [one]
        for r in roots:
            nxt = [0 * one] * (len(c) + 1)
            for i, a in enumerate(c):
                nxt[i + 1] += a
                nxt[i] -= r * a
            c = nxt
        return cls(c)

    # basic properties ---------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        return self.coeffs == (other,)

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Polynomial([{', '.join(format_rational(c) for c in self.coeffs)}])"

    # arithmetic ---------------------------------------------------------

    @staticmethod
    def _lift(other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        return Polynomial([other])

    def __add__(self, other):
        o = self._lift(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            if other == 0:
                return Polynomial()
            return Polynomial([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [a[0] * 0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial([self.coeffs[0] ** 0 if self.coeffs else 1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> Polynomial:
        return self * c

    def shift(self, k: int) -> Polynomial:
        """Multiply by x**k."""
        if not self.coeffs:
            return self
        return Polynomial([self.coeffs[0] * 0] * k + list(self.coeffs))

    def __divmod__(self, other):
        o = self._lift(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = o.degree
        lb = o.coeffs[-1]
        if isinstance(lb, int):
            lb = Fraction(lb)
        if len(r) <= db:
            return Polynomial(), Polynomial(r)
        q = [0] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k] / lb
            q[k - db] = c
            if c == 0:
                continue
            for i in range(db + 1):
                r[k - db + i] -= c * o.coeffs[i]
        return Polynomial(q), Polynomial(r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, c):
        if isinstance(c, Polynomial):
            q, r = divmod(self, c)
            if not r.is_zero():
                raise ValueError("inexact polynomial division")
            return q
        return Polynomial([x / c for x in self.coeffs])

    # calculus and evaluation -------------------------------------------

    def derivative(self) -> Polynomial:
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> Polynomial:
        if not self.coeffs:
            return self
        return self / self.coeffs[-1]

    def reverse(self, degree: int | None = None) -> Polynomial:
        """``x**degree * p(1/x)``."""
        d = self.degree if degree is None else degree
        c = list(self.coeffs) + [0] * (d + 1 - len(self.coeffs))
        return Polynomial(c[::-1])

    def map(self, fn) -> Polynomial:
        return Polynomial([fn(c) for c in self.coeffs])

    def exact(self) -> Polynomial:
        return self.map(to_fraction)

    def to_strings(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    # gcd (exact fields) ---------------------------------------------------

    def gcd(self, other: Polynomial) -> Polynomial:
        """Monic gcd via the Euclidean algorithm; exact fields only."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: Polynomial):
        """Return ``(g, s, t)`` with ``s*self + t*other = g`` and g monic."""
        r0, r1 = self, other
        s0, s1 = Polynomial([Fraction(1)]), Polynomial()
        t0, t1 = Polynomial(), Polynomial([Fraction(1)])
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        lc = r0.lc()
        return r0 / lc, s0 / lc, t0 / lc

    def inverse_mod(self, modulus: Polynomial) -> Polynomial:
        """``u`` with ``u*self = 1 (mod modulus)``.

        Euclid on the reduced operand, tracking one cofactor and keeping every
        remainder monic, which holds the rational coefficients in check.
        """
        one = Polynomial([Fraction(1)])
        r0, r1 = modulus.monic(), self % modulus
        s0, s1 = Polynomial(), one
        while not r1.is_zero():
            lc = r1.lc()
            r1, s1 = r1 / lc, s1 / lc
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        if r0.degree != 0:
            raise ValueError("polynomial not invertible modulo modulus")
        return s0 % modulus
