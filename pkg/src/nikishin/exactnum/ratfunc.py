"""Rational functions ``num/den`` with a monic denominator."""

from __future__ import annotations

from fractions import Fraction

from .poly import Polynomial

__all__ = ["RationalFunction"]


class RationalFunction:
    __slots__ = ("num", "den", "reduced")

    def __init__(self, num: Polynomial, den: Polynomial | None = None, reduced: bool = False):
        if den is None:
            den = Polynomial([Fraction(1)])
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        lc = den.lc()
        if lc != 1:
            num = num / lc
            den = den / lc
        self.num = num
        self.den = den
        self.reduced = reduced or den.degree == 0

    @classmethod
    def from_poly(cls, p: Polynomial) -> RationalFunction:
        return cls(p, Polynomial([Fraction(1)]), reduced=True)

    def __call__(self, z):
        d = self.den(z)
        if d == 0:
            raise ZeroDivisionError("pole evaluation")
        return self.num(z) / d

    def reduce(self) -> RationalFunction:
        if self.reduced:
            return self
        g = self.num.gcd(self.den)
        if g.degree <= 0:
            return RationalFunction(self.num, self.den, reduced=True)
        return RationalFunction(self.num // g, self.den // g, reduced=True)

    # arithmetic ---------------------------------------------------------

    @staticmethod
    def _lift(o) -> RationalFunction:
        if isinstance(o, RationalFunction):
            return o
        if isinstance(o, Polynomial):
            return RationalFunction.from_poly(o)
        return RationalFunction.from_poly(Polynomial([o]))

    def __add__(self, other):
        o = self._lift(other)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, self.reduced)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def inverse(self) -> RationalFunction:
        return RationalFunction(self.den, self.num, self.reduced)

    # structure at infinity -------------------------------------------------

    def polynomial_part(self) -> Polynomial:
        return self.num // self.den

    def split(self) -> tuple[Polynomial, RationalFunction]:
        """``(polynomial part, proper part)``."""
        q, r = divmod(self.num, self.den)
        return q, RationalFunction(r, self.den, self.reduced)

    def order_at_infinity(self) -> int | None:
        """``deg den - deg num``; None for the zero function (infinite order)."""
        if self.num.is_zero():
            return None
        return self.den.degree - self.num.degree

    def laurent(self, terms: int) -> list:
        """Coefficients ``e_0..e_{terms-1}`` of ``sum e_k z^(-k-1)`` for the proper part."""
        _, proper = self.split()
        n, d = proper.num, proper.den
        m = d.degree
        e = []
        for k in range(terms):
            idx = m - 1 - k
            acc = n[idx] if idx >= 0 else 0
            for j in range(1, min(k, m) + 1):
                acc -= d[m - j] * e[k - j]
            e.append(acc)
        return e

    def equals(self, other) -> bool:
        """Exact identity test by cross multiplication."""
        o = self._lift(other)
        return self.num * o.den == o.num * self.den

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"
