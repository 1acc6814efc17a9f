"""Scalar backends: exact rationals and configurable big-floats.

Exact values are :class:`fractions.Fraction`. Big-floats are ``mpf`` values
bound to a private :class:`mpmath.MPContext`, so two backends with different
precisions never share global state.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import mpmath

__all__ = [
    "Backend",
    "RATIONAL",
    "bigfloat",
    "backend_from_name",
    "parse_rational",
    "to_fraction",
    "format_rational",
    "GaussianRational",
    "is_exact",
]

MIN_PRECISION = 64
PRECISION_ENV = "NIKISHIN_PRECISION_BITS"


@dataclass(frozen=True)
class Backend:
    """A scalar field.

    ``name`` is ``"rational"`` or ``"bigfloat"``; ``precision`` is the
    significand width in bits for the big-float backend and ``None`` otherwise.
    """

    name: str
    precision: int | None = None
    ctx: object = field(default=None, compare=False, repr=False)

    @property
    def exact(self) -> bool:
        return self.name == "rational"

    def convert(self, value):
        if self.exact:
            return to_fraction(value)
        if isinstance(value, str):
            return self.ctx.mpf(value) if "/" not in value else self.ctx.mpf(
                parse_rational(value).numerator) / parse_rational(value).denominator
        if isinstance(value, Fraction):
            return self.ctx.mpf(value.numerator) / value.denominator
        return self.ctx.mpf(value)

    def zero(self):
        return self.convert(0)

    def one(self):
        return self.convert(1)

    def rank_tolerance(self):
        """Relative pivot threshold used for rank decisions (``2^(-p/2)``)."""
        if self.exact:
            return 0
        return self.ctx.mpf(2) ** (-(self.precision // 2))

    def residual_tolerance(self):
        """Identity/orthogonality residual bound ``2^(16-p)``."""
        if self.exact:
            return 0
        return self.ctx.mpf(2) ** (16 - self.precision)


RATIONAL = Backend("rational")


def bigfloat(precision: int | None = None) -> Backend:
    """Big-float backend at ``precision`` bits (env override applies when None)."""
    if precision is None:
        precision = int(os.environ.get(PRECISION_ENV, "256"))
    if precision < MIN_PRECISION:
        raise ValueError(f"big-float precision must be >= {MIN_PRECISION} bits, got {precision}")
    ctx = mpmath.MPContext()
    ctx.prec = precision
    return Backend("bigfloat", precision, ctx)


def backend_from_name(name: str, precision: int | None = None) -> Backend:
    if name == "rational":
        return RATIONAL
    if name == "bigfloat":
        env = os.environ.get(PRECISION_ENV)
        if env is not None:
            precision = int(env)
        return bigfloat(precision)
    raise ValueError(f"unknown backend {name!r}")


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) or isinstance(x, GaussianRational)


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, an integer or a finite decimal string into a Fraction."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    s = str(text).strip()
    if not s:
        raise ValueError("empty rational literal")
    return Fraction(s)


def to_fraction(x) -> Fraction:
    """Exact conversion; big-floats are dyadic rationals and convert losslessly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    if hasattr(x, "_mpf_"):
        sign, man, exp, _ = x._mpf_
        if not man and exp:
            raise ValueError(f"cannot convert {x} to Fraction")
        man = -int(man) if sign else int(man)
        if exp >= 0:
            return Fraction(man << exp)
        return Fraction(man, 1 << (-exp))
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


def format_rational(x) -> str:
    """Serialize a scalar as ``"p/q"`` (or ``"p"``); big-floats as decimal strings."""
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    if hasattr(x, "man_exp"):
        prec = getattr(getattr(x, "context", None), "prec", 256)
        return mpmath.nstr(x, int(prec * 0.30103) + 3, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)
    return str(x)


class GaussianRational:
    """Exact complex number with Fraction real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("complex division by zero")
        return GaussianRational((self.re * o.re + self.im * o.im) / d,
                                (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __abs__(self):
        return mpmath.sqrt(mpmath.mpf(self.re) ** 2 + mpmath.mpf(self.im) ** 2)

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"GaussianRational({format_rational(self.re)}, {format_rational(self.im)})"

    def as_pair(self) -> list[str]:
        return [format_rational(self.re), format_rational(self.im)]
