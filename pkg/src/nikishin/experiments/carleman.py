"""Partial sums of the moment-growth series ``sum 1/|c_n|^(1/2n)``.

Divergence cannot be decided from finitely many terms; the sums are only
reported.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

__all__ = ["CarlemanReport", "carleman_report", "factorial_moments", "double_factorial_moments"]


@dataclass
class CarlemanReport:
    terms: list
    partial_sums: list
    skipped: list

    @property
    def increasing(self) -> bool:
        return all(b > a for a, b in zip(self.partial_sums, self.partial_sums[1:]))

    def to_json(self) -> dict:
        return {
            "terms": [mpmath.nstr(t, 12) for t in self.terms],
            "partial_sums": [mpmath.nstr(s, 12) for s in self.partial_sums],
            "skipped": self.skipped,
        }


def carleman_report(moment: Callable[[int], object], N: int, precision: int = 64) -> CarlemanReport:
    """Terms ``|c_n|^(-1/2n)`` for ``n = 1..N`` and their running sums.

    ``moment(n)`` returns ``c_n`` (int, Fraction or mpf). ``n = 0`` has no
    finite exponent and is left out; zero moments are skipped with a warning.
    """
    terms, sums, skipped = [], [], []
    with mpmath.workprec(precision):
        acc = mpmath.mpf(0)
        for n in range(1, N + 1):
            c = moment(n)
            if c == 0:
                warnings.warn(f"moment c_{n} is zero; term skipped", stacklevel=2)
                skipped.append(n)
                continue
            if isinstance(c, (int, Fraction)):
                c = Fraction(c)
                logc = math.log(abs(c.numerator)) - math.log(c.denominator)
                t = mpmath.exp(-mpmath.mpf(logc) / (2 * n))
            else:
                t = mpmath.power(abs(mpmath.mpf(c)), -mpmath.mpf(1) / (2 * n))
            acc += t
            terms.append(+t)
            sums.append(+acc)
    return CarlemanReport(terms, sums, skipped)


def factorial_moments(n: int) -> int:
    """Moments ``n!`` of ``exp(-x)`` on ``[0, inf)``."""
    return math.factorial(n)


def double_factorial_moments(n: int) -> int:
    """``(2n)!``, a faster-growing sequence for comparison."""
    return math.factorial(2 * n)
