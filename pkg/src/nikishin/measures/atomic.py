"""Finite signed measures and their Cauchy transforms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import PoleEvaluation, SignViolation
from ..exactnum import RATIONAL, Backend, Polynomial, RationalFunction

__all__ = ["ExtendedInterval", "AtomicMeasure", "cauchy_eval"]


@dataclass(frozen=True)
class ExtendedInterval:
    """Interval whose ends may be ``-math.inf`` / ``math.inf``."""

    lo: object
    hi: object

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"interval needs lo < hi, got [{self.lo}, {self.hi}]")

    def contains(self, x, closed: bool = True) -> bool:
        if closed:
            return self.lo <= x <= self.hi
        return self.lo < x < self.hi

    def is_bounded(self) -> bool:
        return self.lo != -math.inf and self.hi != math.inf

    def overlaps(self, other: ExtendedInterval) -> bool:
        """True when the closed intervals share at least one point."""
        return self.lo <= other.hi and other.lo <= self.hi


class AtomicMeasure:
    """Measure ``sum w_i delta_{x_i}`` with all weights of one sign.

    Positions are stored sorted and distinct. ``sign`` may be given to
    declare the expected sign; otherwise it is inferred from the weights.
    """

    __slots__ = ("positions", "weights", "sign", "backend")

    def __init__(self, atoms: Sequence[tuple], sign: int | None = None,
                 backend: Backend = RATIONAL):
        pairs = sorted((backend.convert(x), backend.convert(w)) for x, w in atoms)
        if not pairs:
            raise ValueError("a measure needs at least one atom")
        for (x0, _), (x1, _) in zip(pairs, pairs[1:]):
            if x0 == x1:
                raise ValueError(f"duplicate atom position {x0}")
        if any(w == 0 for _, w in pairs):
            raise SignViolation("zero weight")
        signs = {1 if w > 0 else -1 for _, w in pairs}
        if len(signs) > 1:
            raise SignViolation("weights of mixed sign")
        inferred = signs.pop()
        if sign is not None and sign != inferred:
            raise SignViolation(f"declared sign {sign} but weights have sign {inferred}")
        self.positions = tuple(x for x, _ in pairs)
        self.weights = tuple(w for _, w in pairs)
        self.sign = inferred
        self.backend = backend

    @classmethod
    def uniform(cls, positions: Sequence, weight=Fraction(1), backend: Backend = RATIONAL):
        return cls([(x, weight) for x in positions], backend=backend)

    def __len__(self):
        return len(self.positions)

    def __repr__(self):
        return f"AtomicMeasure({len(self)} atoms, sign={self.sign:+d}, hull={self.hull})"

    @property
    def atoms(self) -> list[tuple]:
        return list(zip(self.positions, self.weights))

    @property
    def hull(self) -> ExtendedInterval | None:
        """Convex hull of the atoms; None for a single atom."""
        if len(self.positions) < 2:
            return None
        return ExtendedInterval(self.positions[0], self.positions[-1])

    @property
    def lo(self):
        return self.positions[0]

    @property
    def hi(self):
        return self.positions[-1]

    def total_mass(self):
        return sum(self.weights, self.backend.zero())

    def moment(self, nu: int):
        return sum((w * x ** nu for x, w in self.atoms), self.backend.zero())

    def moments(self, count: int) -> list:
        return [self.moment(k) for k in range(count)]

    def scaled(self, c) -> AtomicMeasure:
        return AtomicMeasure([(x, w * c) for x, w in self.atoms], backend=self.backend)

    def exact(self) -> AtomicMeasure:
        """Copy over the rational field (big-floats convert losslessly)."""
        from ..exactnum import to_fraction
        return AtomicMeasure([(to_fraction(x), to_fraction(w)) for x, w in self.atoms])

    def cauchy(self, z):
        return cauchy_eval(self, z)

    def denominator(self) -> Polynomial:
        """``prod (x - x_i)`` over the atoms."""
        return Polynomial.from_roots(self.positions, one=self.backend.one())

    def as_rational(self, weights: Sequence | None = None) -> RationalFunction:
        """``sum w_i / (z - x_i)`` as ``N/D`` with ``D = prod (z - x_i)``.

        ``weights`` overrides the measure's own weights (same positions).
        """
        ws = self.weights if weights is None else weights
        d = self.denominator()
        one = self.backend.one()
        num = Polynomial()
        for x, w in zip(self.positions, ws):
            q, _ = divmod(d, Polynomial([-x, one]))
            num = num + q * w
        return RationalFunction(num, d)


def cauchy_eval(s: AtomicMeasure, z, weights: Sequence | None = None):
    """``sum w_i / (z - x_i)``; ``z`` may be a GaussianRational."""
    ws = s.weights if weights is None else weights
    acc = s.backend.zero()
    for x, w in zip(s.positions, ws):
        d = z - x
        if d == 0:
            raise PoleEvaluation(f"z={z} is an atom")
        acc = acc + w / d
    return acc
