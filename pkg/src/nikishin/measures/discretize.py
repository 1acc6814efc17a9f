"""Gauss rules for classical weights, built from their moments.

Recurrence coefficients come from the Chebyshev moment algorithm run at an
inflated working precision; nodes and weights then come from the symmetric
Jacobi matrix (Golub-Welsch).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from ..exactnum import Backend, bigfloat
from .atomic import AtomicMeasure

__all__ = ["PRESETS", "WeightPreset", "discretize_weight", "preset_moment"]


@dataclass(frozen=True)
class WeightPreset:
    name: str
    lo: float
    hi: float
    description: str


PRESETS = {
    "laguerre": WeightPreset("laguerre", 0, math.inf, "exp(-x) on [0, inf)"),
    "neg-laguerre": WeightPreset("neg-laguerre", -math.inf, 0, "exp(x) on (-inf, 0]"),
    "arcsine": WeightPreset("arcsine", 0, 1, "1/sqrt(x(1-x)) on [0, 1]"),
    "lebesgue": WeightPreset("lebesgue", -1, 0, "dx on [-1, 0]"),
}


def preset_moment(name: str, n: int, ctx=mpmath.mp):
    """``int x^n dmu`` for a preset weight, in the given mpmath context."""
    if name == "laguerre":
        return ctx.mpf(math.factorial(n))
    if name == "neg-laguerre":
        return ctx.mpf((-1) ** n * math.factorial(n))
    if name == "arcsine":
        return ctx.pi * ctx.mpf(math.comb(2 * n, n)) / ctx.mpf(4) ** n
    if name == "lebesgue":
        f = Fraction((-1) ** n, n + 1)
        return ctx.mpf(f.numerator) / f.denominator
    raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")


def _chebyshev(mu: list, n: int):
    """Recurrence coefficients alpha_0..alpha_{n-1}, beta_0..beta_{n-1} from 2n moments."""
    alpha = [mu[1] / mu[0]]
    beta = [mu[0]]
    prev2 = [0] * (2 * n)
    prev = list(mu[: 2 * n])
    for k in range(1, n):
        cur = [0] * (2 * n)
        for l in range(k, 2 * n - k):
            cur[l] = prev[l + 1] - alpha[k - 1] * prev[l] - beta[k - 1] * prev2[l]
        alpha.append(cur[k + 1] / cur[k] - prev[k] / prev[k - 1])
        beta.append(cur[k] / prev[k - 1])
        prev2, prev = prev, cur
    return alpha, beta


def discretize_weight(name: str, degree: int, precision: int | None = None,
                      backend: Backend | None = None) -> AtomicMeasure:
    """N-point Gauss rule for a preset weight as an atomic measure.

    The first 2N moments of the rule match the weight's to relative error
    below ``2^(8-p)``.
    """
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    if degree < 2:
        raise ValueError("discretization needs N >= 2")
    if backend is None:
        backend = bigfloat(precision)
    p = backend.precision or 256
    ctx = mpmath.MPContext()
    # Hankel conditioning for factorial moments costs about N log2 N bits per step
    ctx.prec = 2 * p + 8 * degree * max(1, degree.bit_length()) + 64
    mu = [preset_moment(name, k, ctx) for k in range(2 * degree)]
    alpha, beta = _chebyshev(mu, degree)
    J = ctx.zeros(degree, degree)
    for i in range(degree):
        J[i, i] = alpha[i]
        if i + 1 < degree:
            off = ctx.sqrt(beta[i + 1])
            J[i, i + 1] = off
            J[i + 1, i] = off
    E, Q = ctx.eigsy(J)
    atoms = []
    for i in range(degree):
        x = E[i]
        w = beta[0] * Q[0, i] ** 2
        atoms.append((backend.convert(x), backend.convert(w)))
    return AtomicMeasure(atoms, backend=backend)
