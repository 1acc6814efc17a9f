"""Decomposition ``1/s^(z) = l(z) + tau^(z)`` of a reciprocal Cauchy transform.

``l(z) = d_{-2} z + d_{-1}`` and ``tau`` is a finite measure of sign opposite
to ``s``. For atomic ``s`` with ``s^ = N/D`` we have ``D = l N + R`` and
``tau^ = R/N``; ``tau`` sits on the zeros of ``N`` with residues ``R/N'``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import InsufficientMoments, PoleEvaluation, ZeroTotalMass
from ..exactnum import Polynomial, RationalFunction
from ..exactnum.sturm import sign_at_roots
from .atomic import AtomicMeasure

__all__ = ["InverseDecomposition", "InverseMeasure", "inverse_decomposition",
           "inverse_as_rational", "inverse_measure", "triangular_residuals"]


@dataclass(frozen=True)
class InverseDecomposition:
    d_minus2: object
    d_minus1: object
    tau_moments: tuple
    tau_sign: int

    @property
    def d(self) -> tuple:
        return self.tau_moments


def inverse_decomposition(c: Sequence, n: int) -> InverseDecomposition:
    """Solve the triangular system linking the moments of ``s`` and ``tau``.

    Rows: ``1 = d_{-2} c_0``, ``0 = d_{-2} c_1 + d_{-1} c_0`` and, for
    ``k >= 0``, ``0 = d_{-2} c_{k+2} + d_{-1} c_{k+1} + sum_{i<=k} d_i c_{k-i}``.
    """
    c = list(c)
    if n < 0:
        raise ValueError("n must be >= 0")
    if len(c) < n + 3:
        raise InsufficientMoments(n, len(c))
    if c[0] == 0:
        raise ZeroTotalMass()
    if isinstance(c[0], int):
        c = [Fraction(x) for x in c]
    c0 = c[0]
    dm2 = 1 / c0
    dm1 = -c[1] / (c0 * c0)
    d: list = []
    for k in range(n + 1):
        acc = dm2 * c[k + 2] + dm1 * c[k + 1]
        for i in range(k):
            acc += d[i] * c[k - i]
        d.append(-acc / c0)
    return InverseDecomposition(dm2, dm1, tuple(d), -1 if c0 > 0 else 1)


def triangular_residuals(c: Sequence, dec: InverseDecomposition) -> list:
    """Residual of every row of the triangular system (all zero when exact)."""
    c = list(c)
    d = dec.tau_moments
    rows = [dec.d_minus2 * c[0] - 1, dec.d_minus2 * c[1] + dec.d_minus1 * c[0]]
    for k in range(len(d)):
        acc = dec.d_minus2 * c[k + 2] + dec.d_minus1 * c[k + 1]
        for i in range(k + 1):
            acc += d[i] * c[k - i]
        rows.append(acc)
    return rows


def inverse_as_rational(s: AtomicMeasure) -> tuple[Polynomial, RationalFunction]:
    """Exact split ``1/s^ = l + tau^`` with ``l`` linear and ``tau^`` proper."""
    sr = s.as_rational()
    num, den = sr.num, sr.den
    ell, rem = divmod(den, num)
    if num.degree == 0:
        warnings.warn("single-atom measure: 1/s^ is linear and tau^ vanishes", stacklevel=2)
    return ell, RationalFunction(rem, num)


@dataclass(frozen=True)
class InverseMeasure:
    """The measure ``tau`` for an atomic ``s``, kept in rational form.

    ``tau^ = R/N`` with N the numerator of ``s^``; atoms of tau are the
    (real, simple) zeros of N.
    """

    source: AtomicMeasure
    ell: Polynomial
    tau_hat: RationalFunction

    @property
    def N(self) -> Polynomial:
        return self.tau_hat.den

    @property
    def R(self) -> Polynomial:
        return self.tau_hat.num

    def transform(self, z):
        d = self.N(z)
        if d == 0:
            raise PoleEvaluation(f"z={z} is an atom of tau")
        return self.R(z) / d

    def total_mass(self):
        """Leading coefficient of ``R`` (N is monic, deg R = deg N - 1)."""
        return self.R[self.N.degree - 1]

    def weighted_transform(self, g: RationalFunction) -> RationalFunction:
        """Cauchy transform of ``g dtau`` for a rational ``g`` regular on supp tau.

        The result is ``P/N`` with ``P = (A R B^{-1}) mod N`` where ``g = A/B``.
        """
        N = self.N
        if N.degree <= 0:
            return RationalFunction(Polynomial(), Polynomial([Fraction(1)]))
        binv = g.den.inverse_mod(N)
        p = (g.num * self.R % N) * binv % N
        return RationalFunction(p, N)

    def residue_signs(self) -> list[int]:
        """Exact signs of the residues ``R(rho)/N'(rho)`` at every atom of tau."""
        N = self.N
        if N.degree <= 0:
            return []
        return sign_at_roots(N, self.R * N.derivative())


def inverse_measure(s: AtomicMeasure) -> InverseMeasure:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        ell, tau = inverse_as_rational(s)
    return InverseMeasure(s, ell, tau)
