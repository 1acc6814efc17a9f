"""Exact checks of the product, ratio, quotient and reversal identities.

Every object involved is a rational function of z when the measures are
atomic, so all residuals are computed in exact arithmetic. Big-float
measures are first converted to their (lossless) rational copies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..errors import MassPointAtTouch, SupportOverlap
from ..exactnum import GaussianRational, RationalFunction, format_rational, to_fraction
from ..measures import AtomicMeasure, NikishinSystem, build_system, inverse_measure

__all__ = ["IdentityResult", "DEFAULT_POINTS", "default_points", "product_measure",
           "identity_product", "identity_ratio", "identity_quotient", "identity_reversal",
           "run_identity_suite", "point_to_json"]

DEFAULT_POINTS = (Fraction(10), Fraction(-5), GaussianRational(Fraction(3, 2), 2),
                  GaussianRational(Fraction(1, 3), -1))


def point_to_json(z):
    if isinstance(z, GaussianRational):
        return [format_rational(z.re), format_rational(z.im)]
    return format_rational(z)


def _residual_to_json(r):
    if isinstance(r, GaussianRational):
        return [format_rational(r.re), format_rational(r.im)]
    return format_rational(r)


@dataclass
class IdentityResult:
    identity: str
    points: list
    residuals: list
    exact: bool = True
    mass_residual: object = None
    note: str = ""
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        ok = all(r == 0 for r in self.residuals)
        if self.mass_residual is not None:
            ok = ok and self.mass_residual == 0
        return ok

    def to_json(self) -> dict:
        out = {
            "identity": self.identity,
            "points": [point_to_json(z) for z in self.points],
            "residuals": [_residual_to_json(r) for r in self.residuals],
            "exact": self.exact,
            "passed": self.passed,
        }
        if self.mass_residual is not None:
            out["mass_residual"] = _residual_to_json(self.mass_residual)
        if self.note:
            out["note"] = self.note
        if self.details:
            out["details"] = self.details
        return out


def _exact(m: AtomicMeasure) -> AtomicMeasure:
    return m if m.backend.exact else m.exact()


def _real_part(z):
    return z.re if isinstance(z, GaussianRational) else z


def default_points(*measures: AtomicMeasure, zs: Sequence | None = None) -> list:
    """Sample points not lying on the closed hull of any given measure."""
    zs = DEFAULT_POINTS if zs is None else zs
    out = []
    for z in zs:
        if isinstance(z, GaussianRational) and z.im != 0:
            out.append(z)
            continue
        x = _real_part(z)
        if any(m.lo <= x <= m.hi for m in measures):
            continue
        out.append(z)
    return out


def _check_separated(a: AtomicMeasure, b: AtomicMeasure) -> None:
    if a.hi < b.lo or b.hi < a.lo:
        return
    if a.hi == b.lo or b.hi == a.lo:
        raise MassPointAtTouch()
    raise SupportOverlap()


def product_measure(a: AtomicMeasure, b: AtomicMeasure) -> AtomicMeasure:
    """``<a, b>``: the measure ``b^(x) da(x)`` carried by the atoms of ``a``."""
    return AtomicMeasure([(x, w * b.cauchy(x)) for x, w in a.atoms], backend=a.backend)


def _prepare(a, b, zs):
    a, b = _exact(a), _exact(b)
    _check_separated(a, b)
    return a, b, default_points(a, b, zs=zs)


def identity_product(a: AtomicMeasure, b: AtomicMeasure, zs: Sequence | None = None) -> IdentityResult:
    """``a^ b^ - <a,b>^ - <b,a>^`` at each point, plus ``|<a,b>| + |<b,a>|``."""
    a, b, pts = _prepare(a, b, zs)
    ab, ba = product_measure(a, b), product_measure(b, a)
    fa, fb, fab, fba = a.as_rational(), b.as_rational(), ab.as_rational(), ba.as_rational()
    res = [fa(z) * fb(z) - fab(z) - fba(z) for z in pts]
    mass = ab.total_mass() + ba.total_mass()
    return IdentityResult("product", pts, res, mass_residual=mass)


def identity_ratio(a: AtomicMeasure, b: AtomicMeasure, zs: Sequence | None = None) -> list[IdentityResult]:
    """Residuals of the two ratio identities for the pair ``(a, b)``.

    ``a^/<a,b>^ = |a|/|<a,b>| + transform of (<b,a>^/b^) against tau_ab`` and
    ``<a,b>^/a^ = |<a,b>|/|a| - transform of <b,a>^ against tau_aa``, where
    ``tau_ab`` and ``tau_aa`` are the inverse measures of ``<a,b>`` and ``a``.
    """
    a, b, pts = _prepare(a, b, zs)
    ab, ba = product_measure(a, b), product_measure(b, a)
    fa, fb, fab, fba = a.as_rational(), b.as_rational(), ab.as_rational(), ba.as_rational()
    tau_ab, tau_aa = inverse_measure(ab), inverse_measure(a)
    ca, cab = a.total_mass(), ab.total_mass()
    # <b,a> and b share their atoms, so the quotient reduces to N_ba / N_b
    g = RationalFunction(fba.num, fb.num) if fba.den == fb.den else fba * fb.inverse()
    rhs1 = tau_ab.weighted_transform(g)
    rhs2 = tau_aa.weighted_transform(fba)
    r1 = [fa(z) / fab(z) - ca / cab - rhs1(z) for z in pts]
    r2 = [fab(z) / fa(z) - cab / ca + rhs2(z) for z in pts]
    return [IdentityResult("ratio-inverse-of-product", pts, r1),
            IdentityResult("ratio-product-over-base", pts, r2)]


def identity_quotient(system: NikishinSystem, zs: Sequence | None = None) -> IdentityResult:
    """``s^_{1,k}/s^_{1,1} = |s_{1,k}|/|s_{1,1}| - <tau_11, <s_{2,k}, sigma_1>>^``.

    Labels are relative to the system's first measure, so ``s_{1,1}`` is the
    first generator itself. Every ``k`` from the second label to the last is
    checked.
    """
    sys = system.exact()
    j1 = sys.start
    if sys.end < j1 + 1:
        raise ValueError("quotient identity needs at least two measures")
    s1 = sys.measure(j1)
    pts = default_points(*[sys.measure(j) for j in range(j1, sys.end + 1)], zs=zs)
    tau11 = inverse_measure(s1)
    f11 = sys.rational(j1, j1)
    res, ks = [], []
    for k in range(j1 + 1, sys.end + 1):
        fk = sys.rational(j1, k)
        inner = product_measure(sys.s(j1 + 1, k), s1).as_rational()
        rhs = tau11.weighted_transform(inner)
        c = sys.s(j1, k).total_mass() / s1.total_mass()
        for z in pts:
            res.append(fk(z) / f11(z) - c + rhs(z))
            ks.append(k)
    return IdentityResult("quotient", pts, res, details={"k": ks})


def _reversed_system(measures: list, touch_points: list) -> NikishinSystem:
    return build_system(measures[::-1], touch_points[::-1], start=1, min_atoms=1)


def identity_reversal(measures: Sequence[AtomicMeasure], touch_points: Sequence | None = None,
                      zs: Sequence | None = None) -> IdentityResult:
    """Alternating-sum relation between a chain and its reversal.

    ``<m..1>^ + sum_{k=1}^{m-1} (-1)^k <m..k+1>^ <1..k>^ + (-1)^m <1..m>^ = 0``,
    together with ``|<m..1>| = (-1)^(m-1) |<1..m>|``. For ``m = 2`` this is the
    product identity.
    """
    ms = [_exact(s) for s in measures]
    m = len(ms)
    if m < 2:
        raise ValueError("reversal identity needs at least two measures")
    tps = list(touch_points) if touch_points is not None else [None] * (m - 1)
    tps = [None if t is None else to_fraction(t) for t in tps]
    fwd = build_system(ms, tps, start=1, min_atoms=1)
    rev = _reversed_system(ms, tps)
    pts = default_points(*ms, zs=zs)
    F = [None] + [fwd.rational(1, k) for k in range(1, m + 1)]
    R = [None] + [rev.rational(1, k) for k in range(1, m + 1)]
    res = []
    for z in pts:
        acc = R[m](z) + (-1) ** m * F[m](z)
        for k in range(1, m):
            acc = acc + (-1) ** k * R[m - k](z) * F[k](z)
        res.append(acc)
    mass = rev.s(1, m).total_mass() - (-1) ** (m - 1) * fwd.s(1, m).total_mass()
    return IdentityResult(f"reversal-m{m}", pts, res, mass_residual=mass)


def run_identity_suite(system: NikishinSystem, zs: Sequence | None = None) -> list[IdentityResult]:
    """Every identity on consecutive generator pairs and on the whole chain."""
    labels = list(range(system.start, system.end + 1))
    ms = [system.measure(j) for j in labels]
    tps = [system.touch_point(j) for j in labels[:-1]]
    out: list[IdentityResult] = []
    for j in range(len(ms) - 1):
        a, b = ms[j], ms[j + 1]
        for x, y, tag in ((a, b, f"{labels[j]},{labels[j + 1]}"), (b, a, f"{labels[j + 1]},{labels[j]}")):
            r = identity_product(x, y, zs)
            r.details["pair"] = tag
            out.append(r)
            for r in identity_ratio(x, y, zs):
                r.details["pair"] = tag
                out.append(r)
    if len(ms) >= 2:
        out.append(identity_quotient(system, zs))
    for m in range(2, len(ms) + 1):
        out.append(identity_reversal(ms[:m], tps[:m - 1], zs))
    return out
