import math
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nikishin.exactnum import (
    DegenerateSystem,
    GaussianRational,
    Matrix,
    Polynomial,
    RationalFunction,
    bigfloat,
    count_with_multiplicity,
    format_rational,
    isolate_roots,
    nullspace,
    parse_rational,
    rank,
    sign_at_roots,
    square_free_part,
    sturm_count,
    to_fraction,
)

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(small, min_size=0, max_size=6).map(Polynomial)


# --- linear algebra -------------------------------------------------------

def test_nullspace_single_row():
    assert nullspace(Matrix.from_rows([[1, 1]])) == [[1, -1]]


def test_nullspace_identity_is_empty():
    eye = Matrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert nullspace(eye) == []
    assert rank(eye) == 3


def test_nullspace_empty_matrix_is_degenerate():
    with pytest.raises(DegenerateSystem, match="degenerate system"):
        nullspace(Matrix.from_rows([]))


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=3))
def test_nullspace_vectors_are_annihilated(rows):
    M = Matrix.from_rows(rows)
    basis = nullspace(M)
    assert len(basis) == 4 - rank(M)
    for v in basis:
        assert all(x == 0 for x in M.apply(v))


def test_bigfloat_rank_tolerance():
    b = bigfloat(128)
    eps = b.ctx.mpf(2) ** -100
    M = Matrix.from_rows([[b.one(), b.one()], [b.one(), b.one() + eps]])
    assert rank(M, b) == 1


# --- polynomials ----------------------------------------------------------

@given(polys, polys, polys)
def test_ring_laws(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert (p - p).is_zero()


@given(polys, polys.filter(lambda p: not p.is_zero()))
def test_divmod_reconstructs(p, d):
    q, r = divmod(p, d)
    assert q * d + r == p
    assert r.is_zero() or r.degree < d.degree


@given(polys, polys)
def test_gcd_divides_both(p, q):
    g = p.gcd(q)
    if g.is_zero():
        assert p.is_zero() and q.is_zero()
        return
    assert (p % g).is_zero() and (q % g).is_zero()


def test_inverse_mod():
    m = Polynomial.from_roots([F(1), F(2), F(5, 3)])
    a = Polynomial([F(3), F(-1, 2), F(7)])
    inv = a.inverse_mod(m)
    assert ((a * inv) % m) == Polynomial([F(1)])


def test_inverse_mod_rejects_common_factor():
    m = Polynomial.from_roots([F(1), F(2)])
    with pytest.raises(ValueError):
        Polynomial.from_roots([F(1)]).inverse_mod(m)


def test_rational_function_laurent():
    # 1/(z - 2) = z^-1 + 2 z^-2 + 4 z^-3 + ...
    f = RationalFunction(Polynomial([1]), Polynomial([-2, 1]))
    assert f.laurent(4) == [1, 2, 4, 8]
    assert f.order_at_infinity() == 1


# --- scalars --------------------------------------------------------------

def test_to_fraction_keeps_sign_of_bigfloat():
    b = bigfloat(64)
    assert to_fraction(b.convert(F(-3, 4))) == F(-3, 4)
    assert to_fraction(b.convert(F(5, 8))) == F(5, 8)
    assert to_fraction(b.convert(-6)) == -6


def test_rational_round_trip():
    for s in ["3/4", "-7", "0", "22/7"]:
        assert format_rational(parse_rational(s)) == s


def test_bigfloat_precision_floor():
    with pytest.raises(ValueError):
        bigfloat(32)


def test_gaussian_rational_arithmetic():
    z = GaussianRational(F(3, 2), 2)
    w = GaussianRational(F(1, 3), -1)
    assert (z * w) / w == z
    assert z - z == 0
    assert GaussianRational(0, 1) * GaussianRational(0, 1) == -1


# --- Sturm counting -------------------------------------------------------

def test_sturm_sqrt2():
    assert sturm_count(Polynomial([-2, 0, 1]), 0, 2) == 1


def test_sturm_orthogonal_quadratic():
    assert sturm_count(Polynomial([F(1, 3), -2, 1]), 0, 2) == 2


def test_sturm_no_real_roots():
    assert sturm_count(Polynomial([1, 0, 1]), -10, 10) == 0


def test_sturm_closed_endpoints():
    p = Polynomial.from_roots([F(0), F(1)])
    assert sturm_count(p, 0, 1) == 0
    assert sturm_count(p, 0, 1, open_lo=False, open_hi=False) == 2


def test_isolate_sqrt2_to_width():
    (a, b), = isolate_roots(Polynomial([-2, 0, 1]), 0, 2, width=F(1, 1024))
    assert b - a < F(1, 1024)
    assert a * a < 2 < b * b


def test_isolate_two_rational_roots():
    p = Polynomial.from_roots([F(1, 2), F(3, 2)])
    ivs = isolate_roots(p, 0, 2)
    assert len(ivs) == 2
    assert ivs[0][1] <= ivs[1][0]
    for (a, b), r in zip(ivs, [F(1, 2), F(3, 2)]):
        assert a <= r <= b


def test_multiplicity_count():
    p = Polynomial.from_roots([F(1), F(1), F(1), F(3)])
    assert sturm_count(p, 0, 4) == 2
    assert count_with_multiplicity(p, 0, 4) == 4
    assert square_free_part(p).degree == 2


def test_sign_at_roots():
    f = Polynomial.from_roots([F(-1), F(2)])
    g = Polynomial([0, 1])
    assert sign_at_roots(f, g) == [-1, 1]


# Oracle: polynomials assembled from known factors, so the number of real
# roots in an interval is known by construction without any root finder.
factor = st.one_of(
    st.tuples(st.just("lin"), small),
    st.tuples(st.just("sq"), st.integers(1, 30)),
    st.tuples(st.just("pos"), st.integers(1, 30)),
)


def _poly(kind, c):
    if kind == "lin":
        return Polynomial([-c, 1])
    if kind == "sq":
        return Polynomial([-c, 0, 1])
    return Polynomial([c, 0, 1])


def _sqrt_inside(c, s, lo, hi):
    """Whether ``s * sqrt(c)`` lies strictly inside ``(lo, hi)``, decided by squaring."""
    def above(t):
        return (t < 0 or t * t < c) if s > 0 else (t < 0 and t * t > c)

    def below(t):
        return (t > 0 and t * t > c) if s > 0 else (t > 0 or t * t < c)

    return above(lo) and below(hi)


def _known_roots(factors, lo, hi):
    roots = set()
    for kind, c in factors:
        if kind == "lin":
            if lo < c < hi:
                roots.add(F(c))
        elif kind == "sq":
            r = math.isqrt(c)
            for s in (1, -1):
                if _sqrt_inside(c, s, lo, hi):
                    roots.add(F(s * r) if r * r == c else ("sqrt", s, c))
    return roots


@settings(max_examples=80, deadline=None)
@given(st.lists(factor, min_size=1, max_size=4), small, small)
def test_sturm_matches_constructed_roots(factors, a, b):
    lo, hi = min(a, b), max(a, b) + (1 if a == b else 0)
    p = Polynomial([1])
    for kind, c in factors:
        p = p * _poly(kind, c)
    assert sturm_count(p, lo, hi) == len(_known_roots(factors, lo, hi))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=2, max_size=9).filter(lambda c: c[-1] != 0))
def test_sturm_matches_numeric_root_finder(coeffs):
    # second oracle: high-precision numeric roots, counted away from the ends
    p = Polynomial([F(c) for c in coeffs])
    sf = square_free_part(p)
    if sf.degree < 1:
        return
    with mpmath.workdps(60):
        cs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(sf.coeffs)]
        roots = mpmath.polyroots(cs, maxsteps=400, extraprec=400)
        tiny = mpmath.mpf(10) ** -30
        real = [mpmath.re(r) for r in roots if abs(mpmath.im(r)) < tiny]
        lo, hi = mpmath.mpf(-5) / 2, mpmath.mpf(7) / 3
        if any(abs(r - lo) < tiny or abs(r - hi) < tiny for r in real):
            return
        expected = sum(1 for r in real if lo < r < hi)
    assert sturm_count(p, F(-5, 2), F(7, 3)) == expected
