import random
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nikishin.exactnum import Polynomial
from nikishin.hermitepade import CombinedIndex, MultiIndex, make_pair, solve_mixed, solve_type2
from nikishin.measures import AtomicMeasure, build_system, presets
from nikishin.rootloc import (
    LinearForm,
    at_system_zero_bound,
    count_zeros_off_delta1,
    interlacing_check,
    random_rational,
    zeros_in_hull,
)


def ci(a, b):
    return CombinedIndex(MultiIndex(a), MultiIndex(b))


@pytest.fixture(scope="module")
def unit23():
    return build_system([AtomicMeasure([(2, 1), (3, 1)])])


@pytest.fixture(scope="module")
def d1():
    return presets.d1_system()


def P(*c):
    return Polynomial([F(x) for x in c])


# --- counting off the first hull ------------------------------------------

def test_one_plus_transform(unit23):
    form = LinearForm([P(1), P(1)], unit23)
    # numerator z^2 - 3z + 1, roots (3 +- sqrt 5)/2, one of them in [2, 3]
    assert form.reduced_numerator() == [1, -3, 1]
    assert count_zeros_off_delta1(form) == 1


def test_pure_polynomial(unit23):
    form = LinearForm([P(1, 1, 1, 1)], unit23)  # (x + 1)(x^2 + 1)
    assert count_zeros_off_delta1(form) == 3


def test_transform_alone_has_zeros_inside(unit23):
    assert count_zeros_off_delta1(LinearForm([P(), P(1)], unit23)) == 0
    five = build_system([AtomicMeasure([(2 + F(k, 6), k) for k in range(1, 6)])])
    assert count_zeros_off_delta1(LinearForm([P(), P(1)], five)) == 0


def test_zero_form_rejected(unit23):
    with pytest.raises(ValueError):
        count_zeros_off_delta1(LinearForm([P(), P()], unit23))


def _numeric_off_count(form, lo, hi):
    num = form.reduced_numerator()
    with mpmath.workdps(80):
        roots = mpmath.polyroots([mpmath.mpf(c) for c in reversed(num)], maxsteps=500,
                                 extraprec=600)
        tiny = mpmath.mpf(10) ** -40
        inside = sum(1 for r in roots
                     if abs(mpmath.im(r)) < tiny and lo - tiny <= mpmath.re(r) <= hi + tiny)
    return len(roots) - inside


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2)))
def test_off_count_matches_numeric_roots(seed, n):
    if sum(n) == 0:
        return
    tail = presets.toy_system().tail(1)
    rng = random.Random(seed)
    coeffs = [Polynomial([random_rational(rng) for _ in range(k)]) for k in n]
    form = LinearForm(coeffs, tail)
    if form.is_zero():
        return
    lo, hi = tail.measure(1).lo, tail.measure(1).hi
    expected = _numeric_off_count(form, mpmath.mpf(lo.numerator) / lo.denominator,
                                  mpmath.mpf(hi.numerator) / hi.denominator)
    assert count_zeros_off_delta1(form) == expected


# --- zeros in the root hull -----------------------------------------------

def test_desk_form_zeros(d1):
    sol = solve_mixed(make_pair(d1, 1, 0), ci((2, 1), (2,)))
    rep = zeros_in_hull(sol.linear_form(), (0, 1))
    assert rep.count_in_hull == 2 == len(rep.isolating_intervals)
    assert rep.all_simple
    for a, b in rep.isolating_intervals:
        assert 0 <= a < b <= 1  # open isolating intervals


def test_constant_form_has_no_zeros(d1):
    rep = zeros_in_hull(LinearForm([P(1)], d1.tail(1)), (0, 1))
    assert rep.count_in_hull == 0


def test_orthogonal_quadratic_zeros():
    sol = solve_type2(presets.one_measure_system(), (2,))
    rep = zeros_in_hull(sol.mixed.linear_form(), (0, 2))
    assert rep.count_in_hull == 2 and rep.all_simple


def test_double_zero_is_not_simple(unit23):
    form = LinearForm([P(F(1, 4), -1, 1)], unit23)  # (x - 1/2)^2
    rep = zeros_in_hull(form, (0, 1))
    assert rep.count_in_hull == 1
    assert not rep.all_simple


# --- interlacing ----------------------------------------------------------

def test_classical_interlacing():
    sys = presets.one_measure_system()
    q1 = solve_type2(sys, (1,)).mixed.linear_form()
    q2 = solve_type2(sys, (2,)).mixed.linear_form()
    assert interlacing_check(q1, q2, (0, 2))


def test_identical_forms_collide(unit23):
    f = LinearForm([P(F(1, 3), -2, 1)], unit23)
    res = interlacing_check(f, f, (0, 2))
    assert not res
    assert "common zero" in res.finding


def test_misplaced_zero_fails(unit23):
    a = LinearForm([P(-F(1, 10), 1)], unit23)  # zero at 1/10, outside the gap
    b = LinearForm([P(F(1, 3), -2, 1)], unit23)
    assert not interlacing_check(a, b, (0, 2))


def test_desk_diagonal_interlacing(d1):
    pair = make_pair(d1, 1, 0)
    a = solve_mixed(pair, ci((2, 1), (2,))).linear_form()
    b = solve_mixed(pair, ci((2, 2), (3,))).linear_form()
    assert interlacing_check(a, b, (0, 1))


# --- AT trials ------------------------------------------------------------

def test_at_bound_two_atoms(unit23):
    rep = at_system_zero_bound(unit23, (1, 1), trials=50, seed=42)
    assert rep.max_off_delta1 <= 1
    assert rep.certified


def test_at_zero_component(unit23):
    rep = at_system_zero_bound(unit23, (2, 0), trials=20, seed=1)
    assert rep.bound == 1 and rep.certified


def test_at_constant_forms(unit23):
    rep = at_system_zero_bound(unit23, (1, 0), trials=10, seed=3)
    assert rep.max_off_delta1 == 0


def test_at_reproducible(d1):
    tail = d1.tail(1)
    a = at_system_zero_bound(tail, (2, 1, 1), trials=10, seed=42)
    b = at_system_zero_bound(tail, (2, 1, 1), trials=10, seed=42)
    assert a.to_json() == b.to_json()


def test_at_delta_must_avoid_first_hull(unit23):
    with pytest.raises(ValueError):
        at_system_zero_bound(unit23, (1, 1), trials=1, seed=0, delta=(F(5, 2), 4))
    rep = at_system_zero_bound(unit23, (2, 1), trials=20, seed=0, delta=(-5, 1))
    assert rep.max_in_delta <= 2


def test_random_rational_range():
    rng = random.Random(0)
    for _ in range(200):
        x = random_rational(rng)
        assert -10 <= x <= 10 and x.denominator <= 16
