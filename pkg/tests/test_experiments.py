import json
from fractions import Fraction as F

import pytest

from nikishin.errors import SupportOverlap
from nikishin.exactnum import GaussianRational, Polynomial, RationalFunction
from nikishin.experiments import (
    Check,
    LIMITATION,
    balanced_sequence,
    carleman_report,
    default_grid,
    default_points,
    double_factorial_moments,
    dumps_report,
    factorial_moments,
    identity_product,
    identity_quotient,
    identity_ratio,
    identity_reversal,
    log_slope,
    product_measure,
    run_identity_suite,
    stieltjes_convergence,
    summary_text,
)
from nikishin.measures import AtomicMeasure, GeneratorChain, build_system, inverse_measure, presets
from nikishin.measures import validate_chain


def atom(x, w=1):
    return AtomicMeasure([(x, w)])


@pytest.fixture(scope="module")
def d1():
    return presets.d1_system()


# --- product identity -----------------------------------------------------

def test_product_of_two_point_masses():
    a, b = atom(0), atom(1)
    # 1/(z(z-1)) = -1/z + 1/(z-1)
    assert product_measure(a, b).atoms == [(0, -1)]
    assert product_measure(b, a).atoms == [(1, 1)]
    res = identity_product(a, b)
    assert res.passed and all(r == 0 for r in res.residuals)
    assert res.mass_residual == 0


def test_overlapping_pair_rejected():
    a = AtomicMeasure([(0, 1), (2, 1)])
    with pytest.raises(SupportOverlap):
        identity_product(a, a)


def test_product_on_desk_pair(d1):
    zs = [F(10), F(-5), GaussianRational(F(3, 2), 2)]
    res = identity_product(d1.measure(0), d1.measure(1), zs)
    assert len(res.points) == 3
    assert res.passed


def test_default_points_filtered():
    s = AtomicMeasure([(-6, 1), (-4, 1)])
    pts = default_points(s)
    assert F(-5) not in pts and F(10) in pts
    assert len(pts) == 3


# --- ratio identities -----------------------------------------------------

def test_ratio_hand_instance():
    a = AtomicMeasure([(0, 1), (1, 1)])
    b = atom(3)
    # 1/a^ = z/2 - 1/4 - 1/(8 (z - 1/2)), so tau_aa = -1/8 at 1/2
    tau = inverse_measure(a)
    assert tau.ell == Polynomial([F(-1, 4), F(1, 2)])
    assert tau.tau_hat.equals(RationalFunction(Polynomial([F(-1, 8)]), Polynomial([F(-1, 2), 1])))
    # <b,a>^ = (5/6)/(z - 3); its value at 1/2 is -1/3, so the transform is 1/(24 (z - 1/2))
    ba = product_measure(b, a)
    assert ba.atoms == [(3, F(5, 6))]
    rhs = tau.weighted_transform(ba.as_rational())
    assert rhs.equals(RationalFunction(Polynomial([F(1, 24)]), Polynomial([F(-1, 2), 1])))
    # <a,b>^/a^ tends to |<a,b>|/|a| = (-5/6)/2
    ab = product_measure(a, b)
    assert ab.total_mass() / a.total_mass() == F(-5, 12)
    for r in identity_ratio(a, b):
        assert r.passed, r.identity


def test_ratio_on_desk_pairs(d1):
    for x, y in [(0, 1), (1, 0), (1, 2)]:
        for r in identity_ratio(d1.measure(x), d1.measure(y)):
            assert r.passed, (x, y, r.identity)


def test_quotient_two_chain():
    res = identity_quotient(presets.two_chain_example())
    assert res.passed and res.residuals


def test_quotient_desk(d1):
    res = identity_quotient(d1)
    assert res.passed
    assert sorted(set(res.details["k"])) == [1, 2]


# --- reversal -------------------------------------------------------------

def test_reversal_singletons_m3():
    ms = [atom(F(1, 2), 2), atom(3, F(1, 3)), atom(5, 7)]
    res = identity_reversal(ms)
    assert res.passed
    forward = F(2) * F(1, 3) * 7 / ((F(1, 2) - 3) * (3 - 5))
    backward = F(7) * F(1, 3) * 2 / ((5 - 3) * (3 - F(1, 2)))
    assert forward == backward  # (-1)^(3-1) = +1


def test_reversal_m2_is_product(d1):
    a, b = d1.measure(0), d1.measure(1)
    rev = identity_reversal([a, b])
    prod = identity_product(a, b)
    assert rev.passed and prod.passed
    assert rev.mass_residual == 0


def test_reversal_mass_sign_m3(d1):
    ms = [d1.measure(j) for j in range(3)]
    fwd = build_system(ms)
    rev = build_system(ms[::-1])
    assert rev.s(1, 3).total_mass() == fwd.s(1, 3).total_mass()
    assert identity_reversal(ms).passed


def test_printed_minus_sign_fails_at_m2():
    # negative control: the alternative sign convention breaks the m=2 case
    a, b = AtomicMeasure([(0, 1), (1, 2)]), AtomicMeasure([(3, 1), (4, 1)])
    fwd, rev = build_system([a, b]), build_system([b, a])
    z = F(10)
    plus = rev.transform(1, 2, z) + fwd.transform(1, 2, z) - rev.transform(1, 1, z) * fwd.transform(1, 1, z)
    minus = rev.transform(1, 2, z) + fwd.transform(1, 2, z) + rev.transform(1, 1, z) * fwd.transform(1, 1, z)
    assert plus == 0
    assert minus != 0


def test_suite_on_touching_pair():
    results = run_identity_suite(presets.rational_touching_system())
    assert results and all(r.passed for r in results)
    json.dumps([r.to_json() for r in results])


# --- convergence ----------------------------------------------------------

def test_pade_exactness_single_measure():
    s = AtomicMeasure([(0, 1), (F(1, 3), 2), (F(2, 3), 1), (1, F(1, 2))])
    sys = validate_chain(GeneratorChain([s], [], 0))
    seq = [(k,) for k in range(1, 7)]
    table = stieltjes_convergence(sys, seq, default_grid(-3, -2, 5), enforce_budget=False)
    for row in table.rows:
        assert (row.sup_error == 0) == (row.norm >= 4)


def test_desk_convergence_short(d1):
    table = stieltjes_convergence(d1, balanced_sequence(3, 9), default_grid(-3, -2, 7))
    assert table.norms == list(range(1, 10))
    assert table.non_increasing(3)
    assert table.slope < -0.1
    assert table.to_csv().splitlines()[0].startswith("index,norm,err_0")
    assert table.to_gnuplot().startswith("# norm log10_sup_error")


def test_convergence_rejects_grid_on_hull(d1):
    with pytest.raises(ValueError):
        stieltjes_convergence(d1, balanced_sequence(3, 2), [F(1, 2)])


def test_convergence_needs_root(d1):
    with pytest.raises(ValueError):
        stieltjes_convergence(d1.tail(1), balanced_sequence(2, 2), [F(-3)])


def test_log_slope_of_geometric_errors():
    errs = [F(1, 2) ** k for k in range(1, 8)]
    assert log_slope(range(1, 8), errs) == pytest.approx(-0.6931471805599453)
    assert log_slope([1], [F(1)]) is None


def test_balanced_sequence_shape():
    seq = balanced_sequence(3, 5)
    assert [n.to_list() for n in seq] == [[1, 0, 0], [1, 1, 0], [1, 1, 1], [2, 1, 1], [2, 2, 1]]


# --- moment growth --------------------------------------------------------

def test_carleman_factorial_increasing():
    rep = carleman_report(factorial_moments, 200)
    assert rep.increasing
    assert len(rep.partial_sums) == 200


def test_carleman_bounded_support_linear():
    rep = carleman_report(lambda n: F(1, 2) ** n, 50)
    assert all(t >= 1 for t in rep.terms)
    assert rep.partial_sums[-1] >= 50


def test_carleman_faster_growth_slower_sums():
    a = carleman_report(factorial_moments, 100)
    b = carleman_report(double_factorial_moments, 100)
    assert b.partial_sums[-1] < a.partial_sums[-1]


def test_carleman_zero_moment_skipped():
    with pytest.warns(UserWarning):
        rep = carleman_report(lambda n: 0 if n == 2 else 1, 4)
    assert rep.skipped == [2]
    assert len(rep.terms) == 3


# --- reports --------------------------------------------------------------

def test_summary_lines_and_limitation():
    text = summary_text("run", [Check("T3", True), Check("C2", False, "slope -0.01")])
    assert "[T3] PASS" in text and "[C2] FAIL" in text
    assert text.rstrip().endswith(LIMITATION)


def test_dumps_report_deterministic():
    assert dumps_report({"b": 1, "a": [1, 2]}) == dumps_report({"a": [1, 2], "b": 1})
