from fractions import Fraction as F

import pytest

from nikishin.errors import BudgetExceeded, IncompleteSequence
from nikishin.exactnum import Polynomial
from nikishin.hermitepade import (
    CombinedIndex,
    MultiIndex,
    biorthogonal_sequences,
    check_complete,
    classify_multiindex,
    combined_indices,
    make_pair,
    markov_matrix_eval,
    moment_matrix,
    normality_check,
    orthogonality_residuals,
    parse_combined,
    perfectness_scan,
    series_kernel,
    solve_mixed,
    solve_type1,
    solve_type2,
    step_line,
)
from nikishin.measures import AtomicMeasure, GeneratorChain, NikishinSystem, cauchy_eval, presets


def ci(a, b):
    return CombinedIndex(MultiIndex(a), MultiIndex(b))


@pytest.fixture(scope="module")
def d1():
    return presets.d1_system()


# --- indices --------------------------------------------------------------

def test_classify_examples():
    assert classify_multiindex((3, 2, 2)) == {"decreasing": True, "star": True}
    assert classify_multiindex((1, 2, 2)) == {"decreasing": False, "star": False}
    assert classify_multiindex((2, 1, 3)) == {"decreasing": False, "star": True}


def test_combined_index_norm_rule():
    with pytest.raises(ValueError):
        ci((1, 1), (2,))
    assert str(parse_combined("1,1;1")) == str(ci((1, 1), (1,)))


def test_combined_indices_graded_order():
    idx = combined_indices(1, 0, 3)
    norms = [n.n1.norm for n in idx]
    assert norms == sorted(norms)
    assert len(idx) == 2 + 3 + 4


def test_check_complete():
    check_complete(step_line(2, 4))
    with pytest.raises(IncompleteSequence):
        check_complete([MultiIndex((1, 0)), MultiIndex((0, 2))])
    with pytest.raises(IncompleteSequence):
        check_complete([MultiIndex((1, 0)), MultiIndex((2, 1))])


# --- type II --------------------------------------------------------------

def test_type2_linear():
    sol = solve_type2(presets.one_measure_system(), (1,))
    assert sol.Q == Polynomial([-1, 1])


def test_type2_quadratic():
    sol = solve_type2(presets.one_measure_system(), (2,))
    assert sol.Q == Polynomial([F(1, 3), -2, 1])
    assert normality_check(sol).normal


def test_type2_zero_index():
    sol = solve_type2(presets.toy_system(), (0, 0, 0))
    assert sol.Q == Polynomial([1])
    assert all(p.is_zero() for p in sol.P)


def test_type2_budget():
    with pytest.raises(BudgetExceeded):
        solve_type2(presets.one_measure_system(), (3,))


@pytest.mark.parametrize("n", [(1, 0, 0), (1, 1, 0), (1, 1, 1), (2, 1, 0), (1, 0, 2)])
def test_type2_orthogonality_and_remainders(n):
    sys = presets.toy_system()
    sol = solve_type2(sys, n)
    for k in range(3):
        s0k = sys.s(0, k)
        for nu in range(n[k]):
            assert sum(w * x ** nu * sol.Q(x) for x, w in s0k.atoms) == 0
        # exact expansion of Q s^_{0,k} - P_k at infinity
        rem = sys.rational(0, k) * sol.Q - sol.P[k]
        order = rem.order_at_infinity()
        assert order is None or order >= n[k] + 1


def test_mixed_reduces_to_type2():
    sys = presets.toy_system()
    n = MultiIndex((1, 1, 1))
    t2 = solve_type2(sys, n)
    root = NikishinSystem(GeneratorChain([sys.measure(0)], [], 0))
    pair = make_pair(sys, 0, 2)
    sol = solve_mixed(pair, CombinedIndex(MultiIndex((4,)), n), enforce_budget=False)
    assert sol.a[0] == t2.Q
    assert root.end == 0


# --- type I ---------------------------------------------------------------

def test_type1_single_measure():
    sol = solve_type1(presets.one_measure_system(), (1,))
    assert sol.a[0].degree == 0
    assert sol.b.is_zero()
    assert sol.remainder_order >= 1


def test_type1_two_chain_hand_kernel():
    # coefficient of 1/z: 2 a0 + |s_{0,1}| a1 = 2 a0 - 7/3 a1 = 0
    sol = solve_type1(presets.two_chain_example(), (1, 1), enforce_budget=False)
    assert [p.coeffs for p in sol.a] == [(F(7, 6),), (1,)]
    assert sol.kernel_dimension == 1
    assert sol.remainder_order >= 2


def test_type1_remainder_order(d1):
    for n in [(1, 1, 1), (2, 1, 1), (2, 2, 1)]:
        sol = solve_type1(d1, n)
        assert sol.remainder_order >= sum(n)
        assert normality_check(sol).normal


# --- mixed type -----------------------------------------------------------

def test_desk_example_kernel_one(d1):
    pair = make_pair(d1, 1, 0)
    sol = solve_mixed(pair, ci((1, 1), (1,)))
    assert sol.kernel_dimension == 1
    assert moment_matrix(pair, sol.index).rows == 1


def test_empty_system_constant_form():
    pair = make_pair(presets.one_measure_system(), 0, 0)
    sol = solve_mixed(pair, ci((1,), (0,)))
    assert sol.a == [Polynomial([1])]


def test_budget_guard(d1):
    pair = make_pair(presets.toy_system(), 1, 0)
    with pytest.raises(BudgetExceeded):
        solve_mixed(pair, ci((3, 1), (3,)))
    with pytest.raises(BudgetExceeded):
        perfectness_scan(pair, 4)


@pytest.mark.parametrize("n", [((2, 1, 1), (3,)), ((1, 2, 1), (3,)), ((2, 2, 1), (4,))])
def test_orthogonality_exact(d1, n):
    pair = make_pair(d1, 2, 0)
    sol = solve_mixed(pair, ci(*n))
    assert all(total == 0 for _, _, total, _ in orthogonality_residuals(sol))
    assert normality_check(sol).normal


def test_orthogonality_two_sided(d1):
    pair = make_pair(d1, 1, 1)
    sol = solve_mixed(pair, ci((2, 1), (1, 1)))
    assert all(total == 0 for _, _, total, _ in orthogonality_residuals(sol))


def test_uniqueness_under_permuted_equations(d1):
    pair = make_pair(d1, 2, 1)
    n = ci((2, 2, 1), (2, 2))
    a = solve_mixed(pair, n).a
    b = solve_mixed(pair, n, row_order=[3, 1, 0, 2]).a
    assert a == b


def test_scale_invariance():
    base = presets.toy_system()
    ms = [base.measure(0), base.measure(1).scaled(F(5, 3)), base.measure(2).scaled(F(7))]
    scaled = NikishinSystem(GeneratorChain(ms, [None, None], 0))
    n = ci((1, 1, 1), (2,))
    a = solve_mixed(make_pair(base, 2, 0), n).a
    b = solve_mixed(make_pair(scaled, 2, 0), n).a
    for p, q in zip(a, b):
        assert p.monic() == q.monic()


def flatten(a, n1):
    """Coefficient vector in the solver's column order, padded per component."""
    out = []
    for p, nk in zip(a, n1):
        out += [p[r] for r in range(nk)]
    return out


def proportional(u, v):
    i = next(i for i, x in enumerate(v) if x != 0)
    c = u[i] / v[i]
    return c != 0 and [c * x for x in v] == list(u)


def test_series_oracle_small():
    pair = make_pair(presets.toy_system(), 2, 0)
    for n in combined_indices(2, 0, 3):
        sol = solve_mixed(pair, n)
        ker = series_kernel(pair, n)
        assert len(ker) == 1
        assert proportional(flatten(sol.a, n.n1), ker[0])


# --- certification --------------------------------------------------------

def test_scan_budget_one_is_trivial(d1):
    rep = perfectness_scan(make_pair(d1, 2, 0), 1)
    assert len(rep.entries) == 3
    assert rep.passed


def test_scan_toy_pair():
    rep = perfectness_scan(make_pair(presets.toy_system(), 1, 1), 1)
    assert rep.passed


def test_gram_table_banded(d1):
    pair = make_pair(d1, 1, 1)
    lam = step_line(2, 4)
    Q, P, gram = biorthogonal_sequences(pair, lam, lam)
    assert gram.band_ok()
    for i, n1 in enumerate(gram.lambda1):
        for j, n2 in enumerate(gram.lambda2):
            if n1.norm != n2.norm:
                assert gram.values[i][j] == 0


def test_gram_classical_case():
    sys = presets.toy_system()
    pair = make_pair(sys, 0, 0)
    lam = [MultiIndex((k,)) for k in range(1, 4)]
    _, _, gram = biorthogonal_sequences(pair, lam, lam)
    for i in range(3):
        for j in range(3):
            assert (gram.values[i][j] != 0) == (i == j)


def test_markov_matrix(d1):
    pair = make_pair(d1, 1, 0)
    z = F(10)
    M = markov_matrix_eval(pair, z)
    assert M[0][0] == cauchy_eval(d1.measure(0), z)
    assert M[0] == [d1.transform(0, 0, z), d1.transform(0, 1, z)]


def test_markov_asymptotics():
    sys = presets.toy_system()
    pair = make_pair(sys, 1, 1)
    t = F(10) ** 15
    M = markov_matrix_eval(pair, t)
    for j in range(2):
        for k in range(2):
            mass = sum(pair.weights(j, k))
            assert abs(t * M[j][k] - mass) < F(1, 10) ** 8


def test_single_atom_root_rejected_for_pairs():
    s = AtomicMeasure([(0, 1), (1, 1)])
    pair = make_pair(NikishinSystem(GeneratorChain([s], [], 0)), 0, 0)
    assert pair.atom_budget() == 1


def test_parallel_scan_matches_serial(d1):
    pair = make_pair(d1, 2, 0)
    serial = perfectness_scan(pair, 3, workers=1)
    forked = perfectness_scan(pair, 3, workers=2)
    assert serial.to_json() == forked.to_json()
