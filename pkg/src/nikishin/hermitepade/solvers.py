"""Mixed, type I and type II Hermite-Padé solvers built on moment matrices.

For a compatible pair the unknowns are the coefficients ``a_{k,r}``
(k = 0..m1, r < n1_k). Equation ``(j, nu)`` (j = 0..m2, nu < n2_j) reads
``sum a_{k,r} c_{j,k,nu+r} = 0`` with
``c_{j,k,n} = int x^n s2^_{1,j} s1^_{1,k} dsigma_0`` and ``s^_{1,0} = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from ..errors import BudgetExceeded, NikishinError
from ..exactnum import Matrix, Polynomial, RationalFunction, nullspace
from ..measures import GeneratorChain, NikishinSystem
from ..rootloc import LinearForm
from .indices import CombinedIndex, MultiIndex

__all__ = ["CompatiblePair", "make_pair", "VectorPolynomialSolution", "TypeIISolution",
           "TypeISolution", "NormalityReport", "solve_mixed", "solve_type1", "solve_type2",
           "normality_check", "moment_matrix", "markov_matrix_eval", "orthogonality_residuals",
           "KernelError", "solution_to_json"]


class KernelError(NikishinError):
    pass


def _prefix(system: NikishinSystem, m: int) -> NikishinSystem:
    ms = system.chain.measures[: m + 1]
    tps = system.chain.touch_points[:m]
    return NikishinSystem(GeneratorChain(list(ms), list(tps), system.start), system.backend)


class CompatiblePair:
    """Two Nikishin systems sharing their root measure sigma_0 (labels start at 0).

    Holds per-atom tables ``u_j(x_i) = s2^_{1,j}(x_i)`` and
    ``v_k(x_i) = s1^_{1,k}(x_i)`` and caches the moments ``c_{j,k,n}``.
    """

    def __init__(self, S1: NikishinSystem, S2: NikishinSystem):
        if S1.start != 0 or S2.start != 0:
            raise ValueError("compatible systems must include the root measure at label 0")
        r1, r2 = S1.measure(0), S2.measure(0)
        if r1 is not r2 and r1.atoms != r2.atoms:
            raise ValueError("systems do not share the root measure")
        self.S1, self.S2 = S1, S2
        self.backend = S1.backend
        self.root = r1
        # atomic measures: every entry of W is a finite sum, hence integrable
        self.integrability = "automatic (finite atomic measures)"
        one = self.backend.one()
        xs = self.root.positions
        self.u = [[one] * len(xs)] + [[S2.transform(1, j, x) for x in xs]
                                      for j in range(1, S2.end + 1)]
        self.v = [[one] * len(xs)] + [[S1.transform(1, k, x) for x in xs]
                                      for k in range(1, S1.end + 1)]
        self._w: dict = {}
        self._mom: dict = {}

    @property
    def m1(self) -> int:
        return self.S1.end

    @property
    def m2(self) -> int:
        return self.S2.end

    def atom_budget(self) -> int:
        return min(self.S1.atom_budget(), self.S2.atom_budget())

    def swapped(self) -> CompatiblePair:
        return CompatiblePair(self.S2, self.S1)

    def weights(self, j: int, k: int) -> list:
        """Weights of ``s2^_{1,j} s1^_{1,k} dsigma_0`` on the root atoms."""
        key = (j, k)
        w = self._w.get(key)
        if w is None:
            w = [wi * uj * vk for wi, uj, vk in zip(self.root.weights, self.u[j], self.v[k])]
            self._w[key] = w
        return w

    def moment(self, j: int, k: int, n: int):
        key = (j, k)
        row = self._mom.setdefault(key, [])
        if len(row) <= n:
            w = self.weights(j, k)
            xs = self.root.positions
            zero = self.backend.zero()
            for p in range(len(row), n + 1):
                row.append(sum((wi * x ** p for wi, x in zip(w, xs)), zero))
        return row[n]


def make_pair(system: NikishinSystem, m1: int, m2: int,
              second: NikishinSystem | None = None) -> CompatiblePair:
    """Pair of prefixes ``(sigma_0..sigma_m1)`` and ``(sigma_0..sigma_m2)`` of one chain.

    ``second`` replaces the prefix for S2 when the two systems differ beyond the root.
    """
    if system.start != 0:
        raise ValueError("system must start at the root measure (label 0)")
    if m1 > system.end:
        raise ValueError(f"m1={m1} exceeds the chain length")
    S1 = _prefix(system, m1)
    if second is not None:
        if m2 > second.end:
            raise ValueError(f"m2={m2} exceeds the second chain length")
        S2 = _prefix(second, m2)
        S2.chain.measures[0] = S1.measure(0)
    else:
        if m2 > system.end:
            raise ValueError(f"m2={m2} exceeds the chain length")
        S2 = S1 if m2 == m1 else _prefix(system, m2)
    return CompatiblePair(S1, S2)


@dataclass
class VectorPolynomialSolution:
    a: list
    index: CombinedIndex
    kernel_dimension: int
    pair: CompatiblePair = field(repr=False)

    def linear_form(self) -> LinearForm:
        return LinearForm(self.a, self.pair.S1)

    @property
    def form(self) -> RationalFunction:
        return self.linear_form().as_rational()

    def degrees(self) -> list[int]:
        return [p.degree for p in self.a]


@dataclass
class TypeIISolution:
    Q: Polynomial
    P: list
    remainder_orders: list
    index: MultiIndex
    kernel_dimension: int
    mixed: VectorPolynomialSolution = field(repr=False)


@dataclass
class TypeISolution:
    a: list
    b: Polynomial
    remainder_order: int
    index: MultiIndex
    kernel_dimension: int
    mixed: VectorPolynomialSolution = field(repr=False)


@dataclass
class NormalityReport:
    normal: bool
    degrees: list
    kernel_dim: int
    expected_degrees: list

    def to_json(self) -> dict:
        return {"normal": self.normal, "degrees": self.degrees, "kernel_dim": self.kernel_dim,
                "expected_degrees": self.expected_degrees}


def _columns(n1: MultiIndex) -> list[tuple[int, int]]:
    return [(k, r) for k in range(len(n1)) for r in range(n1[k])]


def _rows(n2: MultiIndex) -> list[tuple[int, int]]:
    return [(j, nu) for j in range(len(n2)) for nu in range(n2[j])]


def moment_matrix(pair: CompatiblePair, n: CombinedIndex, row_order=None) -> Matrix:
    """The ``|n2| x |n1|`` matrix ``c_{j,k,nu+r}``; ``row_order`` permutes equations."""
    rows = _rows(n.n2)
    if row_order is not None:
        rows = [rows[i] for i in row_order]
    cols = _columns(n.n1)
    return Matrix.from_rows([[pair.moment(j, k, nu + r) for k, r in cols] for j, nu in rows],
                            cols=len(cols))


def _check_shape(pair: CompatiblePair, n: CombinedIndex, enforce_budget: bool):
    if len(n.n1) != pair.m1 + 1 or len(n.n2) != pair.m2 + 1:
        raise ValueError(f"index {n} does not match m1={pair.m1}, m2={pair.m2}")
    if enforce_budget and n.n1.norm > pair.atom_budget():
        raise BudgetExceeded(
            f"|n1|={n.n1.norm} exceeds the atom budget {pair.atom_budget()} "
            "(an N-atom stand-in certifies indices up to N-1)")


def _vector_to_polys(v: list, n1: MultiIndex, zero) -> list[Polynomial]:
    out, pos = [], 0
    for k in range(len(n1)):
        out.append(Polynomial(v[pos:pos + n1[k]]))
        pos += n1[k]
    return out


def _normalize(polys: list[Polynomial], n1: MultiIndex, backend) -> list[Polynomial]:
    """Make the last component with a nonzero leading coefficient monic."""
    lead = None
    for k in range(len(n1) - 1, -1, -1):
        if n1[k] and polys[k][n1[k] - 1] != 0 and polys[k].degree == n1[k] - 1:
            lead = polys[k][n1[k] - 1]
            break
    if lead is None:
        for p in reversed(polys):
            if not p.is_zero():
                lead = p.lc()
                break
    return [p / lead for p in polys]


def solve_mixed(pair: CompatiblePair, n: CombinedIndex, enforce_budget: bool = True,
                row_order=None) -> VectorPolynomialSolution:
    """Mixed-type vector polynomial for ``n`` from the kernel of the moment matrix."""
    _check_shape(pair, n, enforce_budget)
    b = pair.backend
    ncols = n.n1.norm
    if n.n2.norm == 0:
        basis = [[b.one() if i == c else b.zero() for i in range(ncols)] for c in range(ncols)]
    else:
        basis = nullspace(moment_matrix(pair, n, row_order), b)
    if not basis:
        raise KernelError(f"empty kernel at {n}: the moment matrix has full column rank")
    polys = _vector_to_polys(basis[0], n.n1, b.zero())
    polys = _normalize(polys, n.n1, b)
    return VectorPolynomialSolution(polys, n, len(basis), pair)


def _root_only(system: NikishinSystem) -> NikishinSystem:
    return _prefix(system, 0)


def solve_type2(system: NikishinSystem, n: MultiIndex, enforce_budget: bool = True) -> TypeIISolution:
    """Common denominator ``Q_n`` with ``int x^nu Q ds_{0,k} = 0`` for ``nu < n_k``."""
    n = MultiIndex(n)
    if len(n) != system.end + 1:
        raise ValueError(f"index {n} needs {system.end + 1} components")
    if enforce_budget and n.norm > system.atom_budget():
        raise BudgetExceeded(f"|n|={n.norm} exceeds the atom budget {system.atom_budget()}")
    root = _root_only(system)
    pair = CompatiblePair(root, system) if system.end else CompatiblePair(root, root)
    ci = CombinedIndex(MultiIndex((n.norm + 1,)), n)
    if n.norm == 0:
        one = system.backend.one()
        sol = VectorPolynomialSolution([Polynomial([one])], ci, 1, pair)
    else:
        # the common denominator has |n| + 1 coefficients; the budget applies to |n|
        sol = solve_mixed(pair, ci, enforce_budget=False)
    Q = sol.a[0]
    P, orders = [], []
    for k in range(system.end + 1):
        r = system.rational(0, k)
        q, rem = divmod(Q * r.num, r.den)
        P.append(q)
        orders.append(None if rem.is_zero() else r.den.degree - rem.degree)
    return TypeIISolution(Q, P, orders, n, sol.kernel_dimension, sol)


def solve_type1(system: NikishinSystem, n: MultiIndex, enforce_budget: bool = True) -> TypeISolution:
    """Polynomials ``a_k`` with ``sum a_k s^_{0,k} - b = O(z^{-|n|})``."""
    n = MultiIndex(n)
    if len(n) != system.end + 1:
        raise ValueError(f"index {n} needs {system.end + 1} components")
    if n.norm == 0:
        raise ValueError("type I needs a nonzero multi-index")
    root = _root_only(system)
    pair = CompatiblePair(system, root)
    ci = CombinedIndex(n, MultiIndex((n.norm - 1,)))
    sol = solve_mixed(pair, ci, enforce_budget)
    total = RationalFunction(Polynomial())
    for k, a in enumerate(sol.a):
        if not a.is_zero():
            total = total + system.rational(0, k) * a
    b, proper = total.split()
    order = proper.order_at_infinity()
    return TypeISolution(sol.a, b, order, n, sol.kernel_dimension, sol)


def normality_check(sol) -> NormalityReport:
    """Kernel dimension one and full degrees, decided on exact leading coefficients."""
    if isinstance(sol, TypeIISolution):
        expected = [sol.index.norm]
        degrees = [sol.Q.degree]
        kdim = sol.kernel_dimension
    else:
        idx = sol.index.n1 if isinstance(sol, VectorPolynomialSolution) else sol.index
        expected = [c - 1 for c in idx]
        degrees = [p.degree for p in sol.a]
        kdim = sol.kernel_dimension
    return NormalityReport(kdim == 1 and degrees == expected, degrees, kdim, expected)


def orthogonality_residuals(sol: VectorPolynomialSolution) -> list:
    """``int x^nu s2^_{1,j} A_n dsigma_0`` for every equation, via direct evaluation.

    ``A_n`` is evaluated at the root atoms from its polynomials and the S1
    tables, independently of the moment matrix.
    """
    pair, n = sol.pair, sol.index
    xs, ws = pair.root.positions, pair.root.weights
    vals = []
    for i, x in enumerate(xs):
        acc = pair.backend.zero()
        for k, p in enumerate(sol.a):
            if not p.is_zero():
                acc = acc + p(x) * pair.v[k][i]
        vals.append(acc)
    out = []
    for j in range(len(n.n2)):
        for nu in range(n.n2[j]):
            terms = [w * x ** nu * pair.u[j][i] * vals[i] for i, (x, w) in enumerate(zip(xs, ws))]
            total = sum(terms, pair.backend.zero())
            scale = sum((abs(t) for t in terms), pair.backend.zero())
            out.append((j, nu, total, scale))
    return out


def markov_matrix_eval(pair: CompatiblePair, z) -> list[list]:
    """Entry ``(j, k)`` is ``sum_i w_i u_j(x_i) v_k(x_i) / (z - x_i)``."""
    from ..measures.atomic import cauchy_eval
    return [[cauchy_eval(pair.root, z, pair.weights(j, k)) for k in range(pair.m1 + 1)]
            for j in range(pair.m2 + 1)]


def solution_to_json(sol) -> dict:
    return {"index": str(sol.index), "a": [p.to_strings() for p in sol.a],
            "kernel_dimension": sol.kernel_dimension}
