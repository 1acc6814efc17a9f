"""Generator chains, their validation, nested Cauchy transforms and moments."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..errors import MassPointAtTouch, NikishinError, SupportOverlap
from ..exactnum import RATIONAL, Backend, RationalFunction
from .atomic import AtomicMeasure, cauchy_eval

__all__ = ["GeneratorChain", "NikishinSystem", "validate_chain", "nested_transform",
           "product_moment", "build_system"]


@dataclass
class GeneratorChain:
    """Ordered generating measures plus optional touch points between neighbours.

    ``start`` is the label of the first measure (0 when the chain includes a
    root measure, 1 otherwise).
    """

    measures: list
    touch_points: list = field(default_factory=list)
    start: int = 1

    def __post_init__(self):
        if not self.touch_points:
            self.touch_points = [None] * max(len(self.measures) - 1, 0)
        if len(self.touch_points) != max(len(self.measures) - 1, 0):
            raise ValueError("need one touch-point entry per consecutive pair")


def _check_pair(a: AtomicMeasure, b: AtomicMeasure, t, label: str):
    if t is not None:
        if t in a.positions or t in b.positions:
            raise MassPointAtTouch(f"{label}: {t} is an atom")
        left_ok = a.hi < t < b.lo
        right_ok = b.hi < t < a.lo
        if not (left_ok or right_ok):
            raise SupportOverlap(f"{label}: touch point {t} does not separate the supports")
        return
    if a.lo <= b.hi and b.lo <= a.hi:
        raise SupportOverlap(f"{label}: [{a.lo}, {a.hi}] meets [{b.lo}, {b.hi}]")


class NikishinSystem:
    """Validated generator chain with write-once caches.

    Measures are addressed by label ``j`` in ``start .. start + len - 1``.
    ``weights(j, k)`` are the weights of ``s_{j,k}`` on the atoms of
    ``sigma_j``, namely ``w_{j,i} * s^_{j+1,k}(x_{j,i})``.
    """

    def __init__(self, chain: GeneratorChain, backend: Backend = RATIONAL):
        self.chain = chain
        self.backend = backend
        self._weights: dict = {}
        self._rational: dict = {}
        # atomic measures are finite sums, so every integrability condition holds
        self.integrability = "automatic (finite atomic measures)"
        self.moments_finite = True

    # indexing -------------------------------------------------------------

    @property
    def start(self) -> int:
        return self.chain.start

    @property
    def end(self) -> int:
        return self.chain.start + len(self.chain.measures) - 1

    @property
    def m(self) -> int:
        """Largest label."""
        return self.end

    def __len__(self):
        return len(self.chain.measures)

    def measure(self, j: int) -> AtomicMeasure:
        self._check(j)
        return self.chain.measures[j - self.start]

    def touch_point(self, j: int):
        """Touch point between labels ``j`` and ``j + 1`` (None when disjoint)."""
        self._check(j)
        self._check(j + 1)
        return self.chain.touch_points[j - self.start]

    def _check(self, *labels):
        for j in labels:
            if not self.start <= j <= self.end:
                raise IndexError(f"measure label {j} outside {self.start}..{self.end}")

    def atom_budget(self) -> int:
        return min(len(s) for s in self.chain.measures) - 1

    def tail(self, j: int, new_start: int = 1) -> NikishinSystem:
        """Subsystem generated by sigma_j, ..., sigma_m relabelled from ``new_start``."""
        self._check(j)
        k = j - self.start
        sub = GeneratorChain(self.chain.measures[k:], self.chain.touch_points[k:], start=new_start)
        return NikishinSystem(sub, self.backend)

    # transforms -----------------------------------------------------------

    def weights(self, j: int, k: int) -> tuple:
        self._check(j, k)
        if j > k:
            raise IndexError(f"need j <= k, got j={j}, k={k}")
        key = (j, k)
        hit = self._weights.get(key)
        if hit is not None:
            return hit
        s = self.measure(j)
        if j == k:
            ws = s.weights
        else:
            inner = self.measure(j + 1)
            inner_w = self.weights(j + 1, k)
            ws = tuple(w * cauchy_eval(inner, x, inner_w) for x, w in s.atoms)
        self._weights[key] = ws
        return ws

    def s(self, j: int, k: int) -> AtomicMeasure:
        """The measure ``s_{j,k} = <sigma_j, ..., sigma_k>`` on the atoms of sigma_j."""
        return AtomicMeasure(list(zip(self.measure(j).positions, self.weights(j, k))),
                             backend=self.backend)

    def transform(self, j: int, k: int, z):
        return cauchy_eval(self.measure(j), z, self.weights(j, k))

    def rational(self, j: int, k: int) -> RationalFunction:
        """``s^_{j,k}`` as ``N/D`` with ``D = prod (z - atoms of sigma_j)``."""
        key = (j, k)
        hit = self._rational.get(key)
        if hit is None:
            hit = self.measure(j).as_rational(self.weights(j, k))
            self._rational[key] = hit
        return hit

    def moment(self, k: int, nu: int, j: int | None = None):
        if nu < 0:
            raise ValueError("moment order must be >= 0")
        j = self.start if j is None else j
        ws = self.weights(j, k)
        zero = self.backend.zero()
        return sum((w * x ** nu for x, w in zip(self.measure(j).positions, ws)), zero)

    def exact(self) -> NikishinSystem:
        """Copy over the rational field."""
        if self.backend.exact:
            return self
        from ..exactnum import to_fraction
        ms = [m.exact() for m in self.chain.measures]
        tps = [None if t is None else to_fraction(t) for t in self.chain.touch_points]
        return NikishinSystem(GeneratorChain(ms, tps, self.start))


def validate_chain(chain: GeneratorChain, backend: Backend | None = None,
                   min_atoms: int = 2) -> NikishinSystem:
    """Check the support conditions and return a system with empty caches.

    Consecutive convex hulls must be disjoint, or be separated by a declared
    touch point that is not an atom of either measure.
    """
    if not chain.measures:
        raise NikishinError("empty generator chain")
    if backend is None:
        backend = chain.measures[0].backend
    for i, s in enumerate(chain.measures):
        if len(s) < min_atoms:
            raise NikishinError(
                f"measure {chain.start + i} has {len(s)} atoms, need at least {min_atoms}")
    for i, (a, b) in enumerate(zip(chain.measures, chain.measures[1:])):
        t = chain.touch_points[i]
        if t is not None:
            t = backend.convert(t)
            chain.touch_points[i] = t
        _check_pair(a, b, t, f"measures {chain.start + i},{chain.start + i + 1}")
    return NikishinSystem(chain, backend)


def nested_transform(sys: NikishinSystem, j: int, k: int, x):
    """``s^_{j,k}(x)`` via the recursion over the atoms of sigma_j."""
    return sys.transform(j, k, x)


def product_moment(sys: NikishinSystem, k: int, nu: int, j: int | None = None):
    """``c_nu`` of ``s_{j,k}`` (``j`` defaults to the first label)."""
    return sys.moment(k, nu, j)


def build_system(measures: Sequence[AtomicMeasure], touch_points=None, start: int = 1,
                 min_atoms: int = 2) -> NikishinSystem:
    return validate_chain(GeneratorChain(list(measures), list(touch_points or []), start),
                          min_atoms=min_atoms)
