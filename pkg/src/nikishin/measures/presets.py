"""Ready-made desk systems used by the tests, the CLI and the shipped data files."""

from __future__ import annotations

from fractions import Fraction

from ..exactnum import Backend, bigfloat
from .atomic import AtomicMeasure
from .discretize import discretize_weight
from .system import GeneratorChain, NikishinSystem, validate_chain

__all__ = ["d1_measures", "d1_system", "one_measure_system", "toy_system",
           "arcsine_lebesgue_system", "laguerre_system", "two_chain_example",
           "rational_touching_system"]


def _grid(offset: int, count: int = 24, den: int = 25) -> list[Fraction]:
    return [offset + Fraction(k, den) for k in range(1, count + 1)]


def d1_measures(count: int = 24) -> list[AtomicMeasure]:
    """sigma_0 on (0,1), sigma_1 on (2,3), sigma_2 on (4,5); equal weights 1/count."""
    w = Fraction(1, count)
    den = count + 1
    return [AtomicMeasure([(x, w) for x in _grid(off, count, den)]) for off in (0, 2, 4)]


def d1_system(count: int = 24) -> NikishinSystem:
    return validate_chain(GeneratorChain(d1_measures(count), start=0))


def one_measure_system() -> NikishinSystem:
    """Unit atoms at 0, 1, 2: the classical single-measure case."""
    s = AtomicMeasure([(0, 1), (1, 1), (2, 1)])
    return validate_chain(GeneratorChain([s], start=0))


def toy_system() -> NikishinSystem:
    """Small rational chain: 4 atoms each in (0,1), (2,3) and (4,5), uneven weights."""
    s0 = AtomicMeasure([(Fraction(1, 5), 1), (Fraction(2, 5), 2), (Fraction(3, 5), 1),
                        (Fraction(4, 5), Fraction(1, 2))])
    s1 = AtomicMeasure([(Fraction(17, 8), Fraction(1, 2)), (Fraction(9, 4), 1),
                        (Fraction(5, 2), Fraction(1, 3)), (Fraction(11, 4), 2)])
    s2 = AtomicMeasure([(Fraction(17, 4), Fraction(3, 2)), (Fraction(9, 2), Fraction(1, 4)),
                        (Fraction(19, 4), 1), (Fraction(39, 8), 2)])
    return validate_chain(GeneratorChain([s0, s1, s2], start=0))


def two_chain_example() -> NikishinSystem:
    """sigma_0 unit atoms {0,1}, sigma_1 unit atoms {2,3}."""
    s0 = AtomicMeasure([(0, 1), (1, 1)])
    s1 = AtomicMeasure([(2, 1), (3, 1)])
    return validate_chain(GeneratorChain([s0, s1], start=0))


def rational_touching_system() -> NikishinSystem:
    """Exact touching pair: atoms in (0,1) and (-1,0) sharing the touch point 0."""
    s0 = AtomicMeasure([(Fraction(k, 8), Fraction(1, 7)) for k in range(1, 8)])
    s1 = AtomicMeasure([(Fraction(-k, 8), Fraction(k, 28)) for k in range(1, 8)])
    return validate_chain(GeneratorChain([s0, s1], [Fraction(0)], start=0))


def arcsine_lebesgue_system(N: int = 12, precision: int = 256,
                            backend: Backend | None = None) -> NikishinSystem:
    """Arcsine weight on [0,1] followed by Lebesgue on [-1,0], touching at 0."""
    backend = backend or bigfloat(precision)
    s0 = discretize_weight("arcsine", N, backend=backend)
    s1 = discretize_weight("lebesgue", N, backend=backend)
    return validate_chain(GeneratorChain([s0, s1], [backend.zero()], start=0), backend)


def laguerre_system(N: int = 12, precision: int = 256,
                    backend: Backend | None = None) -> NikishinSystem:
    """exp(-x) on [0,inf) followed by exp(x) on (-inf,0], touching at 0."""
    backend = backend or bigfloat(precision)
    s0 = discretize_weight("laguerre", N, backend=backend)
    s1 = discretize_weight("neg-laguerre", N, backend=backend)
    return validate_chain(GeneratorChain([s0, s1], [backend.zero()], start=0), backend)

