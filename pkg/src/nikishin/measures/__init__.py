"""Atomic measures, generator chains, nested Cauchy transforms and inverse measures."""

from .atomic import AtomicMeasure, ExtendedInterval, cauchy_eval
from .discretize import PRESETS, discretize_weight, preset_moment
from .inverse import (
    InverseDecomposition,
    InverseMeasure,
    inverse_as_rational,
    inverse_decomposition,
    inverse_measure,
    triangular_residuals,
)
from .io import SystemFile, load_schema, load_system, parse_system, system_to_json
from .system import (
    GeneratorChain,
    NikishinSystem,
    build_system,
    nested_transform,
    product_moment,
    validate_chain,
)

__all__ = [
    "AtomicMeasure", "ExtendedInterval", "cauchy_eval", "PRESETS", "discretize_weight",
    "preset_moment", "InverseDecomposition", "InverseMeasure", "inverse_as_rational",
    "inverse_decomposition", "inverse_measure", "triangular_residuals", "SystemFile",
    "load_schema", "load_system", "parse_system", "system_to_json", "GeneratorChain",
    "NikishinSystem", "build_system", "nested_transform", "product_moment", "validate_chain",
]
