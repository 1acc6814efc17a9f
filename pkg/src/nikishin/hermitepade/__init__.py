"""Type I, type II and mixed-type Hermite-Padé solvers with certification scans."""

from .indices import (
    CombinedIndex,
    MultiIndex,
    check_complete,
    classify_multiindex,
    combined_indices,
    diagonal_sequence,
    parse_combined,
    parse_multiindex,
    step_line,
)
from .oracle import series_kernel, series_matrix
from .scan import (
    GramTable,
    ScanReport,
    biorthogonal_sequences,
    diagonal_interlacing,
    perfectness_scan,
)
from .solvers import (
    CompatiblePair,
    NormalityReport,
    TypeIISolution,
    TypeISolution,
    VectorPolynomialSolution,
    make_pair,
    markov_matrix_eval,
    moment_matrix,
    normality_check,
    orthogonality_residuals,
    solve_mixed,
    solve_type1,
    solve_type2,
)

__all__ = [
    "MultiIndex", "CombinedIndex", "classify_multiindex", "combined_indices",
    "diagonal_sequence", "step_line", "check_complete", "parse_multiindex", "parse_combined",
    "series_matrix", "series_kernel", "ScanReport", "GramTable", "perfectness_scan",
    "diagonal_interlacing", "biorthogonal_sequences", "CompatiblePair", "make_pair",
    "VectorPolynomialSolution", "TypeIISolution", "TypeISolution", "NormalityReport",
    "solve_mixed", "solve_type1", "solve_type2", "normality_check", "moment_matrix",
    "markov_matrix_eval", "orthogonality_residuals",
]
