"""Identity suite, convergence harness and report emission."""

from .carleman import CarlemanReport, carleman_report, double_factorial_moments, factorial_moments
from .convergence import (ConvergenceRow, ConvergenceTable, balanced_sequence, default_grid,
                          log_slope, stieltjes_convergence)
from .identities import (DEFAULT_POINTS, IdentityResult, default_points, identity_product,
                         identity_quotient, identity_ratio, identity_reversal, point_to_json,
                         product_measure, run_identity_suite)
from .report import CHECKS, LIMITATION, Check, dumps_report, summary_text, write_report

__all__ = [
    "CarlemanReport", "carleman_report", "double_factorial_moments", "factorial_moments",
    "ConvergenceRow", "ConvergenceTable", "balanced_sequence", "default_grid", "log_slope",
    "stieltjes_convergence", "DEFAULT_POINTS", "IdentityResult", "default_points",
    "identity_product", "identity_quotient", "identity_ratio", "identity_reversal",
    "point_to_json", "product_measure", "run_identity_suite", "CHECKS", "LIMITATION", "Check",
    "dumps_report", "summary_text", "write_report",
]
