"""First-exceedance analytics for threshold strategy matrices.

Two compound marked Poisson decision parameters are observed at the epochs of
a delayed renewal process; the package evaluates the closed-form exit-index
and shift-time results by discrete operational calculus, classifies positions
in threshold strategy matrices (generic 2x2 and growth-share), and verifies
every verifiable closed form against an independent Monte Carlo oracle.
"""

from .analytics import (
    LemmaConstants,
    expected_exit_index,
    expected_shift_time,
    lemma_pgf_a,
    lemma_pgf_b,
    marginal_pgf,
    phi_functional,
)
from .matrix import (
    ShiftAdvice,
    StrategyMatrix,
    bcg_classify,
    bcg_scale,
    classify,
    shift_advisor,
)
from .oracle import (
    ConformanceRow,
    EmpiricalExitSummary,
    conformance,
    empirical_functional,
    empirical_pgf,
    estimate_exits,
)
from .params import (
    IntervalDistribution,
    MarkDistribution,
    ModelParams,
    Thresholds,
)
from .process import (
    ExitRecord,
    SamplePath,
    exit_indices,
    increment_moments,
    sample_path,
)
from .series import (
    BivariateSeries,
    TruncatedSeries,
    d_apply,
    d_apply_2d,
    d_extract,
    d_extract_2d,
    geometric_series,
)
from .transforms import TransformContext, gamma_marginal, gamma_series, lst

__version__ = "0.1.0"

__all__ = [
    "BivariateSeries",
    "ConformanceRow",
    "EmpiricalExitSummary",
    "ExitRecord",
    "IntervalDistribution",
    "LemmaConstants",
    "MarkDistribution",
    "ModelParams",
    "SamplePath",
    "ShiftAdvice",
    "StrategyMatrix",
    "Thresholds",
    "TransformContext",
    "TruncatedSeries",
    "bcg_classify",
    "bcg_scale",
    "classify",
    "conformance",
    "d_apply",
    "d_apply_2d",
    "d_extract",
    "d_extract_2d",
    "empirical_functional",
    "empirical_pgf",
    "estimate_exits",
    "exit_indices",
    "expected_exit_index",
    "expected_shift_time",
    "gamma_marginal",
    "gamma_series",
    "geometric_series",
    "increment_moments",
    "lemma_pgf_a",
    "lemma_pgf_b",
    "lst",
    "marginal_pgf",
    "phi_functional",
    "sample_path",
    "shift_advisor",
]
