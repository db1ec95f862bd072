"""sscdist: the sine-skewed cardioid distribution.

Exact density/cdf/characteristic function, closed-form moments, tail
expansions and extreme-value constants, quantile-inversion sampling,
and method-of-moments estimation with asymptotic covariance, plus a
CLI harness that reproduces the canonical simulation tables.
"""

from .errors import (
    ConvergenceError,
    DegenerateRateError,
    DomainError,
    ParameterError,
    SscError,
)
from .estimation import (
    EstimationResult,
    MleDiagnostic,
    asymptotic_covariance,
    confidence_intervals,
    estimate,
    estimates_from_moments,
    mle_diagnostic,
)
from .harness import (
    SimConfig,
    SimReport,
    default_config,
    run_cf_check,
    run_ev_convergence,
    run_experiment,
    run_table1,
    run_table2,
    run_tail_remainder,
    write_csv,
)
from .model import SUPPORT, SscParams, cdf, cf, log_pdf, pdf
from .moments import (
    MomentSet,
    TrigIntegralTable,
    exact_moment,
    moment_set,
    trig_table,
)
from .sampling import (
    BRACKET_BISECTION,
    DIGIT_REFINEMENT,
    InversionConfig,
    SampleBatch,
    ks_statistic,
    load_values,
    quantile,
    quantile_many,
    sample,
    save_batch,
)
from .tails import (
    EvNormalization,
    TailExpansion,
    ev_normalization,
    extreme_value_limit_cdf,
    pdf_ultimately_nonincreasing,
    quantile_tail_approx,
    survival_upper,
    tail_coefficients,
    tail_survival_approx,
    von_mises_ratio,
)

__version__ = "0.1.0"

__all__ = [
    "SUPPORT",
    "BRACKET_BISECTION",
    "DIGIT_REFINEMENT",
    "ConvergenceError",
    "DegenerateRateError",
    "DomainError",
    "EstimationResult",
    "EvNormalization",
    "InversionConfig",
    "MleDiagnostic",
    "MomentSet",
    "ParameterError",
    "SampleBatch",
    "SimConfig",
    "SimReport",
    "SscError",
    "SscParams",
    "TailExpansion",
    "TrigIntegralTable",
    "asymptotic_covariance",
    "cdf",
    "cf",
    "confidence_intervals",
    "default_config",
    "estimate",
    "estimates_from_moments",
    "exact_moment",
    "extreme_value_limit_cdf",
    "ev_normalization",
    "ks_statistic",
    "load_values",
    "log_pdf",
    "mle_diagnostic",
    "moment_set",
    "pdf",
    "pdf_ultimately_nonincreasing",
    "quantile",
    "quantile_many",
    "quantile_tail_approx",
    "run_cf_check",
    "run_ev_convergence",
    "run_experiment",
    "run_table1",
    "run_table2",
    "run_tail_remainder",
    "sample",
    "save_batch",
    "survival_upper",
    "tail_coefficients",
    "tail_survival_approx",
    "trig_table",
    "von_mises_ratio",
    "write_csv",
]
