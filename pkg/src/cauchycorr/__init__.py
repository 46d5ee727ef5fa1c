"""Sampling distributions of the centralized correlation of Cauchy samples.

A numerical toolkit built around one chain of limit laws: squares of
standard Cauchy variables, their stable-law sum limit, the half-normal
normalizer, the Cauchy product, and the asymptotic distribution of the
scaled centralized correlation coefficient (cosine similarity), together
with the quadrature, characteristic-function inversion, and Monte Carlo
machinery that cross-validates every closed form quantitatively.
"""

__version__ = "0.1.0"

from .cfnum import (
    DEFAULT_SPEC,
    ConvergenceError,
    IntegralResult,
    InversionResult,
    QuadratureSpec,
    integrate,
    invert_symmetric_cf,
    polar_cf_integrand,
    product_cf_limit_deviation,
)
from .distributions import (
    CorrectionFactor,
    DistributionModel,
    ModelName,
    cauchy_cdf,
    cauchy_cf,
    cauchy_pdf,
    cauchy_sq_cdf,
    cauchy_sq_cf,
    cauchy_sq_pdf,
    corr_limit_cdf,
    corr_limit_cdf_sorted,
    corr_limit_cf,
    corr_limit_pdf,
    correction_factor,
    half_normal_cdf,
    half_normal_pdf,
    make_model,
    product_cf,
    product_pdf,
    sum_sq_limit_cdf,
    sum_sq_limit_cf,
    sum_sq_limit_pdf,
)
from .exceptions import DomainError, NotAvailableError, SingularPointError
from .montecarlo import (
    DEFAULT_SEED,
    GofReport,
    Histogram,
    IndependenceReport,
    KsResult,
    RawSamples,
    SimulationConfig,
    Statistic,
    centralized_corr,
    chi2_against_binned,
    gof_report,
    independence_diagnostic,
    ks_test,
    replication_stream,
    run_simulation,
    sample_cauchy,
    scaled_corr,
)
from .specfun import (
    bessel_i0,
    cos_integral,
    erf_complex,
    i0_minus_l0,
    sin_integral,
    struve_l0,
)

__all__ = [name for name in dir() if not name.startswith("_")]
