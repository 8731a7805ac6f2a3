"""Hanson-Wright concentration bounds for sub-Gaussian quadratic forms,
with exact Gaussian oracles and a Monte Carlo verification harness."""

__version__ = "0.1.0"

from . import bounds, ensembles, linalg, mc, oracle, subgauss, verify
from .bounds import (
    BoundSpec,
    LambdaDomain,
    central_moment_bound,
    chernoff_tail_from_mgf,
    chi2_mgf_bound,
    combine_cauchy_schwarz,
    hw_mgf_bound,
    hw_tail_bound,
    log_inequality_gap,
    make_bound_spec,
    square_mgf_bound,
)
from .exceptions import ConvergenceError, DomainError, HansonWrightError, ValidationError
from .linalg import (
    EigenDecomposition,
    diagonal_part,
    eigen_decompose,
    frobenius_norm,
    hollow,
    operator_norm,
    operator_norm_general,
    quadratic_form,
    symmetrize,
    trace,
)
from .mc import (
    MgfEstimate,
    TailEstimate,
    compare_hollow_mgf,
    estimate_mgf,
    estimate_tail,
    run_mgf_suite,
    run_tail_suite,
    sample_centered_forms,
)
from .oracle import (
    exact_gaussian_centered_square_mgf,
    exact_gaussian_quadratic_mgf,
    exact_quadratic_mean,
)
from .subgauss import (
    RngStream,
    SubGaussianDist,
    exact_central_square_moment,
    exact_even_moment,
    gaussian,
    parse_dist,
    rademacher,
    sample,
    uniform,
)

__all__ = [
    "__version__",
    "bounds", "ensembles", "linalg", "mc", "oracle", "subgauss", "verify",
    "BoundSpec", "LambdaDomain", "EigenDecomposition",
    "MgfEstimate", "TailEstimate", "RngStream", "SubGaussianDist",
    "HansonWrightError", "ValidationError", "DomainError", "ConvergenceError",
    "make_bound_spec", "hw_mgf_bound", "hw_tail_bound",
    "chi2_mgf_bound", "square_mgf_bound", "log_inequality_gap",
    "central_moment_bound", "combine_cauchy_schwarz", "chernoff_tail_from_mgf",
    "symmetrize", "hollow", "diagonal_part", "frobenius_norm", "trace",
    "quadratic_form", "eigen_decompose", "operator_norm", "operator_norm_general",
    "exact_gaussian_quadratic_mgf", "exact_gaussian_centered_square_mgf",
    "exact_quadratic_mean",
    "gaussian", "rademacher", "uniform", "parse_dist", "sample",
    "exact_even_moment", "exact_central_square_moment",
    "sample_centered_forms", "estimate_tail", "estimate_mgf",
    "compare_hollow_mgf", "run_tail_suite", "run_mgf_suite",
]
