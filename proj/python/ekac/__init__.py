"""Distinct-prime-factor statistics under perturbed uniform distributions."""

from ._ekac import (
    DomainError,
    Distribution,
    Error,
    FactorizationError,
    OverflowError,
    ResourceError,
    UsageError,
    ValidationError,
    alpha,
    check,
    factorize,
    independence_gap,
    infer_constants,
    is_prime,
    ks_statistic,
    log_log,
    mertens_sum,
    model_sn,
    moment_gaps,
    normal_cdf,
    omega_distribution,
    omega_mean,
    omega_range,
    omega_window,
    partial_epsilon_sum,
    primes_upto,
    sup_distance,
    tail_sum,
)

__version__ = "0.1.0"
