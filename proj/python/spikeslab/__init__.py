"""Spike and slab variable selection for linear regression."""

from ._core import (
    SpikeSlabError,
    h_correlated_pair,
    h_orthogonal,
    iact,
    inclusion_probability,
    inclusion_probability_integrated,
    log_marginal_likelihood,
    run_mcmc,
    simulate,
)

__all__ = [
    "SpikeSlabError",
    "h_correlated_pair",
    "h_orthogonal",
    "iact",
    "inclusion_probability",
    "inclusion_probability_integrated",
    "log_marginal_likelihood",
    "run_mcmc",
    "simulate",
]
