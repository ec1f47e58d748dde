#pragma once

#include "spikeslab/chain.hpp"
#include "spikeslab/dataset.hpp"
#include "spikeslab/prior.hpp"

namespace spikeslab {

/// Gibbs sampler for SSVS and NMIG priors. Indicators are drawn conditionally
/// on alpha; for NMIG the spike/slab ratio uses the marginal Student-t
/// densities. Throws NumericalBreakdownError if the alpha precision loses
/// positive definiteness.
ChainOutput run_continuous_spike_mcmc(const Dataset& data, const PriorSpec& prior,
                                      const McmcConfig& cfg);

/// Sampler for Dirac-spike priors: delta is drawn from its marginal posterior
/// one site at a time in a fresh random order each sweep, followed by sigma^2,
/// mu, omega and alpha_delta.
ChainOutput run_dirac_spike_mcmc(const Dataset& data, const PriorSpec& prior,
                                 const McmcConfig& cfg);

/// Dispatches on the prior family.
ChainOutput run_mcmc(const Dataset& data, const PriorSpec& prior, const McmcConfig& cfg);

/// Spike-to-slab density ratio L_j = p_spike(alpha_j) / p_slab(alpha_j), in logs.
double log_spike_slab_ratio(double alpha, const Slab& slab);

/// p(delta_j = 1 | .) = 1 / (1 + (1 - omega) / omega * exp(log_ratio)), evaluated
/// without overflow.
double inclusion_from_log_ratio(double log_ratio, double omega);

}  // namespace spikeslab
