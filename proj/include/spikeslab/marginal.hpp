#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "spikeslab/dataset.hpp"
#include "spikeslab/prior.hpp"

namespace spikeslab {

/// Dense 0/1 inclusion indicators, one per design column.
using Indicators = std::vector<std::uint8_t>;

/// Column indices j with delta_j = 1, in increasing order.
std::vector<int> included_columns(std::span<const std::uint8_t> delta);

/// Moments of p(alpha_delta | sigma^2, y) and of the inverse-Gamma posterior
/// of sigma^2 for a Dirac-spike model.
struct PosteriorMoments {
  std::vector<int> included;
  Eigen::VectorXd a_n;    ///< posterior mean of alpha_delta
  Eigen::MatrixXd a_cov;  ///< A_N; Var(alpha_delta | sigma^2) = A_N sigma^2
  double scale = 0.0;     ///< S_N
  double shape = 0.0;     ///< s_N = (N - 1) / 2
  double log_det_ratio = 0.0;  ///< (1/2) log(|A_N| / |A_0|)
};

/// Factorized form of the same quantities, used on the sampler hot path.
///
/// A_N = cov_factor * M^{-1} where `chol` holds the Cholesky factor of M
/// (X_d'X_d + I/c for the i-slab, X_d'X_d otherwise).
struct ModelFit {
  std::vector<int> included;
  Eigen::LLT<Eigen::MatrixXd> chol;
  double cov_factor = 1.0;
  Eigen::VectorXd a_n;
  double scale = 0.0;
  double log_det_ratio = 0.0;

  Eigen::Index size() const noexcept { return static_cast<Eigen::Index>(included.size()); }
};

/// Fits the model with the given columns. Returns nullopt when X_d'X_d is
/// singular (g/f-slab) or the posterior scale S_N is not positive. `slab` must
/// be a Dirac variant.
std::optional<ModelFit> try_fit_model(const Dataset& data, std::vector<int> included,
                                      const Slab& slab);

/// Throwing counterpart of try_fit_model.
ModelFit fit_model(const Dataset& data, std::vector<int> included, const Slab& slab);

/// Log marginal likelihood log p(y | delta) of a fitted model.
double log_marginal_likelihood(const Dataset& data, const ModelFit& fit);

PosteriorMoments posterior_moments(const Dataset& data, std::span<const std::uint8_t> delta,
                                   const Slab& slab);

/// log p(y | delta), with alpha_delta, sigma^2 and mu integrated out under the
/// prior 1/sigma^2 on (mu, sigma^2).
double log_marginal_likelihood(const Dataset& data, std::span<const std::uint8_t> delta,
                               const Slab& slab);

/// log p(y | delta, sigma^2), with alpha_delta and mu integrated out.
double log_conditional_marginal_likelihood(const Dataset& data,
                                           std::span<const std::uint8_t> delta,
                                           const Slab& slab, double sigma2);

}  // namespace spikeslab
