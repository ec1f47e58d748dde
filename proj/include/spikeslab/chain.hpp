#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "spikeslab/marginal.hpp"

namespace spikeslab {

/// Chain length and seeding.
struct McmcConfig {
  long iterations = 5000;        ///< M, stored draws
  long burn_in = 1000;           ///< discarded draws
  long full_model_warmup = 500;  ///< leading burn-in draws with delta held at all ones
  std::uint64_t seed = 1;
  bool store_traces = false;     ///< keep delta, alpha, sigma2, omega, mu draws

  /// Throws InvalidArgument unless M >= 1 and 0 <= warmup <= burn_in.
  void validate() const;

  /// Longer preset for continuous spikes on real data: M = 50000, burn-in
  /// 10000, full-model warmup 5000.
  static McmcConfig long_run(std::uint64_t seed = 1);
};

/// One iteration's parameter state. Owned by a single running chain.
struct ChainState {
  double mu = 0.0;
  Eigen::VectorXd alpha;
  Indicators delta;
  double omega = 0.5;
  double sigma2 = 1.0;
  Eigen::VectorXd psi;  ///< per-coefficient scales, NMIG only (V for SSVS)

  long included_count() const noexcept;
};

struct ChainOutput {
  long m = 0;
  /// M x d Rao-Blackwellized inclusion probabilities p^(m)(delta_j = 1).
  Eigen::MatrixXd incl_prob;
  /// Column means of the raw indicator draws, kept for cross-checking.
  Eigen::VectorXd indicator_mean;
  /// Traces, populated when McmcConfig::store_traces is set.
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> delta_draws;
  Eigen::MatrixXd alpha_draws;
  Eigen::VectorXd sigma2_draws;
  Eigen::VectorXd omega_draws;
  Eigen::VectorXd mu_draws;
  /// Wall-clock time of the post-burn-in loop.
  double wall_time_seconds = 0.0;

  /// Column means of incl_prob: the estimated posterior inclusion probabilities.
  Eigen::VectorXd inclusion_probabilities() const;
};

}  // namespace spikeslab
