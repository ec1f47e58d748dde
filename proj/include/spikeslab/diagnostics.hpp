#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "spikeslab/chain.hpp"

namespace spikeslab {

/// Inefficiency factor tau = 1 + 2 sum_l rho(l) with the window chosen by
/// Geyer's initial monotone sequence estimator. Autocorrelations use the
/// divide-by-M estimator and lags up to M/2.
///
/// Returns nullopt for a (numerically) constant series. Throws
/// InvalidArgument when fewer than 10 values are given.
std::optional<double> iact_initial_monotone(std::span<const double> series);

/// M / tau; nullopt when tau is undefined.
std::optional<double> effective_sample_size(std::span<const double> series, long m);

/// Which regressors are truly nonzero, and which of them enter the
/// misclassification rate.
struct Truth {
  Eigen::VectorXd effects;
  std::vector<int> evaluated;  ///< empty means every regressor
};

struct SelectionReport {
  Eigen::VectorXd incl_prob_hat;
  Eigen::VectorXd indicator_mean;
  std::vector<std::optional<double>> iact;  ///< reported as max(1, tau)
  std::vector<std::optional<double>> ess;
  std::vector<std::optional<double>> ess_per_sec;
  std::vector<bool> mpm;  ///< median probability model: incl_prob_hat > 0.5
  std::optional<double> misclassification_rate;
  long m = 0;
  double wall_time_seconds = 0.0;

  Eigen::Index size() const noexcept { return incl_prob_hat.size(); }
};

SelectionReport summarize(const ChainOutput& output, const std::optional<Truth>& truth = {});

/// Mean of the defined entries over `subset` (all entries when empty), with
/// the number of undefined entries skipped.
struct SkippingMean {
  std::optional<double> mean;
  long used = 0;
  long skipped = 0;
};
SkippingMean mean_defined(const std::vector<std::optional<double>>& values,
                          const std::vector<int>& subset = {});

}  // namespace spikeslab
