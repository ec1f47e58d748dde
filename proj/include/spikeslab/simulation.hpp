#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spikeslab/chain.hpp"
#include "spikeslab/dataset.hpp"
#include "spikeslab/diagnostics.hpp"
#include "spikeslab/prior.hpp"

namespace spikeslab {

/// A data-generating design: rows of X are i.i.d. N(0, C) with
/// C_jk = rho^{|j-k|}, y = mu 1 + X alpha + eps.
struct Scenario {
  long n = 40;
  long d = 9;
  /// Effect values in pattern order; effects[k] goes to column effect_order[k].
  Eigen::VectorXd effects;
  std::vector<int> effect_order;  ///< empty means identity
  double mu_true = 1.0;
  double sigma2_true = 1.0;
  double rho = 0.0;  ///< 0 gives independent regressors
  long replications = 100;
  std::uint64_t seed = 2024;
  /// Columns entering misclassification and averaged IACT/ESS; empty means all.
  std::vector<int> evaluated;

  void validate() const;

  /// Per-column true coefficient vector after applying effect_order.
  Eigen::VectorXd column_effects() const;

  /// Columns whose IACT/ESS and misclassification are averaged.
  std::vector<int> evaluated_columns() const;

  /// N = 40, nine independent regressors, effects (2,2,2,0.2,0.2,0.2,0,0,0);
  /// weak and zero effects are evaluated.
  static Scenario independent(long replications = 100, std::uint64_t seed = 2024);

  /// Same effects with rho = 0.8: strong effects at columns 1,2,4, weak at
  /// 5,8,9, zero at 3,6,7 (1-based).
  static Scenario correlated(long replications = 100, std::uint64_t seed = 2024);

  /// N = 200, 21 independent regressors with effects 0, 0.02, ..., 0.4.
  static Scenario signal_sweep(long replications = 100, std::uint64_t seed = 2024);
};

struct GeneratedData {
  Dataset data;
  Eigen::VectorXd true_alpha;  ///< per column
};

/// Deterministic in (scenario.seed, replication_index).
GeneratedData generate_dataset(const Scenario& scenario, long replication_index);

/// Correlation matrix C_jk = rho^{|j-k|}.
Eigen::MatrixXd ar_correlation(long d, double rho);

/// Aggregated results for one prior across replications.
struct PriorTable {
  std::string prior;
  std::vector<long> mpm_count;            ///< per column, replications with p > 0.5
  Eigen::VectorXd mean_incl_prob;         ///< per column, over successful replications
  SkippingMean iact;                      ///< over evaluated columns and replications
  SkippingMean ess_per_sec;
  std::optional<double> misclassification;  ///< mean over replications
  std::vector<long> failed_replications;
  long completed = 0;
};

struct StudyTables {
  Eigen::VectorXd column_effects;
  std::vector<int> evaluated;
  std::vector<PriorTable> priors;
  /// replication x prior x column posterior inclusion probabilities (NaN when failed).
  std::vector<Eigen::MatrixXd> incl_prob_by_replication;
};

/// Runs every prior on every replication. Chains for replication r and prior
/// p use seed streams keyed by (cfg.seed, r, p); datasets by (scenario.seed, r).
/// Replications run on up to `threads` workers (0 = hardware concurrency) and
/// results are aggregated in replication order. A sampler error marks the
/// replication as failed for that prior without aborting the study.
StudyTables run_study(const Scenario& scenario, const std::vector<PriorSpec>& priors,
                      const McmcConfig& cfg, unsigned threads = 0);

}  // namespace spikeslab
