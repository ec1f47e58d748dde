#include "spikeslab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spikeslab/errors.hpp"

namespace spikeslab {

std::optional<double> iact_initial_monotone(std::span<const double> series) {
  const std::size_t m = series.size();
  if (m < 10) throw InvalidArgument("IACT needs a series of at least 10 values");

  const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
  const double magnitude = std::max(std::abs(*lo), std::abs(*hi));
  if (*hi - *lo <= 1e-10 * magnitude || magnitude == 0.0) return std::nullopt;

  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(m);
  std::vector<double> centered(m);
  for (std::size_t i = 0; i < m; ++i) centered[i] = series[i] - mean;

  auto autocov = [&](std::size_t lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i + lag < m; ++i) acc += centered[i] * centered[i + lag];
    return acc / static_cast<double>(m);
  };
  const double c0 = autocov(0);
  if (!(c0 > 0.0)) return std::nullopt;

  // Pair sums Gamma_k = rho(2k) + rho(2k+1), positive and nonincreasing.
  const std::size_t max_lag = m / 2;
  double sum = 0.0;
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; 2 * k + 1 <= max_lag; ++k) {
    double pair = (autocov(2 * k) + autocov(2 * k + 1)) / c0;
    if (pair <= 0.0) break;
    pair = std::min(pair, previous);
    previous = pair;
    sum += pair;
  }
  return -1.0 + 2.0 * sum;
}

std::optional<double> effective_sample_size(std::span<const double> series, long m) {
  const auto tau = iact_initial_monotone(series);
  if (!tau) return std::nullopt;
  return static_cast<double>(m) / *tau;
}

SelectionReport summarize(const ChainOutput& output, const std::optional<Truth>& truth) {
  const Eigen::Index d = output.incl_prob.cols();
  SelectionReport rep;
  rep.m = output.m;
  rep.wall_time_seconds = output.wall_time_seconds;
  rep.incl_prob_hat = output.inclusion_probabilities();
  rep.indicator_mean = output.indicator_mean;
  rep.iact.resize(static_cast<std::size_t>(d));
  rep.ess.resize(static_cast<std::size_t>(d));
  rep.ess_per_sec.resize(static_cast<std::size_t>(d));
  rep.mpm.resize(static_cast<std::size_t>(d));

  std::vector<double> column(static_cast<std::size_t>(output.m));
  for (Eigen::Index j = 0; j < d; ++j) {
    const auto jj = static_cast<std::size_t>(j);
    rep.mpm[jj] = rep.incl_prob_hat(j) > 0.5;
    if (output.m < 10) continue;
    Eigen::Map<Eigen::VectorXd>(column.data(), output.m) = output.incl_prob.col(j);
    if (auto tau = iact_initial_monotone(column)) {
      const double t = std::max(1.0, *tau);
      rep.iact[jj] = t;
      rep.ess[jj] = static_cast<double>(output.m) / t;
      if (output.wall_time_seconds > 0.0)
        rep.ess_per_sec[jj] = *rep.ess[jj] / output.wall_time_seconds;
    }
  }

  if (truth) {
    if (truth->effects.size() != d)
      throw DimensionError("truth has a different number of regressors than the chain");
    std::vector<int> subset = truth->evaluated;
    if (subset.empty())
      for (Eigen::Index j = 0; j < d; ++j) subset.push_back(static_cast<int>(j));
    long wrong = 0;
    for (int j : subset) {
      const bool nonzero = truth->effects(j) != 0.0;
      if (nonzero != rep.mpm[static_cast<std::size_t>(j)]) ++wrong;
    }
    rep.misclassification_rate =
        static_cast<double>(wrong) / static_cast<double>(subset.size());
  }
  return rep;
}

SkippingMean mean_defined(const std::vector<std::optional<double>>& values,
                          const std::vector<int>& subset) {
  SkippingMean out;
  double acc = 0.0;
  auto visit = [&](const std::optional<double>& v) {
    if (v) {
      acc += *v;
      ++out.used;
    } else {
      ++out.skipped;
    }
  };
  if (subset.empty())
    for (const auto& v : values) visit(v);
  else
    for (int j : subset) visit(values.at(static_cast<std::size_t>(j)));
  if (out.used > 0) out.mean = acc / static_cast<double>(out.used);
  return out;
}

}  // namespace spikeslab
