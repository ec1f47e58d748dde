#include "spikeslab/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "spikeslab/errors.hpp"
#include "spikeslab/random.hpp"
#include "spikeslab/samplers.hpp"

namespace spikeslab {

void Scenario::validate() const {
  if (n < 2 || d < 1) throw InvalidArgument("scenario needs N >= 2 and d >= 1");
  if (effects.size() != d) throw DimensionError("effects must have length d");
  if (!effect_order.empty()) {
    if (static_cast<long>(effect_order.size()) != d)
      throw DimensionError("effect_order must have length d");
    std::vector<int> sorted = effect_order;
    std::sort(sorted.begin(), sorted.end());
    for (long j = 0; j < d; ++j)
      if (sorted[static_cast<std::size_t>(j)] != j)
        throw InvalidArgument("effect_order must be a permutation of 0..d-1");
  }
  if (!(rho >= 0.0 && rho < 1.0)) throw InvalidArgument("rho must lie in [0, 1)");
  if (!(sigma2_true > 0.0)) throw InvalidArgument("sigma2_true must be positive");
  if (replications < 0) throw InvalidArgument("replications must be non-negative");
  for (int j : evaluated)
    if (j < 0 || j >= d) throw InvalidArgument("evaluated column out of range");
}

Eigen::VectorXd Scenario::column_effects() const {
  if (effect_order.empty()) return effects;
  Eigen::VectorXd out(d);
  for (long k = 0; k < d; ++k) out(effect_order[static_cast<std::size_t>(k)]) = effects(k);
  return out;
}

std::vector<int> Scenario::evaluated_columns() const {
  if (!evaluated.empty()) return evaluated;
  std::vector<int> all(static_cast<std::size_t>(d));
  std::iota(all.begin(), all.end(), 0);
  return all;
}

namespace {

Eigen::VectorXd nine_effects() {
  Eigen::VectorXd e(9);
  e << 2, 2, 2, 0.2, 0.2, 0.2, 0, 0, 0;
  return e;
}

}  // namespace

Scenario Scenario::independent(long replications, std::uint64_t seed) {
  Scenario s;
  s.effects = nine_effects();
  s.replications = replications;
  s.seed = seed;
  s.evaluated = {3, 4, 5, 6, 7, 8};
  return s;
}

Scenario Scenario::correlated(long replications, std::uint64_t seed) {
  Scenario s = independent(replications, seed);
  s.rho = 0.8;
  // strong -> 1,2,4; weak -> 5,8,9; zero -> 3,6,7 (1-based)
  s.effect_order = {0, 1, 3, 4, 7, 8, 2, 5, 6};
  s.evaluated = {2, 4, 5, 6, 7, 8};
  return s;
}

Scenario Scenario::signal_sweep(long replications, std::uint64_t seed) {
  Scenario s;
  s.n = 200;
  s.d = 21;
  s.effects = Eigen::VectorXd::LinSpaced(21, 0.0, 0.4);
  s.replications = replications;
  s.seed = seed;
  return s;
}

Eigen::MatrixXd ar_correlation(long d, double rho) {
  Eigen::MatrixXd c(d, d);
  for (long j = 0; j < d; ++j)
    for (long k = 0; k < d; ++k) c(j, k) = std::pow(rho, std::abs(j - k));
  return c;
}

GeneratedData generate_dataset(const Scenario& sc, long replication_index) {
  sc.validate();
  Rng rng = make_stream(sc.seed, {static_cast<std::uint64_t>(replication_index)});

  Eigen::MatrixXd z(sc.n, sc.d);
  for (long i = 0; i < sc.n; ++i)
    for (long j = 0; j < sc.d; ++j) z(i, j) = draw_normal(rng);
  Eigen::MatrixXd x;
  if (sc.rho == 0.0) {
    x = std::move(z);
  } else {
    const Eigen::MatrixXd l = ar_correlation(sc.d, sc.rho).llt().matrixL();
    x = z * l.transpose();
  }

  const Eigen::VectorXd alpha = sc.column_effects();
  Eigen::VectorXd y = x * alpha;
  const double sd = std::sqrt(sc.sigma2_true);
  for (long i = 0; i < sc.n; ++i) y(i) += sc.mu_true + draw_normal(rng, 0.0, sd);

  return GeneratedData{Dataset::load(y, x, true), alpha};
}

namespace {

struct CellResult {
  bool ok = false;
  SelectionReport report;
};

}  // namespace

StudyTables run_study(const Scenario& sc, const std::vector<PriorSpec>& priors,
                      const McmcConfig& cfg, unsigned threads) {
  sc.validate();
  cfg.validate();
  for (const auto& p : priors) p.validate();

  const long reps = sc.replications;
  const std::size_t np = priors.size();
  const std::vector<int> evaluated = sc.evaluated_columns();
  const Eigen::VectorXd truth_effects = sc.column_effects();

  std::vector<std::vector<CellResult>> cells(static_cast<std::size_t>(reps),
                                             std::vector<CellResult>(np));

  auto work = [&](long r) {
    std::optional<GeneratedData> gen;
    try {
      gen = generate_dataset(sc, r);
    } catch (const Error&) {
      return;
    }
    for (std::size_t p = 0; p < np; ++p) {
      McmcConfig chain_cfg = cfg;
      chain_cfg.seed = make_stream(cfg.seed, {static_cast<std::uint64_t>(r),
                                              static_cast<std::uint64_t>(p)})();
      try {
        const ChainOutput out = run_mcmc(gen->data, priors[p], chain_cfg);
        auto& cell = cells[static_cast<std::size_t>(r)][p];
        cell.report = summarize(out, Truth{truth_effects, evaluated});
        cell.ok = true;
      } catch (const Error&) {
      }
    }
  };

  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<long>(workers, std::max<long>(reps, 1)));
  if (workers <= 1) {
    for (long r = 0; r < reps; ++r) work(r);
  } else {
    std::atomic<long> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (long r = next++; r < reps; r = next++) work(r);
      });
  }

  StudyTables tables;
  tables.column_effects = truth_effects;
  tables.evaluated = evaluated;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  tables.incl_prob_by_replication.assign(static_cast<std::size_t>(reps),
                                         Eigen::MatrixXd::Constant(np ? long(np) : 0, sc.d, nan));
  for (std::size_t p = 0; p < np; ++p) {
    PriorTable t;
    t.prior = priors[p].name();
    t.mpm_count.assign(static_cast<std::size_t>(sc.d), 0);
    t.mean_incl_prob = Eigen::VectorXd::Zero(sc.d);
    std::vector<std::optional<double>> iacts, ess_rates;
    double misclass = 0.0;
    for (long r = 0; r < reps; ++r) {
      const auto& cell = cells[static_cast<std::size_t>(r)][p];
      if (!cell.ok) {
        t.failed_replications.push_back(r);
        continue;
      }
      ++t.completed;
      tables.incl_prob_by_replication[static_cast<std::size_t>(r)].row(long(p)) =
          cell.report.incl_prob_hat.transpose();
      t.mean_incl_prob += cell.report.incl_prob_hat;
      for (long j = 0; j < sc.d; ++j)
        if (cell.report.mpm[static_cast<std::size_t>(j)]) ++t.mpm_count[static_cast<std::size_t>(j)];
      for (int j : evaluated) {
        iacts.push_back(cell.report.iact[static_cast<std::size_t>(j)]);
        ess_rates.push_back(cell.report.ess_per_sec[static_cast<std::size_t>(j)]);
      }
      misclass += *cell.report.misclassification_rate;
    }
    if (t.completed > 0) {
      t.mean_incl_prob /= static_cast<double>(t.completed);
      t.misclassification = misclass / static_cast<double>(t.completed);
    }
    t.iact = mean_defined(iacts);
    t.ess_per_sec = mean_defined(ess_rates);
    tables.priors.push_back(std::move(t));
  }
  return tables;
}

}  // namespace spikeslab
