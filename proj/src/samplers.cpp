#include "spikeslab/samplers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <numbers>
#include <sstream>

#include "spikeslab/errors.hpp"
#include "spikeslab/random.hpp"

namespace spikeslab {

void McmcConfig::validate() const {
  if (iterations < 1) throw InvalidArgument("iterations must be at least 1");
  if (burn_in < 0) throw InvalidArgument("burn-in must be non-negative");
  if (full_model_warmup < 0 || full_model_warmup > burn_in)
    throw InvalidArgument("full-model warmup must lie between 0 and the burn-in length");
}

McmcConfig McmcConfig::long_run(std::uint64_t seed) {
  McmcConfig cfg;
  cfg.iterations = 50000;
  cfg.burn_in = 10000;
  cfg.full_model_warmup = 5000;
  cfg.seed = seed;
  return cfg;
}

long ChainState::included_count() const noexcept {
  return static_cast<long>(std::count(delta.begin(), delta.end(), std::uint8_t{1}));
}

Eigen::VectorXd ChainOutput::inclusion_probabilities() const {
  if (m == 0) return Eigen::VectorXd::Zero(incl_prob.cols());
  return incl_prob.colwise().mean().transpose();
}

namespace {

double log_student_t(double x, double df, double scale2) {
  return std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) -
         0.5 * std::log(df * std::numbers::pi * scale2) -
         0.5 * (df + 1.0) * std::log1p(x * x / (df * scale2));
}

double log_normal(double x, double var) {
  return -0.5 * std::log(2.0 * std::numbers::pi * var) - 0.5 * x * x / var;
}

double clamp_probability(double omega) {
  constexpr double kTiny = 1e-300;
  return std::clamp(omega, kTiny, 1.0 - std::numeric_limits<double>::epsilon());
}

void allocate(ChainOutput& out, const McmcConfig& cfg, Eigen::Index d) {
  out.m = cfg.iterations;
  out.incl_prob.resize(cfg.iterations, d);
  out.indicator_mean = Eigen::VectorXd::Zero(d);
  if (cfg.store_traces) {
    out.delta_draws.resize(cfg.iterations, d);
    out.alpha_draws.resize(cfg.iterations, d);
    out.sigma2_draws.resize(cfg.iterations);
    out.omega_draws.resize(cfg.iterations);
    out.mu_draws.resize(cfg.iterations);
  }
}

void record(ChainOutput& out, const McmcConfig& cfg, long row, const ChainState& s) {
  for (std::size_t j = 0; j < s.delta.size(); ++j)
    out.indicator_mean(static_cast<Eigen::Index>(j)) += s.delta[j];
  if (!cfg.store_traces) return;
  for (std::size_t j = 0; j < s.delta.size(); ++j)
    out.delta_draws(row, static_cast<Eigen::Index>(j)) = s.delta[j];
  out.alpha_draws.row(row) = s.alpha.transpose();
  out.sigma2_draws(row) = s.sigma2;
  out.omega_draws(row) = s.omega;
  out.mu_draws(row) = s.mu;
}

using Clock = std::chrono::steady_clock;

}  // namespace

double log_spike_slab_ratio(double alpha, const Slab& slab) {
  if (const auto* ssvs = std::get_if<Ssvs>(&slab))
    return log_normal(alpha, ssvs->r * ssvs->v) - log_normal(alpha, ssvs->v);
  if (const auto* nmig = std::get_if<Nmig>(&slab)) {
    // Marginally t_{2 nu}(0, r Q / nu) against t_{2 nu}(0, Q / nu).
    const double df = 2.0 * nmig->nu;
    return log_student_t(alpha, df, nmig->r * nmig->q / nmig->nu) -
           log_student_t(alpha, df, nmig->q / nmig->nu);
  }
  throw InvalidArgument("spike/slab density ratio needs an SSVS or NMIG prior");
}

double inclusion_from_log_ratio(double log_ratio, double omega) {
  // 1 / (1 + exp(z)) with z = log((1 - omega) / omega) + log_ratio.
  const double z = std::log1p(-omega) - std::log(omega) + log_ratio;
  if (std::isnan(z)) throw InvalidArgument("inclusion probability is undefined");
  if (z > 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

ChainOutput run_continuous_spike_mcmc(const Dataset& data, const PriorSpec& prior,
                                      const McmcConfig& cfg) {
  if (!prior.is_continuous())
    throw InvalidArgument("continuous-spike sampler requires an SSVS or NMIG prior");
  prior.validate();
  cfg.validate();

  const Eigen::Index n = data.n();
  const Eigen::Index d = data.d();
  const double nd = static_cast<double>(n);
  const double shape = 0.5 * (nd - 1.0);
  const auto* nmig = std::get_if<Nmig>(&prior.slab);
  const double ratio = nmig ? nmig->r : std::get<Ssvs>(prior.slab).r;

  Rng rng = make_stream(cfg.seed);

  ChainState s;
  s.alpha = data.x().colPivHouseholderQr().solve(data.y_c());
  {
    const double rss = (data.y_c() - data.x() * s.alpha).squaredNorm();
    const double dof = nd - 1.0 - static_cast<double>(d);
    s.sigma2 = (dof > 0.0 && rss > 1e-12 * data.yty()) ? rss / dof : data.s_y2();
  }
  s.omega = prior.omega.a / (prior.omega.a + prior.omega.b);
  s.delta.assign(static_cast<std::size_t>(d), 1);
  if (nmig)
    s.psi = Eigen::VectorXd::Constant(d, nmig->nu > 1.0 ? nmig->q / (nmig->nu - 1.0)
                                                        : nmig->q);
  else
    s.psi = Eigen::VectorXd::Constant(d, std::get<Ssvs>(prior.slab).v);

  ChainOutput out;
  allocate(out, cfg, d);

  std::vector<int> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  Eigen::MatrixXd precision(d, d);
  Eigen::LLT<Eigen::MatrixXd> llt(d);

  const long total = cfg.burn_in + cfg.iterations;
  Clock::time_point start = Clock::now();
  for (long it = 0; it < total; ++it) {
    if (it == cfg.burn_in) start = Clock::now();
    const bool stored = it >= cfg.burn_in;
    const long row = it - cfg.burn_in;

    // (1) mu
    s.mu = draw_normal(rng, data.y_bar(), std::sqrt(s.sigma2 / nd));

    // (2a) delta given alpha and omega
    if (it < cfg.full_model_warmup) {
      std::fill(s.delta.begin(), s.delta.end(), std::uint8_t{1});
    } else {
      std::shuffle(order.begin(), order.end(), rng);
      for (int j : order) {
        const double p =
            inclusion_from_log_ratio(log_spike_slab_ratio(s.alpha(j), prior.slab), s.omega);
        if (stored) out.incl_prob(row, j) = p;
        s.delta[static_cast<std::size_t>(j)] = draw_bernoulli(rng, p) ? 1 : 0;
      }
    }

    // (2b) psi
    if (nmig) {
      for (Eigen::Index j = 0; j < d; ++j) {
        const double rj = s.delta[static_cast<std::size_t>(j)] ? 1.0 : ratio;
        s.psi(j) = draw_inv_gamma(rng, nmig->nu + 0.5,
                                  nmig->q + s.alpha(j) * s.alpha(j) / (2.0 * rj));
      }
    }

    // (3) omega
    const double d1 = static_cast<double>(s.included_count());
    s.omega = clamp_probability(
        draw_beta(rng, prior.omega.a + d1, prior.omega.b + static_cast<double>(d) - d1));

    // (4) alpha ~ N(a_N, A_N), A_N^{-1} = X'X / sigma2 + D^{-1}
    precision = data.gram() / s.sigma2;
    for (Eigen::Index j = 0; j < d; ++j) {
      const double rj = s.delta[static_cast<std::size_t>(j)] ? 1.0 : ratio;
      precision(j, j) += 1.0 / (rj * s.psi(j));
    }
    llt.compute(precision);
    if (llt.info() != Eigen::Success) {
      std::ostringstream msg;
      msg << "Cholesky factorization of the coefficient precision failed at iteration " << it;
      throw NumericalBreakdownError(msg.str(), it);
    }
    const Eigen::VectorXd mean = llt.solve(data.xty() / s.sigma2);
    s.alpha = draw_mvn_from_precision(rng, mean, llt);

    // (5) sigma2
    const double rss = (data.y_c() - data.x() * s.alpha).squaredNorm();
    s.sigma2 = draw_inv_gamma(rng, shape, 0.5 * rss);

    if (stored) record(out, cfg, row, s);
  }
  out.wall_time_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  out.indicator_mean /= static_cast<double>(cfg.iterations);
  return out;
}

namespace {

std::vector<int> toggled(const std::vector<int>& included, int j) {
  std::vector<int> next;
  next.reserve(included.size() + 1);
  const auto pos = std::lower_bound(included.begin(), included.end(), j);
  next.insert(next.end(), included.begin(), pos);
  if (pos != included.end() && *pos == j) {
    next.insert(next.end(), pos + 1, included.end());
  } else {
    next.push_back(j);
    next.insert(next.end(), pos, included.end());
  }
  return next;
}

}  // namespace

ChainOutput run_dirac_spike_mcmc(const Dataset& data, const PriorSpec& prior,
                                 const McmcConfig& cfg) {
  if (!prior.is_dirac())
    throw InvalidArgument("Dirac-spike sampler requires a dirac-i, dirac-g or dirac-f prior");
  prior.validate();
  cfg.validate();

  const Eigen::Index n = data.n();
  const Eigen::Index d = data.d();
  const double nd = static_cast<double>(n);
  const double shape = 0.5 * (nd - 1.0);
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();

  Rng rng = make_stream(cfg.seed);

  std::vector<int> all(static_cast<std::size_t>(d));
  std::iota(all.begin(), all.end(), 0);
  std::optional<ModelFit> current = try_fit_model(data, all, prior.slab);
  if (!current) {
    if (cfg.full_model_warmup > 0)
      throw InvalidArgument(
          "the full model is singular or saturated under this slab; "
          "set the full-model warmup to 0");
    current = fit_model(data, {}, prior.slab);
  }
  double current_lml = log_marginal_likelihood(data, *current);

  ChainState s;
  s.delta.assign(static_cast<std::size_t>(d), 0);
  for (int j : current->included) s.delta[static_cast<std::size_t>(j)] = 1;
  s.alpha = Eigen::VectorXd::Zero(d);
  s.omega = prior.omega.a / (prior.omega.a + prior.omega.b);

  ChainOutput out;
  allocate(out, cfg, d);
  std::vector<int> order(all);

  const long total = cfg.burn_in + cfg.iterations;
  Clock::time_point start = Clock::now();
  for (long it = 0; it < total; ++it) {
    if (it == cfg.burn_in) start = Clock::now();
    const bool stored = it >= cfg.burn_in;
    const long row = it - cfg.burn_in;

    // (1a) delta from its marginal posterior, single-site, random order
    if (it >= cfg.full_model_warmup) {
      std::shuffle(order.begin(), order.end(), rng);
      for (int j : order) {
        const bool in = s.delta[static_cast<std::size_t>(j)] != 0;
        std::optional<ModelFit> candidate =
            try_fit_model(data, toggled(current->included, j), prior.slab);
        const double candidate_lml =
            candidate ? log_marginal_likelihood(data, *candidate) : kNegInf;
        const double lml_in = in ? current_lml : candidate_lml;
        const double lml_out = in ? candidate_lml : current_lml;
        double log_r;  // log R_j
        if (lml_in == kNegInf)
          log_r = std::numeric_limits<double>::infinity();
        else if (lml_out == kNegInf)
          log_r = kNegInf;
        else
          log_r = lml_out - lml_in;
        const double p = inclusion_from_log_ratio(log_r, s.omega);
        if (stored) out.incl_prob(row, j) = p;
        const bool next = draw_bernoulli(rng, p);
        if (next != in) {
          s.delta[static_cast<std::size_t>(j)] = next ? 1 : 0;
          current = std::move(candidate);
          current_lml = candidate_lml;
        }
      }
    }

    // (1b) sigma2, (1c) mu
    s.sigma2 = draw_inv_gamma(rng, shape, current->scale);
    s.mu = draw_normal(rng, data.y_bar(), std::sqrt(s.sigma2 / nd));

    // (2) omega
    const double d1 = static_cast<double>(current->size());
    s.omega = clamp_probability(
        draw_beta(rng, prior.omega.a + d1, prior.omega.b + static_cast<double>(d) - d1));

    // (3) alpha: exact zeros outside the model
    s.alpha.setZero();
    if (current->size() > 0) {
      const Eigen::VectorXd draw = draw_mvn_from_precision(
          rng, current->a_n, current->chol, s.sigma2 * current->cov_factor);
      s.alpha(current->included) = draw;
    }

    if (stored) record(out, cfg, row, s);
  }
  out.wall_time_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  out.indicator_mean /= static_cast<double>(cfg.iterations);
  return out;
}

ChainOutput run_mcmc(const Dataset& data, const PriorSpec& prior, const McmcConfig& cfg) {
  return prior.is_dirac() ? run_dirac_spike_mcmc(data, prior, cfg)
                          : run_continuous_spike_mcmc(data, prior, cfg);
}

}  // namespace spikeslab
