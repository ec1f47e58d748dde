#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spikeslab/analytic.hpp"
#include "spikeslab/diagnostics.hpp"
#include "spikeslab/errors.hpp"
#include "spikeslab/samplers.hpp"
#include "spikeslab/simulation.hpp"

namespace py = pybind11;
using namespace spikeslab;

namespace {

/// Prior from a family name and keyword hyperparameters; missing ones keep
/// the library defaults.
PriorSpec make_prior(const std::string& name, const py::dict& params, double a_omega, double b_omega) {
  Slab slab = slab_from_name(name);
  auto get = [&](const char* key, double fallback) {
    return params.contains(key) ? params[key].cast<double>() : fallback;
  };
  std::visit(
      [&](auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ssvs>) s = Ssvs{get("r", s.r), get("V", s.v)};
        else if constexpr (std::is_same_v<T, Nmig>) s = Nmig{get("r", s.r), get("nu", s.nu), get("Q", s.q)};
        else if constexpr (std::is_same_v<T, DiracI>) s = DiracI{get("c", s.c)};
        else if constexpr (std::is_same_v<T, DiracG>) s = DiracG{get("g", s.g)};
        else s = DiracF{get("b", s.b)};
      },
      slab);
  PriorSpec spec{slab, OmegaPrior{a_omega, b_omega}};
  spec.validate();
  return spec;
}

Indicators to_indicators(const std::vector<int>& delta) {
  Indicators out(delta.size());
  for (std::size_t j = 0; j < delta.size(); ++j) out[j] = delta[j] != 0;
  return out;
}

py::object optional_to_py(const std::optional<double>& v) {
  return v ? py::object(py::float_(*v)) : py::object(py::none());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spike and slab variable selection for linear regression";

  py::register_exception<Error>(m, "SpikeSlabError", PyExc_ValueError);

  m.def(
      "log_marginal_likelihood",
      [](const Eigen::VectorXd& y, const Eigen::MatrixXd& x, const std::vector<int>& delta,
         const std::string& prior, const py::dict& params, std::optional<double> sigma2) {
        const Dataset ds = load_dataset(y, x);
        const PriorSpec spec = make_prior(prior, params, 1.0, 1.0);
        if (sigma2) return log_conditional_marginal_likelihood(ds, to_indicators(delta), spec.slab, *sigma2);
        return log_marginal_likelihood(ds, to_indicators(delta), spec.slab);
      },
      py::arg("y"), py::arg("x"), py::arg("delta"), py::arg("prior") = "dirac-i",
      py::arg("params") = py::dict(), py::arg("sigma2") = py::none(),
      "Log marginal likelihood of the model with indicators delta under a Dirac-spike slab; "
      "conditional on sigma2 when given.");

  m.def(
      "run_mcmc",
      [](const Eigen::VectorXd& y, const Eigen::MatrixXd& x, const std::string& prior, const py::dict& params,
         double a_omega, double b_omega, long iterations, long burn_in, long warmup, std::uint64_t seed,
         bool traces) {
        const Dataset ds = load_dataset(y, x);
        McmcConfig cfg;
        cfg.iterations = iterations;
        cfg.burn_in = burn_in;
        cfg.full_model_warmup = warmup;
        cfg.seed = seed;
        cfg.store_traces = traces;
        const PriorSpec spec = make_prior(prior, params, a_omega, b_omega);
        ChainOutput out;
        {
          py::gil_scoped_release release;
          out = run_mcmc(ds, spec, cfg);
        }
        const SelectionReport rep = summarize(out);
        py::dict result;
        result["incl_prob"] = rep.incl_prob_hat;
        result["indicator_mean"] = rep.indicator_mean;
        py::list iact, ess;
        for (Eigen::Index j = 0; j < rep.size(); ++j) {
          iact.append(optional_to_py(rep.iact[static_cast<std::size_t>(j)]));
          ess.append(optional_to_py(rep.ess[static_cast<std::size_t>(j)]));
        }
        result["iact"] = iact;
        result["ess"] = ess;
        result["mpm"] = rep.mpm;
        result["incl_prob_trace"] = out.incl_prob;
        if (traces) {
          result["alpha"] = out.alpha_draws;
          result["delta"] = Eigen::MatrixXd(out.delta_draws.cast<double>());
          result["sigma2"] = out.sigma2_draws;
          result["omega"] = out.omega_draws;
          result["mu"] = out.mu_draws;
        }
        return result;
      },
      py::arg("y"), py::arg("x"), py::arg("prior") = "dirac-i", py::arg("params") = py::dict(),
      py::arg("a_omega") = 1.0, py::arg("b_omega") = 1.0, py::arg("iterations") = 5000,
      py::arg("burn_in") = 1000, py::arg("warmup") = 500, py::arg("seed") = 1, py::arg("traces") = false,
      "Runs the sampler and returns inclusion probabilities with chain diagnostics.");

  m.def(
      "h_orthogonal",
      [](double alpha_hat, double n, const std::string& prior, const py::dict& params, double s2, double sigma2) {
        return h_orthogonal(OrthogonalSetting{alpha_hat, s2, n, sigma2, 0.5},
                            make_prior(prior, params, 1.0, 1.0).slab);
      },
      py::arg("alpha_hat"), py::arg("n"), py::arg("prior") = "dirac-i", py::arg("params") = py::dict(),
      py::arg("s2") = 1.0, py::arg("sigma2") = 1.0);

  m.def(
      "h_correlated_pair",
      [](double alpha_hat2, double r12, double r_y1, double s_y, double n, const std::string& prior,
         const py::dict& params, double sigma2) {
        return h_correlated_pair(pair_from_estimate(alpha_hat2, r12, r_y1, s_y, n, sigma2),
                                 make_prior(prior, params, 1.0, 1.0).slab);
      },
      py::arg("alpha_hat2"), py::arg("r12"), py::arg("r_y1"), py::arg("s_y"), py::arg("n"),
      py::arg("prior") = "dirac-i", py::arg("params") = py::dict(), py::arg("sigma2") = 1.0);

  m.def("inclusion_probability", &inclusion_probability_from_h, py::arg("h"), py::arg("omega") = 0.5);
  m.def("inclusion_probability_integrated", &inclusion_probability_integrated_omega, py::arg("h"),
        py::arg("a_omega") = 1.0, py::arg("b_omega") = 1.0);

  m.def(
      "iact",
      [](const std::vector<double>& series) { return iact_initial_monotone(series); }, py::arg("series"),
      "Inefficiency factor by the initial monotone sequence estimator; None for a constant series.");

  m.def(
      "simulate",
      [](const std::string& design, long replications, std::uint64_t scenario_seed, double c, long iterations,
         long burn_in, long warmup, std::uint64_t seed) {
        Scenario sc = design == "correlated"     ? Scenario::correlated(replications, scenario_seed)
                      : design == "signal-sweep" ? Scenario::signal_sweep(replications, scenario_seed)
                      : design == "independent"  ? Scenario::independent(replications, scenario_seed)
                                                 : throw InvalidArgument("unknown design '" + design + "'");
        McmcConfig cfg;
        cfg.iterations = iterations;
        cfg.burn_in = burn_in;
        cfg.full_model_warmup = warmup;
        cfg.seed = seed;
        StudyTables tables;
        {
          py::gil_scoped_release release;
          tables = run_study(sc, matched_priors(sc.n, c), cfg);
        }
        py::dict result;
        for (const auto& p : tables.priors) {
          py::dict row;
          row["mpm_count"] = p.mpm_count;
          row["mean_incl_prob"] = p.mean_incl_prob;
          row["mean_iact"] = optional_to_py(p.iact.mean);
          row["misclassification"] = optional_to_py(p.misclassification);
          row["completed"] = p.completed;
          result[py::str(p.prior)] = row;
        }
        return result;
      },
      py::arg("design") = "independent", py::arg("replications") = 100, py::arg("scenario_seed") = 2024,
      py::arg("c") = 1.0, py::arg("iterations") = 5000, py::arg("burn_in") = 1000, py::arg("warmup") = 500,
      py::arg("seed") = 1, "Simulation study over the five matched priors; returns per-prior summaries.");
}
