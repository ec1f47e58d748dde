// Command-line driver: fit, simulate, analytic curves and chain diagnostics.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spikeslab/diagnostics.hpp"
#include "spikeslab/errors.hpp"
#include "spikeslab/io.hpp"
#include "spikeslab/simulation.hpp"

namespace fs = std::filesystem;
using namespace spikeslab;

namespace {

struct PriorFlags {
  std::string name = "dirac-i";
  double c = 1.0;
  std::optional<double> g, b, v, r, nu, q;
  double a_omega = 1.0, b_omega = 1.0;

  void add(CLI::App& app) {
    app.add_option("--prior", name, "ssvs, nmig, dirac-i, dirac-g or dirac-f")
        ->check(CLI::IsMember({"ssvs", "nmig", "dirac-i", "dirac-g", "dirac-f"}));
    app.add_option("--c", c, "slab variance (i-slab; sets g = Nc, b = 1/(Nc), V = c by default)");
    app.add_option("--g", g, "g-slab scale");
    app.add_option("--b", b, "f-slab fraction");
    app.add_option("--V", v, "SSVS slab variance");
    app.add_option("--r", r, "spike/slab variance ratio");
    app.add_option("--nu", nu, "NMIG inverse-gamma shape");
    app.add_option("--Q", q, "NMIG inverse-gamma scale");
    app.add_option("--a-omega", a_omega, "Beta prior on omega, first shape");
    app.add_option("--b-omega", b_omega, "Beta prior on omega, second shape");
  }

  /// Unset hyperparameters follow the matched defaults for n observations.
  PriorSpec build(long n) const {
    const double nc = static_cast<double>(n) * c;
    Slab slab;
    if (name == "ssvs") slab = Ssvs{r.value_or(1e-4), v.value_or(c)};
    else if (name == "nmig") slab = Nmig{r.value_or(1e-4), nu.value_or(5.0), q.value_or(4.0)};
    else if (name == "dirac-i") slab = DiracI{c};
    else if (name == "dirac-g") slab = DiracG{g.value_or(nc)};
    else slab = DiracF{b.value_or(1.0 / nc)};
    PriorSpec spec{slab, OmegaPrior{a_omega, b_omega}};
    for (const auto& w : spec.validate()) std::cerr << "warning: " << w << '\n';
    return spec;
  }
};

struct McmcFlags {
  McmcConfig cfg;
  std::optional<std::uint64_t> seed;

  void add(CLI::App& app) {
    app.add_option("--iterations", cfg.iterations, "stored draws M");
    app.add_option("--burnin", cfg.burn_in, "discarded draws");
    app.add_option("--warmup-full", cfg.full_model_warmup, "burn-in draws with every regressor included");
    app.add_option("--seed", seed, "master seed (default: $SPIKESLAB_SEED or 1)");
  }

  McmcConfig build() const {
    McmcConfig out = cfg;
    if (seed) {
      out.seed = *seed;
    } else if (const char* env = std::getenv("SPIKESLAB_SEED")) {
      try {
        out.seed = std::stoull(env);
      } catch (const std::exception&) {
        throw InvalidArgument(std::string("SPIKESLAB_SEED is not an unsigned integer: ") + env);
      }
    }
    out.validate();
    return out;
  }
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw Error("cannot write " + (dir / name).string());
  return out;
}

io::Format parse_format(const std::string& s) { return s == "json" ? io::Format::kJson : io::Format::kCsv; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spike and slab variable selection for linear regression"};
  app.require_subcommand(1);

  std::string out_dir = ".";
  std::string format = "csv";
  bool with_timing = false;

  // fit
  auto* fit_cmd = app.add_subcommand("fit", "run the sampler on a CSV data set");
  std::string data_path, response, covariates;
  bool standardize_response = false, center_only = false, traces = false;
  PriorFlags fit_prior;
  McmcFlags fit_mcmc;
  fit_cmd->add_option("--data", data_path, "CSV file with a header row")->required();
  fit_cmd->add_option("--response", response, "response column")->required();
  fit_cmd->add_option("--covariates", covariates, "comma-separated covariate columns (default: all others)");
  fit_cmd->add_flag("--standardize-response", standardize_response,
                    "divide y by the residual SD of the full least-squares fit");
  fit_cmd->add_flag("--center-only", center_only, "center covariates without scaling");
  fit_cmd->add_flag("--traces", traces, "also write traces.csv");
  fit_prior.add(*fit_cmd);
  fit_mcmc.add(*fit_cmd);

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "replicated simulation study over all five priors");
  std::string design = "independent";
  long replications = 100;
  std::uint64_t scenario_seed = 2024;
  double sim_c = 1.0;
  unsigned threads = 0;
  McmcFlags sim_mcmc;
  sim_cmd->add_option("--design", design, "independent, correlated or signal-sweep")
      ->check(CLI::IsMember({"independent", "correlated", "signal-sweep"}));
  sim_cmd->add_option("--replications", replications, "number of data sets");
  sim_cmd->add_option("--scenario-seed", scenario_seed, "seed for data generation");
  sim_cmd->add_option("--c", sim_c, "slab variance; g = Nc, b = 1/(Nc), V = c");
  sim_cmd->add_option("--threads", threads, "worker threads (0: all cores)");
  sim_mcmc.add(*sim_cmd);

  // analytic
  auto* an_cmd = app.add_subcommand("analytic", "closed-form and refitted inclusion-probability curves");
  std::string kind = "orthogonal", grid = "0:1.5:0.05", r12_list = "0,0.5,0.9", c_values = "1,2.5,5,10";
  double n = 40.0, s2 = 1.0, sigma2 = 1.0, r_y1 = 0.9, s_y = 2.0;
  std::optional<double> omega_fixed;
  PriorFlags an_prior;
  McmcFlags an_mcmc;
  an_cmd->add_option("--kind", kind, "orthogonal, correlated-pair or inclusion-path")
      ->check(CLI::IsMember({"orthogonal", "correlated-pair", "inclusion-path"}));
  an_cmd->add_option("--grid", grid, "alpha-hat grid, start:stop:step or a list");
  an_cmd->add_option("--n", n, "sample size");
  an_cmd->add_option("--s2", s2, "regressor variance (orthogonal)");
  an_cmd->add_option("--sigma2", sigma2, "error variance");
  an_cmd->add_option("--omega", omega_fixed, "fixed omega (default: integrate over the Beta prior)");
  an_cmd->add_option("--r12", r12_list, "correlations of the pair (correlated-pair)");
  an_cmd->add_option("--r-y1", r_y1, "correlation of y with x_1 (correlated-pair)");
  an_cmd->add_option("--s-y", s_y, "standard deviation of y (correlated-pair)");
  an_cmd->add_option("--c-values", c_values, "slab variances for the inclusion path");
  an_cmd->add_option("--data", data_path, "CSV file (inclusion-path)");
  an_cmd->add_option("--response", response, "response column (inclusion-path)");
  an_cmd->add_option("--covariates", covariates, "covariate columns (inclusion-path)");
  an_cmd->add_flag("--standardize-response", standardize_response, "scale y as in fit (inclusion-path)");
  an_prior.add(*an_cmd);
  an_mcmc.add(*an_cmd);

  // diagnose
  auto* diag_cmd = app.add_subcommand("diagnose", "inefficiency factors of the columns of a trace file");
  std::string trace_path, prefix = "p_";
  diag_cmd->add_option("--traces", trace_path, "CSV with one column per series")->required();
  diag_cmd->add_option("--prefix", prefix, "only columns whose name starts with this");

  for (auto* cmd : {fit_cmd, sim_cmd, an_cmd, diag_cmd})
    cmd->add_option("--out-dir", out_dir, "output directory");
  fit_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  for (auto* cmd : {fit_cmd, sim_cmd})
    cmd->add_flag("--with-timing", with_timing, "include wall-clock fields (breaks byte-identical reruns)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fit_cmd->parsed()) {
      const auto table = io::read_csv_file(data_path);
      io::FitConfig cfg;
      cfg.policy = center_only ? io::Standardization::kCenterOnly : io::Standardization::kAuto;
      cfg.scale_response = standardize_response;
      cfg.with_timing = with_timing;
      cfg.mcmc = fit_mcmc.build();
      cfg.mcmc.store_traces = traces;
      const auto cols = split_list(covariates);
      // the slab defaults depend on N, which is known only after row exclusion
      const auto probe = io::prepare_analysis_data(table, response, cols, cfg.policy, cfg.scale_response);
      cfg.prior = fit_prior.build(probe.data.n());
      const auto result = io::fit(table, response, cols, cfg);
      const auto fmt = parse_format(format);
      auto out = open_output(out_dir, fmt == io::Format::kJson ? "report.json" : "report.csv");
      io::write_report(out, fmt, result.report, result.analysis, cfg);
      if (traces) {
        auto tr = open_output(out_dir, "traces.csv");
        io::write_traces(tr, result.output, result.analysis.names);
      }
      if (result.analysis.rows_dropped > 0)
        std::cerr << "dropped " << result.analysis.rows_dropped << " rows with missing values\n";
    } else if (sim_cmd->parsed()) {
      Scenario sc = design == "correlated"     ? Scenario::correlated(replications, scenario_seed)
                    : design == "signal-sweep" ? Scenario::signal_sweep(replications, scenario_seed)
                                               : Scenario::independent(replications, scenario_seed);
      const auto tables = run_study(sc, matched_priors(sc.n, sim_c), sim_mcmc.build(), threads);
      auto counts = open_output(out_dir, "inclusion_counts.csv");
      io::write_inclusion_counts(counts, tables);
      auto eff = open_output(out_dir, "efficiency.csv");
      io::write_efficiency(eff, tables, with_timing);
      auto mean = open_output(out_dir, "mean_inclusion.csv");
      io::write_mean_inclusion(mean, tables);
      for (const auto& p : tables.priors)
        if (!p.failed_replications.empty())
          std::cerr << "warning: " << p.prior << " failed on " << p.failed_replications.size()
                    << " replications\n";
    } else if (an_cmd->parsed()) {
      const io::OmegaHandling omega{omega_fixed, OmegaPrior{an_prior.a_omega, an_prior.b_omega}};
      std::vector<io::CurvePoint> points;
      if (kind == "orthogonal") {
        points = io::orthogonal_curve(io::parse_grid(grid), an_prior.build(static_cast<long>(n)).slab, n, s2,
                                      sigma2, omega);
      } else if (kind == "correlated-pair") {
        points = io::correlated_pair_curve(io::parse_grid(grid), io::parse_grid(r12_list),
                                           an_prior.build(static_cast<long>(n)).slab, r_y1, s_y, n, sigma2,
                                           omega);
      } else {
        if (data_path.empty() || response.empty())
          throw InvalidArgument("inclusion-path needs --data and --response");
        const auto table = io::read_csv_file(data_path);
        const auto ad = io::prepare_analysis_data(table, response, split_list(covariates),
                                                  io::Standardization::kAuto, standardize_response);
        points = io::inclusion_path(ad, an_prior.build(ad.data.n()), io::parse_grid(c_values),
                                    an_mcmc.build());
      }
      auto out = open_output(out_dir, "curve_" + kind + ".csv");
      io::write_curve(out, points);
    } else if (diag_cmd->parsed()) {
      const auto table = io::read_csv_file(trace_path);
      auto out = open_output(out_dir, "diagnostics.csv");
      out << "series,mean,iact,ess\n";
      for (std::size_t k = 0; k < table.header.size(); ++k) {
        const auto& name = table.header[k];
        if (name.rfind(prefix, 0) != 0) continue;
        std::vector<double> series;
        series.reserve(table.rows.size());
        for (const auto& row : table.rows) series.push_back(io::parse_number(row[k], "column " + name));
        double mean = 0.0;
        for (double v : series) mean += v;
        mean /= static_cast<double>(series.size());
        const auto tau = iact_initial_monotone(series);
        out << name << ',' << io::format_number(mean) << ',';
        if (tau) {
          const double t = std::max(1.0, *tau);
          out << io::format_number(t) << ',' << io::format_number(static_cast<double>(series.size()) / t);
        } else {
          out << "NA,NA";
        }
        out << '\n';
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
