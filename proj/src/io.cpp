#include "spikeslab/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "spikeslab/analytic.hpp"
#include "spikeslab/errors.hpp"
#include "spikeslab/samplers.hpp"

namespace spikeslab::io {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field.push_back('"');
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(trim(field));
      field.clear();
    } else {
      field.push_back(ch);
    }
  }
  fields.push_back(trim(field));
  return fields;
}

std::string field_or_empty(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string{};
}

std::string standardization_name(Standardization p) {
  return p == Standardization::kAuto ? "auto" : "center";
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw InvalidArgument("unknown column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || line.front() == '#') continue;
    auto fields = split_line(line);
    if (table.header.empty()) {
      table.header = std::move(fields);
      continue;
    }
    if (fields.size() != table.header.size()) {
      std::ostringstream msg;
      msg << "line " << line_no << " has " << fields.size() << " fields, expected "
          << table.header.size();
      throw InvalidArgument(msg.str());
    }
    table.rows.push_back(std::move(fields));
  }
  if (table.header.empty()) throw InvalidArgument("CSV input has no header row");
  return table;
}

CsvTable read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
  return read_csv(in);
}

bool is_missing(const std::string& field) {
  if (field.empty()) return true;
  std::string lower(field);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return lower == "na" || lower == "nan" || lower == "null";
}

double parse_number(const std::string& field, const std::string& context) {
  double value = 0.0;
  const std::string text = trim(field);
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value))
    throw InvalidArgument("cannot parse '" + field + "' as a number in " + context);
  return value;
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

AnalysisData prepare_analysis_data(const CsvTable& table, const std::string& response,
                                   const std::vector<std::string>& covariates,
                                   Standardization policy, bool scale_response) {
  const std::size_t ycol = table.column(response);
  std::vector<std::string> names = covariates;
  if (names.empty())
    for (const auto& h : table.header)
      if (h != response) names.push_back(h);
  if (names.empty()) throw InvalidArgument("no covariate columns selected");
  std::vector<std::size_t> xcols;
  for (const auto& nm : names) {
    if (nm == response) throw InvalidArgument("column '" + nm + "' is the response");
    xcols.push_back(table.column(nm));
  }

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    bool missing = is_missing(row[ycol]);
    for (auto c : xcols) missing = missing || is_missing(row[c]);
    if (!missing) keep.push_back(i);
  }

  const auto n = static_cast<Eigen::Index>(keep.size());
  const auto d = static_cast<Eigen::Index>(xcols.size());
  if (n < 2) throw InvalidArgument("fewer than two complete rows after excluding missing values");

  Eigen::VectorXd y(n);
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = table.rows[keep[static_cast<std::size_t>(i)]];
    y(i) = parse_number(row[ycol], "column '" + response + "'");
    for (Eigen::Index j = 0; j < d; ++j)
      x(i, j) = parse_number(row[xcols[static_cast<std::size_t>(j)]],
                             "column '" + names[static_cast<std::size_t>(j)] + "'");
  }

  const Eigen::VectorXd centers = x.colwise().mean().transpose();
  Eigen::VectorXd scales = Eigen::VectorXd::Ones(d);
  std::vector<bool> binary(static_cast<std::size_t>(d), false);
  for (Eigen::Index j = 0; j < d; ++j) {
    const auto& col = x.col(j);
    const bool is_binary = (col.array() == 0.0 || col.array() == 1.0).all();
    binary[static_cast<std::size_t>(j)] = is_binary;
    const double sd = std::sqrt((col.array() - centers(j)).square().mean());
    if (!(sd > 0.0))
      throw InvalidArgument("covariate '" + names[static_cast<std::size_t>(j)] +
                            "' is constant on the analysis sample");
    if (policy == Standardization::kAuto && !is_binary) scales(j) = sd;
  }
  if (!((y.array() - y.mean()).abs() > 0.0).any())
    throw InvalidArgument("response '" + response + "' is constant on the analysis sample");
  x.rowwise() -= centers.transpose();
  x.array().rowwise() /= scales.transpose().array();

  double response_scale = 1.0;
  if (scale_response) {
    const Eigen::VectorXd yc = y.array() - y.mean();
    const Eigen::VectorXd beta = x.colPivHouseholderQr().solve(yc);
    const double dof = static_cast<double>(n - d - 1);
    if (!(dof > 0.0))
      throw InvalidArgument("standardize-response needs more rows than covariates + 1");
    const double s = std::sqrt((yc - x * beta).squaredNorm() / dof);
    if (!(s > 0.0)) throw InvalidArgument("full-model residual standard deviation is zero");
    response_scale = s;
    y /= s;
  }

  AnalysisData ad{Dataset::load(y, x, true), names, centers, scales, binary, 1.0, 0, 0};
  ad.rows_used = static_cast<long>(n);
  ad.rows_dropped = static_cast<long>(table.rows.size()) - ad.rows_used;
  ad.response_scale = response_scale;
  return ad;
}

std::map<std::string, std::string> config_echo(const FitConfig& cfg, const AnalysisData& ad) {
  std::map<std::string, std::string> echo;
  echo["prior"] = cfg.prior.name();
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ssvs>) {
          echo["r"] = format_number(s.r);
          echo["V"] = format_number(s.v);
        } else if constexpr (std::is_same_v<T, Nmig>) {
          echo["r"] = format_number(s.r);
          echo["nu"] = format_number(s.nu);
          echo["Q"] = format_number(s.q);
        } else if constexpr (std::is_same_v<T, DiracI>) {
          echo["c"] = format_number(s.c);
        } else if constexpr (std::is_same_v<T, DiracG>) {
          echo["g"] = format_number(s.g);
        } else {
          echo["b"] = format_number(s.b);
        }
      },
      cfg.prior.slab);
  echo["a_omega"] = format_number(cfg.prior.omega.a);
  echo["b_omega"] = format_number(cfg.prior.omega.b);
  echo["iterations"] = std::to_string(cfg.mcmc.iterations);
  echo["burnin"] = std::to_string(cfg.mcmc.burn_in);
  echo["warmup_full"] = std::to_string(cfg.mcmc.full_model_warmup);
  echo["seed"] = std::to_string(cfg.mcmc.seed);
  echo["standardization"] = standardization_name(cfg.policy);
  echo["response_scale"] = format_number(ad.response_scale);
  echo["rows_used"] = std::to_string(ad.rows_used);
  echo["rows_dropped"] = std::to_string(ad.rows_dropped);
  return echo;
}

void write_report(std::ostream& out, Format format, const SelectionReport& rep,
                  const AnalysisData& ad, const FitConfig& cfg) {
  const auto echo = config_echo(cfg, ad);
  const auto d = rep.size();
  if (format == Format::kJson) {
    nlohmann::ordered_json j;
    j["config"] = nlohmann::ordered_json(echo);
    j["seed"] = cfg.mcmc.seed;
    if (cfg.with_timing) j["wall_time_seconds"] = rep.wall_time_seconds;
    auto& regs = j["regressors"] = nlohmann::ordered_json::array();
    for (Eigen::Index k = 0; k < d; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      nlohmann::ordered_json r;
      auto opt = [](const std::optional<double>& v) {
        return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
      };
      r["name"] = ad.names[kk];
      r["incl_prob"] = rep.incl_prob_hat(k);
      r["indicator_mean"] = rep.indicator_mean(k);
      r["iact"] = opt(rep.iact[kk]);
      r["ess"] = opt(rep.ess[kk]);
      if (cfg.with_timing) r["ess_per_sec"] = opt(rep.ess_per_sec[kk]);
      r["mpm"] = static_cast<bool>(rep.mpm[kk]);
      r["center"] = ad.centers(k);
      r["scale"] = ad.scales(k);
      r["binary"] = static_cast<bool>(ad.binary[kk]);
      regs.push_back(std::move(r));
    }
    out << j.dump(2) << '\n';
    return;
  }

  out << "# spikeslab selection report\n";
  for (const auto& [k, v] : echo) out << "# " << k << '=' << v << '\n';
  if (cfg.with_timing) out << "# wall_time_seconds=" << format_number(rep.wall_time_seconds) << '\n';
  out << "name,incl_prob,indicator_mean,iact,ess,";
  if (cfg.with_timing) out << "ess_per_sec,";
  out << "mpm,center,scale,binary\n";
  for (Eigen::Index k = 0; k < d; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    out << ad.names[kk] << ',' << format_number(rep.incl_prob_hat(k)) << ','
        << format_number(rep.indicator_mean(k)) << ',' << field_or_empty(rep.iact[kk]) << ','
        << field_or_empty(rep.ess[kk]) << ',';
    if (cfg.with_timing) out << field_or_empty(rep.ess_per_sec[kk]) << ',';
    out << (rep.mpm[kk] ? 1 : 0) << ',' << format_number(ad.centers(k)) << ','
        << format_number(ad.scales(k)) << ',' << (ad.binary[kk] ? 1 : 0) << '\n';
  }
}

namespace {

void resize_report(ReportFile& f, std::size_t d) {
  auto& r = f.report;
  r.incl_prob_hat.resize(static_cast<Eigen::Index>(d));
  r.indicator_mean.resize(static_cast<Eigen::Index>(d));
  r.iact.assign(d, std::nullopt);
  r.ess.assign(d, std::nullopt);
  r.ess_per_sec.assign(d, std::nullopt);
  r.mpm.assign(d, false);
  f.centers.resize(static_cast<Eigen::Index>(d));
  f.scales.resize(static_cast<Eigen::Index>(d));
  f.binary.assign(d, false);
  f.names.resize(d);
}

std::optional<double> optional_number(const std::string& s, const std::string& ctx) {
  if (s.empty()) return std::nullopt;
  return parse_number(s, ctx);
}

}  // namespace

ReportFile read_report(std::istream& in, Format format) {
  ReportFile f;
  if (format == Format::kJson) {
    nlohmann::json j = nlohmann::json::parse(in);
    for (const auto& [k, v] : j.at("config").items()) f.config[k] = v.get<std::string>();
    const auto& regs = j.at("regressors");
    resize_report(f, regs.size());
    if (j.contains("wall_time_seconds"))
      f.report.wall_time_seconds = j["wall_time_seconds"].get<double>();
    auto opt = [](const nlohmann::json& v) -> std::optional<double> {
      if (v.is_null()) return std::nullopt;
      return v.get<double>();
    };
    for (std::size_t k = 0; k < regs.size(); ++k) {
      const auto& r = regs[k];
      const auto kk = static_cast<Eigen::Index>(k);
      f.names[k] = r.at("name").get<std::string>();
      f.report.incl_prob_hat(kk) = r.at("incl_prob").get<double>();
      f.report.indicator_mean(kk) = r.at("indicator_mean").get<double>();
      f.report.iact[k] = opt(r.at("iact"));
      f.report.ess[k] = opt(r.at("ess"));
      if (r.contains("ess_per_sec")) f.report.ess_per_sec[k] = opt(r["ess_per_sec"]);
      f.report.mpm[k] = r.at("mpm").get<bool>();
      f.centers(kk) = r.at("center").get<double>();
      f.scales(kk) = r.at("scale").get<double>();
      f.binary[k] = r.at("binary").get<bool>();
    }
  } else {
    std::string line;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (line.front() == '#') {
        const auto eq = line.find('=');
        if (eq != std::string::npos) {
          const std::string key = trim(std::string_view(line).substr(1, eq - 1));
          const std::string value = trim(std::string_view(line).substr(eq + 1));
          if (key == "wall_time_seconds")
            f.report.wall_time_seconds = parse_number(value, key);
          else
            f.config[key] = value;
        }
        continue;
      }
      if (header.empty())
        header = split_line(line);
      else
        rows.push_back(split_line(line));
    }
    CsvTable t{header, rows};
    resize_report(f, rows.size());
    const bool timing = std::find(header.begin(), header.end(), "ess_per_sec") != header.end();
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const auto& r = rows[k];
      const auto kk = static_cast<Eigen::Index>(k);
      f.names[k] = r.at(t.column("name"));
      f.report.incl_prob_hat(kk) = parse_number(r.at(t.column("incl_prob")), "incl_prob");
      f.report.indicator_mean(kk) =
          parse_number(r.at(t.column("indicator_mean")), "indicator_mean");
      f.report.iact[k] = optional_number(r.at(t.column("iact")), "iact");
      f.report.ess[k] = optional_number(r.at(t.column("ess")), "ess");
      if (timing)
        f.report.ess_per_sec[k] = optional_number(r.at(t.column("ess_per_sec")), "ess_per_sec");
      f.report.mpm[k] = r.at(t.column("mpm")) == "1";
      f.centers(kk) = parse_number(r.at(t.column("center")), "center");
      f.scales(kk) = parse_number(r.at(t.column("scale")), "scale");
      f.binary[k] = r.at(t.column("binary")) == "1";
    }
  }
  if (auto it = f.config.find("iterations"); it != f.config.end())
    f.report.m = std::stol(it->second);
  return f;
}

void write_traces(std::ostream& out, const ChainOutput& output,
                  const std::vector<std::string>& names) {
  const bool traces = output.alpha_draws.rows() == output.m && output.m > 0;
  out << "iteration";
  for (const auto& nm : names) out << ",p_" << nm;
  if (traces) {
    for (const auto& nm : names) out << ",delta_" << nm;
    for (const auto& nm : names) out << ",alpha_" << nm;
    out << ",sigma2,omega,mu";
  }
  out << '\n';
  for (long m = 0; m < output.m; ++m) {
    out << m;
    for (Eigen::Index j = 0; j < output.incl_prob.cols(); ++j)
      out << ',' << format_number(output.incl_prob(m, j));
    if (traces) {
      for (Eigen::Index j = 0; j < output.delta_draws.cols(); ++j)
        out << ',' << static_cast<int>(output.delta_draws(m, j));
      for (Eigen::Index j = 0; j < output.alpha_draws.cols(); ++j)
        out << ',' << format_number(output.alpha_draws(m, j));
      out << ',' << format_number(output.sigma2_draws(m)) << ','
          << format_number(output.omega_draws(m)) << ',' << format_number(output.mu_draws(m));
    }
    out << '\n';
  }
}

FitResult fit(const CsvTable& table, const std::string& response,
              const std::vector<std::string>& covariates, const FitConfig& cfg) {
  cfg.prior.validate();
  cfg.mcmc.validate();
  AnalysisData ad =
      prepare_analysis_data(table, response, covariates, cfg.policy, cfg.scale_response);
  ChainOutput out = run_mcmc(ad.data, cfg.prior, cfg.mcmc);
  SelectionReport rep = summarize(out);
  return FitResult{std::move(ad), std::move(out), std::move(rep)};
}

// ---------------------------------------------------------------- curves

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> grid;
  if (spec.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(parse_number(trim(item), "grid"));
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
      throw InvalidArgument("grid must be start:stop:step with step > 0 and stop >= start");
    const auto count = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (long k = 0; k <= count; ++k) grid.push_back(parts[0] + static_cast<double>(k) * parts[2]);
  } else {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) grid.push_back(parse_number(trim(item), "grid"));
  }
  if (grid.empty()) throw InvalidArgument("grid is empty");
  return grid;
}

namespace {

double probability_for(double h, const OmegaHandling& omega) {
  if (omega.fixed) return inclusion_probability_from_h(h, *omega.fixed);
  return inclusion_probability_integrated_omega(h, omega.prior.a, omega.prior.b);
}

}  // namespace

std::vector<CurvePoint> orthogonal_curve(const std::vector<double>& alpha_grid,
                                         const Slab& slab, double n, double s2,
                                         double sigma2, const OmegaHandling& omega) {
  std::vector<CurvePoint> pts;
  const std::string series = PriorSpec{slab, {}}.name();
  for (double a : alpha_grid) {
    OrthogonalSetting st{a, s2, n, sigma2, omega.fixed.value_or(0.5)};
    pts.push_back({series, a, probability_for(h_orthogonal(st, slab), omega)});
  }
  return pts;
}

std::vector<CurvePoint> correlated_pair_curve(const std::vector<double>& alpha_grid,
                                              const std::vector<double>& r12_values,
                                              const Slab& slab, double r_y1, double s_y,
                                              double n, double sigma2,
                                              const OmegaHandling& omega) {
  std::vector<CurvePoint> pts;
  for (double r12 : r12_values) {
    const std::string series = "r12=" + format_number(r12);
    for (double a : alpha_grid) {
      const auto st =
          pair_from_estimate(a, r12, r_y1, s_y, n, sigma2, omega.fixed.value_or(0.5));
      pts.push_back({series, a, probability_for(h_correlated_pair(st, slab), omega)});
    }
  }
  return pts;
}

Slab matched_slab(const Slab& family, double c, long n) {
  if (!(c > 0.0)) throw InvalidArgument("slab variance c must be positive");
  const double nc = static_cast<double>(n) * c;
  return std::visit(
      [&](const auto& s) -> Slab {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Ssvs>) return Ssvs{s.r, c};
        else if constexpr (std::is_same_v<T, Nmig>) return Nmig{s.r, s.nu, c * (s.nu - 1.0)};
        else if constexpr (std::is_same_v<T, DiracI>) return DiracI{c};
        else if constexpr (std::is_same_v<T, DiracG>) return DiracG{nc};
        else return DiracF{1.0 / nc};
      },
      family);
}

std::vector<CurvePoint> inclusion_path(const AnalysisData& ad, const PriorSpec& family,
                                       const std::vector<double>& c_values,
                                       const McmcConfig& mcmc) {
  std::vector<CurvePoint> pts;
  for (double c : c_values) {
    PriorSpec prior{matched_slab(family.slab, c, static_cast<long>(ad.data.n())), family.omega};
    const Eigen::VectorXd p = run_mcmc(ad.data, prior, mcmc).inclusion_probabilities();
    for (Eigen::Index j = 0; j < p.size(); ++j)
      pts.push_back({ad.names[static_cast<std::size_t>(j)], c, p(j)});
  }
  return pts;
}

void write_curve(std::ostream& out, const std::vector<CurvePoint>& points) {
  out << "series,x,value\n";
  for (const auto& p : points)
    out << p.series << ',' << format_number(p.x) << ',' << format_number(p.value) << '\n';
}

// ------------------------------------------------------------ study output

void write_inclusion_counts(std::ostream& out, const StudyTables& t) {
  out << "j,alpha";
  for (const auto& p : t.priors) out << ',' << p.prior;
  out << '\n';
  for (int j : t.evaluated) {
    out << j + 1 << ',' << format_number(t.column_effects(j));
    for (const auto& p : t.priors) out << ',' << p.mpm_count[static_cast<std::size_t>(j)];
    out << '\n';
  }
}

void write_efficiency(std::ostream& out, const StudyTables& t, bool with_timing) {
  out << "prior,completed,failed,misclassification,mean_iact,iact_used,iact_skipped";
  if (with_timing) out << ",mean_ess_per_sec";
  out << '\n';
  for (const auto& p : t.priors) {
    out << p.prior << ',' << p.completed << ',' << p.failed_replications.size() << ','
        << field_or_empty(p.misclassification) << ',' << field_or_empty(p.iact.mean) << ','
        << p.iact.used << ',' << p.iact.skipped;
    if (with_timing) out << ',' << field_or_empty(p.ess_per_sec.mean);
    out << '\n';
  }
}

void write_mean_inclusion(std::ostream& out, const StudyTables& t) {
  out << "j,alpha";
  for (const auto& p : t.priors) out << ',' << p.prior;
  out << '\n';
  for (Eigen::Index j = 0; j < t.column_effects.size(); ++j) {
    out << j + 1 << ',' << format_number(t.column_effects(j));
    for (const auto& p : t.priors) out << ',' << format_number(p.mean_incl_prob(j));
    out << '\n';
  }
}

}  // namespace spikeslab::io
