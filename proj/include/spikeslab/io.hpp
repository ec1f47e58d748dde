#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spikeslab/chain.hpp"
#include "spikeslab/dataset.hpp"
#include "spikeslab/diagnostics.hpp"
#include "spikeslab/prior.hpp"
#include "spikeslab/simulation.hpp"

namespace spikeslab::io {

/// Comma-separated table with a header row. Fields are kept as text.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws InvalidArgument naming the column.
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::filesystem::path& path);

/// True for the empty string and NA / NaN spellings.
bool is_missing(const std::string& field);

/// Parses a decimal number; throws InvalidArgument mentioning `context`.
double parse_number(const std::string& field, const std::string& context);

/// Shortest text that reads back to the same double.
std::string format_number(double value);

enum class Standardization {
  kAuto,        ///< metric covariates standardized, 0/1 covariates centered
  kCenterOnly,  ///< every covariate centered only
};

/// Analysis sample after missing-row exclusion and covariate scaling.
struct AnalysisData {
  Dataset data;
  std::vector<std::string> names;
  Eigen::VectorXd centers;  ///< covariate means on the analysis sample
  Eigen::VectorXd scales;   ///< divisor applied after centering (1 for binary)
  std::vector<bool> binary;
  double response_scale = 1.0;  ///< y was divided by this
  long rows_used = 0;
  long rows_dropped = 0;
};

/// Builds the analysis dataset from a table. `covariates` empty means every
/// column except the response, in file order. With `scale_response`, y is
/// divided by the residual standard deviation of the full least-squares fit.
AnalysisData prepare_analysis_data(const CsvTable& table, const std::string& response,
                                   const std::vector<std::string>& covariates,
                                   Standardization policy, bool scale_response);

/// Everything `fit` needs besides the data.
struct FitConfig {
  PriorSpec prior;
  McmcConfig mcmc;
  Standardization policy = Standardization::kAuto;
  bool scale_response = false;
  bool with_timing = false;  ///< include wall-clock dependent fields
};

/// Key/value echo of the configuration written at the top of every report.
std::map<std::string, std::string> config_echo(const FitConfig& cfg, const AnalysisData& ad);

enum class Format { kCsv, kJson };

/// Writes the per-regressor report. Without `with_timing`, ESS/sec and the
/// wall time are omitted so reruns are byte-identical.
void write_report(std::ostream& out, Format format, const SelectionReport& report,
                  const AnalysisData& ad, const FitConfig& cfg);

/// Parsed report file.
struct ReportFile {
  std::map<std::string, std::string> config;
  std::vector<std::string> names;
  SelectionReport report;
  Eigen::VectorXd centers;
  Eigen::VectorXd scales;
  std::vector<bool> binary;
};

ReportFile read_report(std::istream& in, Format format);

/// Draw-by-draw traces (inclusion probabilities and, if stored, the other
/// parameters) as a wide CSV.
void write_traces(std::ostream& out, const ChainOutput& output,
                  const std::vector<std::string>& names);

struct FitResult {
  AnalysisData analysis;
  ChainOutput output;
  SelectionReport report;
};

FitResult fit(const CsvTable& table, const std::string& response,
              const std::vector<std::string>& covariates, const FitConfig& cfg);

// ---------------------------------------------------------------- curves

struct CurvePoint {
  std::string series;
  double x = 0.0;
  double value = 0.0;
};

/// Parses "start:stop:step" or a comma-separated list.
std::vector<double> parse_grid(const std::string& spec);

/// How omega enters the closed-form probabilities.
struct OmegaHandling {
  std::optional<double> fixed;  ///< use this omega
  OmegaPrior prior;             ///< otherwise integrate over Beta(a, b)
};

/// Inclusion probability versus alpha_hat for one orthogonal regressor.
std::vector<CurvePoint> orthogonal_curve(const std::vector<double>& alpha_grid,
                                         const Slab& slab, double n, double s2,
                                         double sigma2, const OmegaHandling& omega);

/// Inclusion probability of x_2 given x_1, versus alpha_hat2, one series per r12.
std::vector<CurvePoint> correlated_pair_curve(const std::vector<double>& alpha_grid,
                                              const std::vector<double>& r12_values,
                                              const Slab& slab, double r_y1, double s_y,
                                              double n, double sigma2,
                                              const OmegaHandling& omega);

/// Reruns the fit for each slab variance c with matched V = c, g = N c,
/// b = 1 / (N c); one series per covariate.
std::vector<CurvePoint> inclusion_path(const AnalysisData& ad, const PriorSpec& family,
                                       const std::vector<double>& c_values,
                                       const McmcConfig& mcmc);

/// Rewrites the slab's variance parameter for slab variance c on N rows.
Slab matched_slab(const Slab& family, double c, long n);

void write_curve(std::ostream& out, const std::vector<CurvePoint>& points);

// ------------------------------------------------------------ study output

/// One row per evaluated column with median-model inclusion counts per prior.
void write_inclusion_counts(std::ostream& out, const StudyTables& tables);
/// One row per prior: mean misclassification, averaged IACT, ESS/sec, skips.
void write_efficiency(std::ostream& out, const StudyTables& tables, bool with_timing);
/// One row per column: mean inclusion probability per prior.
void write_mean_inclusion(std::ostream& out, const StudyTables& tables);

}  // namespace spikeslab::io
