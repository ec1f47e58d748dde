#include "spikeslab/marginal.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "spikeslab/errors.hpp"

namespace spikeslab {
namespace {

// Pivot-to-diagonal ratio below which X_d'X_d counts as singular.
constexpr double kSingularPivot = 1e-12;
// S_N below this fraction of y_c'y_c counts as a perfect fit.
constexpr double kDegenerateScale = 1e-12;

std::string describe(const std::vector<int>& included) {
  std::ostringstream out;
  out << "{";
  for (std::size_t k = 0; k < included.size(); ++k) out << (k ? "," : "") << included[k];
  out << "}";
  return out.str();
}

enum class FitFailure { kNone, kNotDirac, kSingular, kDegenerate };

FitFailure fit_into(const Dataset& data, ModelFit& fit, const Slab& slab) {
  if (std::holds_alternative<Ssvs>(slab) || std::holds_alternative<Nmig>(slab))
    return FitFailure::kNotDirac;

  const auto d1 = fit.size();
  const double yty = data.yty();

  if (d1 == 0) {
    fit.a_n.resize(0);
    fit.log_det_ratio = 0.0;
    fit.cov_factor = 1.0;
    fit.scale = 0.5 * yty;
    if (const auto* f = std::get_if<DiracF>(&slab)) fit.scale *= 1.0 - f->b;
    return FitFailure::kNone;
  }

  Eigen::MatrixXd m = data.gram()(fit.included, fit.included);
  const Eigen::VectorXd xty = data.xty()(fit.included);
  const auto* islab = std::get_if<DiracI>(&slab);
  if (islab) m.diagonal().array() += 1.0 / islab->c;

  fit.chol.compute(m);
  if (fit.chol.info() != Eigen::Success) return FitFailure::kSingular;
  const Eigen::MatrixXd& l = fit.chol.matrixLLT();
  double log_det_m = 0.0;
  for (Eigen::Index i = 0; i < d1; ++i) {
    const double pivot = l(i, i);
    if (!islab && !(pivot * pivot > kSingularPivot * m(i, i))) return FitFailure::kSingular;
    log_det_m += 2.0 * std::log(pivot);
  }

  // b' M^{-1} b through the triangular factor.
  const Eigen::VectorXd half = fit.chol.matrixL().solve(xty);
  const double quad = half.squaredNorm();
  fit.a_n = fit.chol.solve(xty);

  const double dd1 = static_cast<double>(d1);
  if (islab) {
    fit.cov_factor = 1.0;
    fit.scale = 0.5 * (yty - quad);
    fit.log_det_ratio = -0.5 * log_det_m - 0.5 * dd1 * std::log(islab->c);
  } else if (const auto* gslab = std::get_if<DiracG>(&slab)) {
    const double shrink = gslab->g / (gslab->g + 1.0);
    fit.cov_factor = shrink;
    fit.a_n *= shrink;
    fit.scale = 0.5 * (yty - shrink * quad);
    fit.log_det_ratio = -0.5 * dd1 * std::log1p(gslab->g);
  } else {
    const auto& fslab = std::get<DiracF>(slab);
    if (d1 > data.n() - 2) return FitFailure::kDegenerate;
    fit.cov_factor = 1.0;
    fit.scale = 0.5 * (1.0 - fslab.b) * (yty - quad);
    fit.log_det_ratio = 0.5 * dd1 * std::log(fslab.b);
  }
  if (!(fit.scale > kDegenerateScale * yty)) return FitFailure::kDegenerate;
  return FitFailure::kNone;
}

double log_normalizer(const Dataset& data) {
  const double n = static_cast<double>(data.n());
  return -0.5 * std::log(n) - 0.5 * (n - 1.0) * std::log(2.0 * std::numbers::pi);
}

}  // namespace

std::vector<int> included_columns(std::span<const std::uint8_t> delta) {
  std::vector<int> out;
  for (std::size_t j = 0; j < delta.size(); ++j)
    if (delta[j]) out.push_back(static_cast<int>(j));
  return out;
}

std::optional<ModelFit> try_fit_model(const Dataset& data, std::vector<int> included,
                                      const Slab& slab) {
  ModelFit fit;
  fit.included = std::move(included);
  const FitFailure failure = fit_into(data, fit, slab);
  if (failure == FitFailure::kNotDirac)
    throw InvalidArgument("marginal likelihoods are defined for Dirac-spike slabs only");
  if (failure != FitFailure::kNone) return std::nullopt;
  return fit;
}

ModelFit fit_model(const Dataset& data, std::vector<int> included, const Slab& slab) {
  ModelFit fit;
  fit.included = std::move(included);
  for (int j : fit.included)
    if (j < 0 || j >= data.d()) throw DimensionError("column index out of range");
  switch (fit_into(data, fit, slab)) {
    case FitFailure::kNone:
      return fit;
    case FitFailure::kNotDirac:
      throw InvalidArgument("marginal likelihoods are defined for Dirac-spike slabs only");
    case FitFailure::kSingular:
      throw SingularDesignError("X_delta'X_delta is singular for delta = " +
                                    describe(fit.included),
                                fit.included);
    case FitFailure::kDegenerate:
      break;
  }
  throw DegenerateFitError("posterior scale S_N is not positive for delta = " +
                           describe(fit.included) +
                           " (perfect fit or too few observations)");
}

double log_marginal_likelihood(const Dataset& data, const ModelFit& fit) {
  const double shape = 0.5 * static_cast<double>(data.n() - 1);
  return log_normalizer(data) + fit.log_det_ratio + std::lgamma(shape) -
         shape * std::log(fit.scale);
}

namespace {

ModelFit fit_from_delta(const Dataset& data, std::span<const std::uint8_t> delta,
                        const Slab& slab) {
  if (static_cast<Eigen::Index>(delta.size()) != data.d()) {
    std::ostringstream msg;
    msg << "indicator vector has length " << delta.size() << " but the design has "
        << data.d() << " columns";
    throw DimensionError(msg.str());
  }
  return fit_model(data, included_columns(delta), slab);
}

}  // namespace

PosteriorMoments posterior_moments(const Dataset& data, std::span<const std::uint8_t> delta,
                                   const Slab& slab) {
  const ModelFit fit = fit_from_delta(data, delta, slab);
  PosteriorMoments out;
  out.included = fit.included;
  out.a_n = fit.a_n;
  const auto d1 = fit.size();
  out.a_cov = d1 == 0 ? Eigen::MatrixXd(0, 0)
                      : Eigen::MatrixXd(fit.cov_factor *
                                        fit.chol.solve(Eigen::MatrixXd::Identity(d1, d1)));
  out.scale = fit.scale;
  out.shape = 0.5 * static_cast<double>(data.n() - 1);
  out.log_det_ratio = fit.log_det_ratio;
  return out;
}

double log_marginal_likelihood(const Dataset& data, std::span<const std::uint8_t> delta,
                               const Slab& slab) {
  return log_marginal_likelihood(data, fit_from_delta(data, delta, slab));
}

double log_conditional_marginal_likelihood(const Dataset& data,
                                           std::span<const std::uint8_t> delta,
                                           const Slab& slab, double sigma2) {
  if (!(sigma2 > 0.0)) throw InvalidArgument("sigma2 must be positive");
  const ModelFit fit = fit_from_delta(data, delta, slab);
  const double n = static_cast<double>(data.n());
  return -0.5 * std::log(n) - 0.5 * (n - 1.0) * std::log(2.0 * std::numbers::pi * sigma2) +
         fit.log_det_ratio - fit.scale / sigma2;
}

}  // namespace spikeslab
