#include "spikeslab/analytic.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "spikeslab/errors.hpp"

namespace spikeslab {
namespace {

void check_common(double n, double sigma2, double omega) {
  if (!(n >= 1.0)) throw InvalidArgument("N must be at least 1");
  if (!(sigma2 > 0.0)) throw InvalidArgument("sigma2 must be positive");
  if (!(omega > 0.0 && omega < 1.0)) throw InvalidArgument("omega must lie in (0, 1)");
}

void check_dirac(const Slab& slab) {
  if (std::holds_alternative<Ssvs>(slab) || std::holds_alternative<Nmig>(slab))
    throw InvalidArgument("closed-form inclusion probabilities need a Dirac slab");
  PriorSpec{slab, {}}.validate();
}

}  // namespace

void OrthogonalSetting::validate() const {
  if (!(s2 > 0.0)) throw InvalidArgument("s2 must be positive");
  check_common(n, sigma2, omega);
}

void CorrelatedPairSetting::validate() const {
  if (!(std::abs(r12) < 1.0)) throw InvalidArgument("|r12| must be below 1");
  if (!(s_y > 0.0)) throw InvalidArgument("s_y must be positive");
  check_common(n, sigma2, omega);
}

double CorrelatedPairSetting::r_y1() const {
  // alpha_hat2 = s_y (r_y2 - r12 r_y1) / (1 - r12^2)
  if (r12 == 0.0) return 0.0;
  return (r_y2 - alpha_hat2 * (1.0 - r12 * r12) / s_y) / r12;
}

CorrelatedPairSetting pair_from_correlations(double r12, double r_y1, double r_y2,
                                             double s_y, double n, double sigma2,
                                             double omega) {
  CorrelatedPairSetting s;
  s.r12 = r12;
  s.r_y2 = r_y2;
  s.s_y = s_y;
  s.n = n;
  s.sigma2 = sigma2;
  s.omega = omega;
  s.validate();
  s.alpha_hat2 = s_y * (r_y2 - r12 * r_y1) / (1.0 - r12 * r12);
  return s;
}

CorrelatedPairSetting pair_from_estimate(double alpha_hat2, double r12, double r_y1,
                                         double s_y, double n, double sigma2, double omega) {
  CorrelatedPairSetting s;
  s.alpha_hat2 = alpha_hat2;
  s.r12 = r12;
  s.s_y = s_y;
  s.n = n;
  s.sigma2 = sigma2;
  s.omega = omega;
  s.validate();
  s.r_y2 = alpha_hat2 * (1.0 - r12 * r12) / s_y + r12 * r_y1;
  return s;
}

double h_orthogonal(const OrthogonalSetting& st, const Slab& slab) {
  st.validate();
  check_dirac(slab);
  const double signal = st.n * st.alpha_hat * st.alpha_hat * st.s2 / st.sigma2;
  if (const auto* i = std::get_if<DiracI>(&slab)) {
    const double ns2c = st.n * st.s2 * i->c;
    return -signal / (1.0 + 1.0 / ns2c) + std::log1p(ns2c);
  }
  if (const auto* g = std::get_if<DiracG>(&slab))
    return -signal * g->g / (g->g + 1.0) + std::log1p(g->g);
  const double b = std::get<DiracF>(slab).b;
  return -signal * (1.0 - b) - std::log(b);
}

double q_corr(double r12, double n, double c) {
  const double k = 1.0 / (n * c);
  const double r2 = r12 * r12;
  return (1.0 - r2) + k * (3.0 - r2) + 3.0 * k * k + k * k * k;
}

double h_correlated_pair(const CorrelatedPairSetting& st, const Slab& slab) {
  st.validate();
  check_dirac(slab);
  const double r2 = st.r12 * st.r12;
  const double signal = st.n * st.alpha_hat2 * st.alpha_hat2 / st.sigma2 * (1.0 - r2);
  if (const auto* g = std::get_if<DiracG>(&slab))
    return -signal * g->g / (g->g + 1.0) + std::log1p(g->g);
  if (const auto* f = std::get_if<DiracF>(&slab))
    return -signal * (1.0 - f->b) - std::log(f->b);
  const double c = std::get<DiracI>(slab).c;
  const double nc = st.n * c;
  const double shifted = st.alpha_hat2 * (1.0 - r2) + st.r_y2 * st.s_y / nc;
  return -st.n / (q_corr(st.r12, st.n, c) * st.sigma2) * shifted * shifted +
         std::log(nc * (1.0 - r2) + 1.0 + r2 / (1.0 + 1.0 / nc));
}

double inclusion_probability_from_h(double h, double omega) {
  if (!(omega > 0.0 && omega < 1.0)) throw InvalidArgument("omega must lie in (0, 1)");
  if (std::isnan(h)) throw InvalidArgument("h is NaN");
  const double z = 0.5 * h + std::log1p(-omega) - std::log(omega);
  if (z > 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

double inclusion_probability_integrated_omega(double h, double a_omega, double b_omega) {
  if (!(a_omega > 0.0 && b_omega > 0.0))
    throw InvalidArgument("Beta shape parameters must be positive");
  const double log_norm =
      std::lgamma(a_omega) + std::lgamma(b_omega) - std::lgamma(a_omega + b_omega);
  auto integrand = [&](double w) {
    const double log_density =
        (a_omega - 1.0) * std::log(w) + (b_omega - 1.0) * std::log1p(-w) - log_norm;
    return inclusion_probability_from_h(h, w) * std::exp(log_density);
  };
  return boost::math::quadrature::gauss<double, 64>::integrate(integrand, 0.0, 1.0);
}

}  // namespace spikeslab
