#pragma once

#include "spikeslab/prior.hpp"

namespace spikeslab {

// Closed-form inclusion probabilities for Dirac-spike slabs with known error
// variance. The h functions return 2 log of the ratio between the marginal
// likelihoods of the model without and with the regressor.

/// One regressor in an orthogonal design.
struct OrthogonalSetting {
  double alpha_hat = 0.0;  ///< LS estimate
  double s2 = 1.0;         ///< regressor sample variance s_j^2
  double n = 1.0;
  double sigma2 = 1.0;
  double omega = 0.5;

  void validate() const;
};

/// Two standardized regressors, x_1 already in the model.
struct CorrelatedPairSetting {
  double alpha_hat2 = 0.0;  ///< LS estimate of alpha_2 in the two-regressor model
  double r12 = 0.0;         ///< sample correlation of x_1 and x_2
  double r_y2 = 0.0;        ///< sample correlation of y and x_2
  double s_y = 1.0;         ///< sample standard deviation of y
  double n = 1.0;
  double sigma2 = 1.0;
  double omega = 0.5;

  void validate() const;

  /// r_y1 implied by alpha_hat2, r12 and r_y2.
  double r_y1() const;
};

/// Builds a pair setting from the data correlations; alpha_hat2 is derived.
CorrelatedPairSetting pair_from_correlations(double r12, double r_y1, double r_y2,
                                             double s_y, double n, double sigma2 = 1.0,
                                             double omega = 0.5);

/// Builds a pair setting from alpha_hat2 with r_y1 held fixed; r_y2 is backed
/// out as alpha_hat2 (1 - r12^2) / s_y + r12 r_y1.
CorrelatedPairSetting pair_from_estimate(double alpha_hat2, double r12, double r_y1,
                                         double s_y, double n, double sigma2 = 1.0,
                                         double omega = 0.5);

/// Signal-plus-penalty h for a Dirac slab (DiracI, DiracG or DiracF).
double h_orthogonal(const OrthogonalSetting& setting, const Slab& slab);

/// The correlation-dependent cubic Q appearing in the i-slab pair formula.
double q_corr(double r12, double n, double c);

double h_correlated_pair(const CorrelatedPairSetting& setting, const Slab& slab);

/// 1 / (1 + exp(h / 2) (1 - omega) / omega), saturating to 0 or 1.
double inclusion_probability_from_h(double h, double omega);

/// The same probability averaged over omega ~ Beta(a_omega, b_omega) with a
/// fixed 64-node Gauss-Legendre rule.
double inclusion_probability_integrated_omega(double h, double a_omega, double b_omega);

}  // namespace spikeslab
