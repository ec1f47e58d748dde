#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace spikeslab {

/// Normal spike and normal slab: alpha_j ~ N(0, r(delta_j) V).
struct Ssvs {
  double r = 1e-4;
  double v = 1.0;
};

/// Normal mixture of inverse Gammas: alpha_j ~ N(0, r(delta_j) psi_j),
/// psi_j ~ InvGamma(nu, q).
struct Nmig {
  double r = 1e-4;
  double nu = 5.0;
  double q = 4.0;
};

/// Dirac spike with independence slab N(0, c I sigma^2).
struct DiracI {
  double c = 1.0;
};

/// Dirac spike with Zellner g-slab N(0, g (X'X)^{-1} sigma^2).
struct DiracG {
  double g = 1.0;
};

/// Dirac spike with fractional slab N(a_LS, (1/b)(X'X)^{-1} sigma^2).
struct DiracF {
  double b = 0.5;
};

using Slab = std::variant<Ssvs, Nmig, DiracI, DiracG, DiracF>;

/// Beta(a, b) hyperprior on the shared inclusion probability omega.
struct OmegaPrior {
  double a = 1.0;
  double b = 1.0;
};

struct PriorSpec {
  Slab slab;
  OmegaPrior omega;

  bool is_dirac() const noexcept { return slab.index() >= 2; }
  bool is_continuous() const noexcept { return !is_dirac(); }

  /// Throws InvalidArgument when any hyperparameter leaves its admissible
  /// range. Returns soft warnings (e.g. a variance ratio above 0.01).
  std::vector<std::string> validate() const;

  /// Short label: ssvs, nmig, dirac-i, dirac-g, dirac-f.
  std::string name() const;
};

/// Parses the short label produced by PriorSpec::name into a slab with
/// default hyperparameters.
Slab slab_from_name(std::string_view name);

/// Priors with the slab variances matched to a g-slab with g = N * c, as used
/// throughout the simulation designs: V = c, g = N c, b = 1 / g.
std::vector<PriorSpec> matched_priors(long n, double c = 1.0, double r = 1e-4,
                                      double nu = 5.0, double q = 4.0,
                                      OmegaPrior omega = {});

}  // namespace spikeslab
