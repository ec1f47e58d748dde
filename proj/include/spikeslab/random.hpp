#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include <Eigen/Dense>

namespace spikeslab {

using Rng = std::mt19937_64;

/// Independent stream keyed by a master seed and a list of identifiers
/// (replication index, prior index, ...).
Rng make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> ids = {});

double draw_normal(Rng& rng, double mean = 0.0, double sd = 1.0);

/// Gamma with unit scale.
double draw_gamma(Rng& rng, double shape);

/// Inverse Gamma in the (shape, scale) parameterization, density
/// proportional to x^{-shape-1} exp(-scale / x).
double draw_inv_gamma(Rng& rng, double shape, double scale);

double draw_beta(Rng& rng, double a, double b);

bool draw_bernoulli(Rng& rng, double p);

/// Standard normal vector of length n.
Eigen::VectorXd draw_std_normal(Rng& rng, Eigen::Index n);

/// Draw from N(mean, scale * P^{-1}) given the Cholesky factorization of the
/// precision-shaped matrix P.
Eigen::VectorXd draw_mvn_from_precision(Rng& rng, const Eigen::VectorXd& mean,
                                        const Eigen::LLT<Eigen::MatrixXd>& precision,
                                        double scale = 1.0);

}  // namespace spikeslab
