#include "spikeslab/random.hpp"

#include <cmath>
#include <vector>

namespace spikeslab {

Rng make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) {
  std::vector<std::uint32_t> words;
  words.reserve(2 * (ids.size() + 1));
  auto push = [&words](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  for (auto id : ids) push(id);
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

double draw_normal(Rng& rng, double mean, double sd) {
  return std::normal_distribution<double>(mean, sd)(rng);
}

double draw_gamma(Rng& rng, double shape) {
  return std::gamma_distribution<double>(shape, 1.0)(rng);
}

double draw_inv_gamma(Rng& rng, double shape, double scale) {
  return scale / draw_gamma(rng, shape);
}

double draw_beta(Rng& rng, double a, double b) {
  const double x = draw_gamma(rng, a);
  const double y = draw_gamma(rng, b);
  return x / (x + y);
}

bool draw_bernoulli(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

Eigen::VectorXd draw_std_normal(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> dist;
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z(i) = dist(rng);
  return z;
}

Eigen::VectorXd draw_mvn_from_precision(Rng& rng, const Eigen::VectorXd& mean,
                                        const Eigen::LLT<Eigen::MatrixXd>& precision,
                                        double scale) {
  // P = L L'  =>  L'^{-1} z ~ N(0, P^{-1}).
  Eigen::VectorXd z = draw_std_normal(rng, mean.size());
  precision.matrixU().solveInPlace(z);
  return mean + std::sqrt(scale) * z;
}

}  // namespace spikeslab
