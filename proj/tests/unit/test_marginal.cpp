#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "oracles.hpp"
#include "spikeslab/analytic.hpp"
#include "spikeslab/errors.hpp"
#include "spikeslab/marginal.hpp"

using namespace spikeslab;

namespace {

Dataset random_dataset(std::mt19937_64& rng, int n, int d, double signal = 0.7) {
  std::normal_distribution<double> z;
  Eigen::MatrixXd x(n, d);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) x(i, j) = z(rng) + (j > 0 ? 0.4 * x(i, j - 1) : 0.0);
  for (int i = 0; i < n; ++i) y(i) = 1.0 + signal * x(i, 0) + z(rng);
  return load_dataset(y, x);
}

Indicators random_delta(std::mt19937_64& rng, int d) {
  Indicators delta(static_cast<std::size_t>(d));
  std::bernoulli_distribution coin(0.5);
  for (auto& v : delta) v = coin(rng) ? 1 : 0;
  return delta;
}

/// Columns with x_j'x_j = N s_j^2 and x_j'x_k = 0, centered.
Eigen::MatrixXd orthogonal_design(std::mt19937_64& rng, int n, const std::vector<double>& s2) {
  std::normal_distribution<double> z;
  const int d = static_cast<int>(s2.size());
  Eigen::MatrixXd raw(n, d + 1);
  raw.col(0).setOnes();
  for (int i = 0; i < n; ++i)
    for (int j = 1; j <= d; ++j) raw(i, j) = z(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, d + 1);
  Eigen::MatrixXd x(n, d);
  for (int j = 0; j < d; ++j) x.col(j) = q.col(j + 1) * std::sqrt(n * s2[static_cast<std::size_t>(j)]);
  return x;
}

const std::vector<Slab> kSlabs = {DiracI{1.5}, DiracG{12.0}, DiracF{0.1}};

}  // namespace

TEST_CASE("empty model moments") {
  std::mt19937_64 rng(1);
  const Dataset ds = random_dataset(rng, 12, 3);
  const Indicators none(3, 0);
  for (const Slab& slab : {Slab{DiracI{1}}, Slab{DiracG{12}}}) {
    const auto pm = posterior_moments(ds, none, slab);
    CHECK(pm.scale == doctest::Approx(0.5 * ds.yty()).epsilon(1e-14));
    CHECK(pm.log_det_ratio == 0.0);
    CHECK(pm.shape == doctest::Approx(5.5));
    CHECK(pm.a_n.size() == 0);
  }
  // The fractional slab's likelihood kernel keeps the fraction 1 - b even
  // for the empty model, so h does not depend on the other indicators.
  const auto pm = posterior_moments(ds, none, DiracF{0.1});
  CHECK(pm.scale == doctest::Approx(0.5 * 0.9 * ds.yty()).epsilon(1e-14));
  CHECK(pm.log_det_ratio == 0.0);
}

TEST_CASE("single orthonormal-scaled regressor under the i-slab") {
  std::mt19937_64 rng(2);
  const int n = 25;
  const double c = 0.7;
  const Eigen::MatrixXd x = orthogonal_design(rng, n, {1.0});
  std::normal_distribution<double> z;
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y(i) = 0.5 * x(i, 0) + z(rng);
  const Dataset ds = load_dataset(y, x);
  REQUIRE(ds.gram()(0, 0) == doctest::Approx(n));

  const double s_y = std::sqrt(ds.s_y2());
  const double r_y1 = ds.xty()(0) / (n * s_y);  // s_1 = 1
  const auto pm = posterior_moments(ds, Indicators{1}, DiracI{c});
  CHECK(pm.a_cov(0, 0) == doctest::Approx(1.0 / (n + 1.0 / c)).epsilon(1e-12));
  CHECK(pm.a_n(0) == doctest::Approx(n * s_y * r_y1 / (n + 1.0 / c)).epsilon(1e-12));
}

TEST_CASE("g-slab determinant shortcut on a random 5x3 design") {
  std::mt19937_64 rng(3);
  const Dataset ds = random_dataset(rng, 5, 3);
  const double g = 7.5;
  const auto pm = posterior_moments(ds, Indicators{1, 1, 1}, DiracG{g});
  CHECK(pm.log_det_ratio == doctest::Approx(-1.5 * std::log1p(g)).epsilon(1e-13));

  // Oracle: determinants of A_N and A_0 computed densely.
  const Eigen::MatrixXd a0 = g * ds.gram().inverse();
  const double dense = 0.5 * (std::log(pm.a_cov.determinant()) - std::log(a0.determinant()));
  CHECK(std::abs(pm.log_det_ratio - dense) < 1e-10);
}

TEST_CASE("N = 2 empty model evaluates directly") {
  Eigen::VectorXd y(2);
  y << -1, 1;
  Eigen::MatrixXd x(2, 1);
  x << -1, 1;
  const Dataset ds = load_dataset(y, x);
  const double expected =
      -0.5 * std::log(2.0) - 0.5 * std::log(2.0 * std::numbers::pi) + std::lgamma(0.5) - 0.0;
  for (const Slab& slab : {Slab{DiracI{1}}, Slab{DiracG{2}}})
    CHECK(log_marginal_likelihood(ds, Indicators{0}, slab) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("penalty grows with g for a null regressor") {
  std::mt19937_64 rng(4);
  const int n = 20;
  const Eigen::MatrixXd x = orthogonal_design(rng, n, {1.0, 1.0});
  // response along the first column only, so column 2 is exactly null
  Eigen::VectorXd y = 0.3 * x.col(0) + Eigen::VectorXd::Constant(n, 2.0);
  y += 0.2 * Eigen::VectorXd::LinSpaced(n, -1, 1).cwiseProduct(Eigen::VectorXd::LinSpaced(n, -1, 1));
  Eigen::MatrixXd xx = x;
  // make y_c orthogonal to the null column
  const Dataset probe = load_dataset(y, xx);
  const Eigen::VectorXd yc = probe.y_c();
  const Eigen::VectorXd y_orth = yc - xx.col(1) * (xx.col(1).dot(yc) / xx.col(1).squaredNorm());
  const Dataset ds = load_dataset(y_orth, xx);
  REQUIRE(std::abs(ds.xty()(1)) < 1e-10);

  double previous = std::numeric_limits<double>::infinity();
  for (double g : {1.0, 10.0, 100.0, 1000.0}) {
    const double v = log_marginal_likelihood(ds, Indicators{0, 1}, DiracG{g});
    CHECK(v < previous);
    previous = v;
  }
}

TEST_CASE("one-regressor i-slab value matches 2-D quadrature at N = 10") {
  std::mt19937_64 rng(5);
  const Dataset ds = random_dataset(rng, 10, 1);
  const double exact = log_marginal_likelihood(ds, Indicators{1}, DiracI{1.0});
  const double quad = oracle::quadrature_log_ml(ds, {0}, DiracI{1.0});
  CHECK(std::abs(std::exp(quad - exact) - 1.0) < 1e-5);
}

TEST_CASE("conditional marginal likelihood") {
  std::mt19937_64 rng(6);
  const Dataset ds = random_dataset(rng, 9, 2);
  const double n = 9.0;

  SUBCASE("empty model is the centered Gaussian density in N - 1 dimensions") {
    const double sigma2 = 1.7;
    const double expected = -0.5 * std::log(n) - 0.5 * (n - 1.0) * std::log(2 * std::numbers::pi * sigma2) -
                            ds.yty() / (2 * sigma2);
    CHECK(log_conditional_marginal_likelihood(ds, Indicators{0, 0}, DiracI{1}, sigma2) ==
          doctest::Approx(expected).epsilon(1e-13));
  }

  SUBCASE("integrating over sigma^2 with the 1/sigma^2 prior recovers the marginal") {
    for (const Slab& slab : kSlabs) {
      const Indicators delta{1, 1};
      const double target = log_marginal_likelihood(ds, delta, slab);
      const double ref = log_conditional_marginal_likelihood(ds, delta, slab, ds.s_y2());
      auto f = [&](double t) {
        return std::exp(log_conditional_marginal_likelihood(ds, delta, slab, std::exp(t)) - ref);
      };
      const double t0 = std::log(ds.s_y2());
      const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          f, t0 - 30, t0 + 30, 15, 1e-12);
      CHECK(std::abs(std::log(integral) + ref - target) < 1e-8);
    }
  }

  SUBCASE("matches the dense conjugate-prior algebra") {
    for (const Slab& slab : kSlabs)
      for (const Indicators& delta : {Indicators{1, 0}, Indicators{0, 1}, Indicators{1, 1}})
        CHECK(log_conditional_marginal_likelihood(ds, delta, slab, 0.8) ==
              doctest::Approx(oracle::dense_log_ml(ds, included_columns(delta), slab, 0.8)).epsilon(1e-10));
  }
}

TEST_CASE("two orthogonal regressors: log-likelihood difference equals h / 2") {
  std::mt19937_64 rng(7);
  const int n = 30;
  const std::vector<double> s2 = {1.0, 2.3};
  const Eigen::MatrixXd x = orthogonal_design(rng, n, s2);
  std::normal_distribution<double> z;
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y(i) = 0.6 * x(i, 0) + 0.25 * x(i, 1) + z(rng);
  const Dataset ds = load_dataset(y, x);
  const double alpha_hat2 = ds.xty()(1) / ds.gram()(1, 1);

  for (const Slab& slab : kSlabs) {
    const double diff = log_conditional_marginal_likelihood(ds, Indicators{1, 0}, slab, 1.0) -
                        log_conditional_marginal_likelihood(ds, Indicators{1, 1}, slab, 1.0);
    const OrthogonalSetting st{alpha_hat2, ds.col_var()(1), double(n), 1.0, 0.5};
    CHECK(diff == doctest::Approx(h_orthogonal(st, slab) / 2.0).epsilon(1e-10));
    // and again with the other regressor excluded
    const double diff0 = log_conditional_marginal_likelihood(ds, Indicators{0, 0}, slab, 1.0) -
                         log_conditional_marginal_likelihood(ds, Indicators{0, 1}, slab, 1.0);
    CHECK(diff0 == doctest::Approx(diff).epsilon(1e-10));
  }
}

TEST_CASE("singular designs and saturated fits") {
  std::mt19937_64 rng(8);
  const Dataset base = random_dataset(rng, 10, 2);
  Eigen::MatrixXd x(10, 3);
  x << base.x(), base.x().col(0) * 2.0;
  const Dataset ds = load_dataset(base.y(), x);
  const Indicators dup{1, 0, 1};

  try {
    log_marginal_likelihood(ds, dup, DiracG{10});
    FAIL("expected SingularDesignError");
  } catch (const SingularDesignError& e) {
    CHECK(e.included() == std::vector<int>{0, 2});
  }
  CHECK_THROWS_AS(posterior_moments(ds, dup, DiracF{0.1}), SingularDesignError);
  CHECK(std::isfinite(log_marginal_likelihood(ds, dup, DiracI{1})));
  CHECK_FALSE(try_fit_model(ds, {0, 2}, DiracG{10}).has_value());

  // f-slab needs N >= d1 + 2
  const Dataset small = random_dataset(rng, 4, 3);
  CHECK_THROWS_AS(log_marginal_likelihood(small, Indicators{1, 1, 1}, DiracF{0.2}), DegenerateFitError);
  CHECK(std::isfinite(log_marginal_likelihood(small, Indicators{1, 1, 0}, DiracF{0.2})));

  CHECK_THROWS_AS(log_marginal_likelihood(ds, Indicators{1, 0}, DiracI{1}), DimensionError);
  CHECK_THROWS_AS(log_marginal_likelihood(ds, dup, Ssvs{}), InvalidArgument);
  CHECK_THROWS_AS(log_conditional_marginal_likelihood(ds, dup, DiracI{1}, 0.0), InvalidArgument);
}

TEST_CASE("determinant shortcuts agree with dense determinants on 200 designs") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> dn(8, 30), dd(1, 6);
  int checked = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const int n = dn(rng), d = dd(rng);
    const Dataset ds = random_dataset(rng, n, d);
    Indicators delta = random_delta(rng, d);
    const auto inc = included_columns(delta);
    if (inc.empty()) continue;
    const Eigen::MatrixXd xtx = ds.gram()(inc, inc);
    const auto k = static_cast<double>(inc.size());
    for (const Slab& slab : {Slab{DiracG{n * 1.0}}, Slab{DiracF{1.0 / n}}}) {
      const auto pm = posterior_moments(ds, delta, slab);
      const Eigen::MatrixXd a0 = std::holds_alternative<DiracG>(slab)
                                     ? Eigen::MatrixXd(n * xtx.inverse())
                                     : Eigen::MatrixXd(n * xtx.inverse());
      const double dense =
          0.5 * (std::log(pm.a_cov.fullPivLu().determinant()) - std::log(a0.fullPivLu().determinant()));
      CHECK(std::abs(pm.log_det_ratio - dense) < 1e-10);
      const double shortcut = std::holds_alternative<DiracG>(slab) ? -0.5 * k * std::log1p(n)
                                                                   : 0.5 * k * std::log(1.0 / n);
      CHECK(pm.log_det_ratio == doctest::Approx(shortcut).epsilon(1e-14));
      ++checked;
    }
  }
  CHECK(checked > 300);
}

TEST_CASE("agreement with the dense route, exchange symmetry and finiteness") {
  std::mt19937_64 rng(10);
  for (int rep = 0; rep < 100; ++rep) {
    const int d = 1 + rep % 6, n = d + 3 + rep % 17;
    const Dataset ds = random_dataset(rng, n, d);
    const Indicators delta = random_delta(rng, d);

    std::vector<int> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Eigen::MatrixXd xp(n, d);
    Indicators dp(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
      xp.col(j) = ds.x().col(perm[static_cast<std::size_t>(j)]);
      dp[static_cast<std::size_t>(j)] = delta[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])];
    }
    const Dataset permuted = load_dataset(ds.y(), xp);

    for (const Slab& slab : kSlabs) {
      const double v = log_marginal_likelihood(ds, delta, slab);
      CHECK(std::isfinite(v));
      CHECK(v == doctest::Approx(oracle::dense_log_ml(ds, included_columns(delta), slab)).epsilon(1e-9));
      const double vp = log_marginal_likelihood(permuted, dp, slab);
      CHECK(std::abs(v - vp) <= 1e-12 * std::max(1.0, std::abs(v)));
    }
  }
}

TEST_CASE("quadrature oracle for N <= 12 and up to two included coefficients") {
  std::mt19937_64 rng(11);
  for (int n : {6, 9, 12}) {
    const Dataset ds = random_dataset(rng, n, 2);
    for (const Slab& slab : kSlabs)
      for (const Indicators& delta : {Indicators{0, 0}, Indicators{0, 1}, Indicators{1, 1}}) {
        const auto inc = included_columns(delta);
        const double exact = log_marginal_likelihood(ds, delta, slab);
        const double quad = oracle::quadrature_log_ml(ds, inc, slab);
        INFO("N=", n, " slab=", PriorSpec{slab, {}}.name(), " d1=", inc.size());
        CHECK(std::abs(std::exp(quad - exact) - 1.0) < 1e-5);
      }
  }
}
