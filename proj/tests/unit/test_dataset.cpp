#include <doctest.h>

#include <random>

#include "spikeslab/dataset.hpp"
#include "spikeslab/errors.hpp"

using namespace spikeslab;

TEST_CASE("centering a small design") {
  Eigen::VectorXd y(3);
  y << 1, 2, 3;
  Eigen::MatrixXd x(3, 1);
  x << 1, 2, 3;
  const Dataset ds = load_dataset(y, x, true);
  CHECK(ds.x()(0, 0) == doctest::Approx(-1.0));
  CHECK(ds.x()(1, 0) == doctest::Approx(0.0));
  CHECK(ds.x()(2, 0) == doctest::Approx(1.0));
  CHECK(ds.y_c()(0) == doctest::Approx(-1.0));
  CHECK(ds.y_c()(2) == doctest::Approx(1.0));
  CHECK(ds.y_bar() == doctest::Approx(2.0));
  CHECK(ds.col_var()(0) == doctest::Approx(2.0 / 3.0));
  CHECK(ds.s_y2() == doctest::Approx(2.0 / 3.0));
  CHECK(ds.gram()(0, 0) == doctest::Approx(2.0));
  CHECK(ds.xty()(0) == doctest::Approx(2.0));
}

TEST_CASE("dimension mismatch is rejected") {
  Eigen::VectorXd y(3);
  y << 1, 2, 3;
  Eigen::MatrixXd x(4, 1);
  x << 1, 2, 3, 4;
  CHECK_THROWS_AS(load_dataset(y, x), DimensionError);
}

TEST_CASE("constant column is rejected with its index") {
  Eigen::VectorXd y(3);
  y << 1, 2, 4;
  Eigen::MatrixXd x(3, 2);
  x << 1, 5, 2, 5, 3, 5;
  try {
    load_dataset(y, x);
    FAIL("expected DegenerateDataError");
  } catch (const DegenerateDataError& e) {
    CHECK(e.column() == 1);
  }
}

TEST_CASE("constant response and tiny samples are rejected") {
  Eigen::MatrixXd x(3, 1);
  x << 1, 2, 3;
  CHECK_THROWS_AS(load_dataset(Eigen::VectorXd::Constant(3, 2.0), x), DegenerateDataError);
  CHECK_THROWS_AS(load_dataset(Eigen::VectorXd::Ones(1), Eigen::MatrixXd::Ones(1, 1)),
                  DimensionError);
}

TEST_CASE("uncentered input without the centering flag is rejected") {
  Eigen::VectorXd y(3);
  y << 1, 2, 3;
  Eigen::MatrixXd x(3, 1);
  x << 1, 2, 3;
  CHECK_THROWS_AS(load_dataset(y, x, false), InvalidArgument);
  // within tolerance: accepted and re-centered
  x << -1, 1e-13, 1;
  const Dataset ds = load_dataset(y, x, false);
  CHECK(std::abs(ds.x().col(0).sum()) < 1e-15);
}

TEST_CASE("properties on random datasets") {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> z;
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 5 + rep % 20, d = 1 + rep % 5;
    Eigen::MatrixXd x(n, d);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      y(i) = 3.0 + z(rng);
      for (int j = 0; j < d; ++j) x(i, j) = 2.0 + z(rng);
    }
    const Dataset ds = load_dataset(y, x);
    const double tol = 1e-10 * n;
    CHECK((ds.x().colwise().sum().cwiseAbs().array() <= tol).all());
    CHECK(std::abs(ds.y_c().sum()) <= tol);

    // Centering is idempotent.
    const Dataset again = load_dataset(ds.y(), ds.x(), true);
    CHECK((again.x() - ds.x()).cwiseAbs().maxCoeff() < 1e-12);

    // (y - mu 1 - X a)'(y - mu 1 - X a) = N (ybar - mu)^2 + (y_c - X a)'(y_c - X a)
    const double mu = z(rng);
    Eigen::VectorXd a(d);
    for (int j = 0; j < d; ++j) a(j) = z(rng);
    const double lhs = (ds.y() - Eigen::VectorXd::Constant(n, mu) - ds.x() * a).squaredNorm();
    const double rhs = n * (ds.y_bar() - mu) * (ds.y_bar() - mu) +
                       (ds.y_c() - ds.x() * a).squaredNorm();
    CHECK(std::abs(lhs - rhs) <= 1e-8 * std::abs(lhs));
  }
}
