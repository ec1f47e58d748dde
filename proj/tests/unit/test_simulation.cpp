#include <doctest.h>

#include "spikeslab/errors.hpp"
#include "spikeslab/simulation.hpp"

using namespace spikeslab;

namespace {

Eigen::MatrixXd sample_correlation(const Eigen::MatrixXd& x) {
  const Eigen::MatrixXd c = x.rowwise() - x.colwise().mean();
  const Eigen::MatrixXd cov = c.transpose() * c;
  const Eigen::VectorXd sd = cov.diagonal().cwiseSqrt();
  return cov.array() / (sd * sd.transpose()).array();
}

McmcConfig quick(std::uint64_t seed) {
  McmcConfig cfg;
  cfg.iterations = 300;
  cfg.burn_in = 100;
  cfg.full_model_warmup = 50;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("AR correlation matrix") {
  const Eigen::MatrixXd c = ar_correlation(4, 0.8);
  CHECK(c(0, 0) == 1.0);
  CHECK(c(0, 2) == doctest::Approx(0.64));
  CHECK(c(3, 0) == doctest::Approx(0.512));
  CHECK(ar_correlation(3, 0.0).isIdentity());
}

TEST_CASE("generated designs have the requested correlation") {
  auto sc = Scenario::independent(1, 7);
  sc.n = 10000;
  const Eigen::MatrixXd r0 = sample_correlation(generate_dataset(sc, 0).data.x());
  CHECK((r0 - Eigen::MatrixXd::Identity(9, 9)).cwiseAbs().maxCoeff() < 0.03);

  auto sc8 = Scenario::correlated(1, 7);
  sc8.n = 10000;
  const Eigen::MatrixXd r8 = sample_correlation(generate_dataset(sc8, 0).data.x());
  CHECK(std::abs(r8(0, 2) - 0.64) < 0.03);
  CHECK(std::abs(r8(0, 1) - 0.8) < 0.03);
  CHECK((r8 - ar_correlation(9, 0.8)).cwiseAbs().maxCoeff() < 0.03);
}

TEST_CASE("scenario presets") {
  const auto ind = Scenario::independent();
  CHECK(ind.n == 40);
  CHECK(ind.d == 9);
  Eigen::VectorXd expected(9);
  expected << 2, 2, 2, 0.2, 0.2, 0.2, 0, 0, 0;
  CHECK(ind.column_effects() == expected);
  CHECK(ind.evaluated_columns() == std::vector<int>{3, 4, 5, 6, 7, 8});

  // strong at columns 1, 2, 4; weak at 5, 8, 9; zero at 3, 6, 7 (1-based)
  const auto cor = Scenario::correlated();
  Eigen::VectorXd placed(9);
  placed << 2, 2, 0, 2, 0.2, 0, 0, 0.2, 0.2;
  CHECK(cor.column_effects() == placed);
  CHECK(cor.rho == 0.8);
  CHECK(cor.evaluated_columns() == std::vector<int>{2, 4, 5, 6, 7, 8});

  const auto sweep = Scenario::signal_sweep();
  CHECK(sweep.n == 200);
  CHECK(sweep.d == 21);
  CHECK(sweep.column_effects()(20) == doctest::Approx(0.4));
  CHECK(sweep.column_effects()(1) == doctest::Approx(0.02));

  auto bad = Scenario::independent();
  bad.effect_order = {0, 0, 1, 2, 3, 4, 5, 6, 7};
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = Scenario::independent();
  bad.sigma2_true = 0.0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("datasets are deterministic per replication") {
  const auto sc = Scenario::correlated(3, 99);
  const auto a = generate_dataset(sc, 1), b = generate_dataset(sc, 1), c = generate_dataset(sc, 2);
  CHECK(a.data.x() == b.data.x());
  CHECK(a.data.y() == b.data.y());
  CHECK(a.data.x() != c.data.x());
  CHECK(a.true_alpha == sc.column_effects());
  CHECK(a.data.n() == 40);
}

TEST_CASE("empty study") {
  const auto tables = run_study(Scenario::independent(0), matched_priors(40), quick(1), 1);
  REQUIRE(tables.priors.size() == 5);
  for (const auto& t : tables.priors) {
    CHECK(t.completed == 0);
    CHECK_FALSE(t.misclassification.has_value());
    CHECK_FALSE(t.iact.mean.has_value());
  }
  CHECK(tables.incl_prob_by_replication.empty());
}

TEST_CASE("study tables are reproducible and independent of the thread count") {
  const auto sc = Scenario::independent(3, 5);
  const auto priors = matched_priors(40);
  const auto a = run_study(sc, priors, quick(2), 1);
  const auto b = run_study(sc, priors, quick(2), 3);
  REQUIRE(a.incl_prob_by_replication.size() == 3);
  for (std::size_t r = 0; r < 3; ++r) CHECK(a.incl_prob_by_replication[r] == b.incl_prob_by_replication[r]);
  for (std::size_t p = 0; p < priors.size(); ++p) {
    CHECK(a.priors[p].prior == priors[p].name());
    CHECK(a.priors[p].mpm_count == b.priors[p].mpm_count);
    CHECK(a.priors[p].mean_incl_prob == b.priors[p].mean_incl_prob);
    CHECK(a.priors[p].misclassification == b.priors[p].misclassification);
    CHECK(*a.priors[p].iact.mean == *b.priors[p].iact.mean);
    CHECK(a.priors[p].completed == 3);
    // strong effects always included
    for (int j = 0; j < 3; ++j) CHECK(a.priors[p].mpm_count[static_cast<std::size_t>(j)] == 3);
  }
  const auto c = run_study(sc, priors, quick(3), 1);
  CHECK(a.incl_prob_by_replication[0] != c.incl_prob_by_replication[0]);
}

TEST_CASE("failed replications are recorded without aborting") {
  // d = N - 1: the fractional slab cannot fit the full model for the warmup
  Scenario sc = Scenario::independent(2, 1);
  sc.n = 10;
  const auto tables = run_study(sc, {PriorSpec{DiracF{0.1}, {}}, PriorSpec{DiracI{1.0}, {}}}, quick(4), 1);
  CHECK(tables.priors[0].failed_replications == std::vector<long>{0, 1});
  CHECK(tables.priors[0].completed == 0);
  CHECK(std::isnan(tables.incl_prob_by_replication[0](0, 0)));
  CHECK(tables.priors[1].completed == 2);
}
