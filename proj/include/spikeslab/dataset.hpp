#pragma once

#include <Eigen/Dense>

namespace spikeslab {

/// Response plus centered design matrix, with the sufficient statistics the
/// samplers and marginal likelihoods need cached at construction.
///
/// Immutable once built, so a single instance can be shared across threads.
class Dataset {
 public:
  /// Builds a dataset from raw inputs.
  ///
  /// With `center` set, every column of `raw_x` is shifted to mean zero. Without
  /// it, columns must already be centered to within 1e-10 * N; residual drift
  /// inside that tolerance is removed. Throws DimensionError on shape mismatch
  /// or N < 2, DegenerateDataError for a constant column or constant response.
  static Dataset load(const Eigen::VectorXd& raw_y, const Eigen::MatrixXd& raw_x,
                      bool center = true);

  Eigen::Index n() const noexcept { return y_.size(); }
  Eigen::Index d() const noexcept { return x_.cols(); }

  const Eigen::VectorXd& y() const noexcept { return y_; }
  const Eigen::MatrixXd& x() const noexcept { return x_; }
  double y_bar() const noexcept { return y_bar_; }
  const Eigen::VectorXd& y_c() const noexcept { return y_c_; }

  /// s_j^2 = x_j'x_j / N.
  const Eigen::VectorXd& col_var() const noexcept { return col_var_; }
  /// s_y^2 = y_c'y_c / N.
  double s_y2() const noexcept { return yty_ / static_cast<double>(n()); }

  /// X'X.
  const Eigen::MatrixXd& gram() const noexcept { return gram_; }
  /// X'y_c.
  const Eigen::VectorXd& xty() const noexcept { return xty_; }
  /// y_c'y_c.
  double yty() const noexcept { return yty_; }

 private:
  Dataset() = default;

  Eigen::VectorXd y_;
  Eigen::MatrixXd x_;
  double y_bar_ = 0.0;
  Eigen::VectorXd y_c_;
  Eigen::VectorXd col_var_;
  Eigen::MatrixXd gram_;
  Eigen::VectorXd xty_;
  double yty_ = 0.0;
};

/// Free-function spelling of Dataset::load.
inline Dataset load_dataset(const Eigen::VectorXd& raw_y, const Eigen::MatrixXd& raw_x,
                            bool center = true) {
  return Dataset::load(raw_y, raw_x, center);
}

}  // namespace spikeslab
