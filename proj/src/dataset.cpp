#include "spikeslab/dataset.hpp"

#include <cmath>
#include <sstream>

#include "spikeslab/errors.hpp"

namespace spikeslab {

Dataset Dataset::load(const Eigen::VectorXd& raw_y, const Eigen::MatrixXd& raw_x,
                      bool center) {
  const Eigen::Index n = raw_y.size();
  if (raw_x.rows() != n) {
    std::ostringstream msg;
    msg << "design matrix has " << raw_x.rows() << " rows but the response has " << n
        << " entries";
    throw DimensionError(msg.str());
  }
  if (n < 2) throw DimensionError("at least two observations are required");
  if (raw_x.cols() < 1) throw DimensionError("at least one regressor is required");
  if (!raw_y.allFinite() || !raw_x.allFinite())
    throw InvalidArgument("response and design must be finite");

  const double nd = static_cast<double>(n);
  const Eigen::RowVectorXd col_means = raw_x.colwise().mean();

  Dataset ds;
  ds.y_ = raw_y;
  ds.x_ = raw_x;
  if (!center) {
    const double tol = 1e-10 * nd;
    for (Eigen::Index j = 0; j < raw_x.cols(); ++j) {
      if (std::abs(col_means(j) * nd) > tol) {
        std::ostringstream msg;
        msg << "column " << j << " is not centered (sum " << col_means(j) * nd
            << "); load with centering enabled";
        throw InvalidArgument(msg.str());
      }
    }
  }
  // Within tolerance or requested, either way the residual mean is removed.
  ds.x_.rowwise() -= col_means;

  ds.y_bar_ = raw_y.mean();
  ds.y_c_ = raw_y.array() - ds.y_bar_;

  ds.gram_ = ds.x_.transpose() * ds.x_;
  ds.col_var_ = ds.gram_.diagonal() / nd;
  for (Eigen::Index j = 0; j < ds.x_.cols(); ++j) {
    const double scale = raw_x.col(j).cwiseAbs().maxCoeff();
    if (!(ds.col_var_(j) > 1e-24 * std::max(1.0, scale * scale))) {
      std::ostringstream msg;
      msg << "column " << j << " has zero variance";
      throw DegenerateDataError(msg.str(), j);
    }
  }
  ds.xty_ = ds.x_.transpose() * ds.y_c_;
  ds.yty_ = ds.y_c_.squaredNorm();
  const double yscale = raw_y.cwiseAbs().maxCoeff();
  if (!(ds.yty_ > 1e-24 * nd * std::max(1.0, yscale * yscale)))
    throw DegenerateDataError("response has zero variance", -1);
  return ds;
}

}  // namespace spikeslab
