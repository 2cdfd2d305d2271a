#include "slcorners/common.hpp"

#include <Eigen/SVD>

namespace slcorners {

double orthogonality_defect(const Eigen::MatrixXd& q) {
  const Eigen::MatrixXd gram = q.transpose() * q;
  return (gram - Eigen::MatrixXd::Identity(q.cols(), q.cols())).norm();
}

bool is_orthogonal(const Eigen::MatrixXd& q, double tol) {
  return q.rows() == q.cols() && orthogonality_defect(q) <= tol;
}

double subspace_distance(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v) {
  require(u.rows() == v.rows() && u.cols() == v.cols(),
          "subspace_distance: dimension mismatch");
  if (u.cols() == 0) return 0.0;
  // sin of the largest principal angle, computed from the residual of
  // projecting u off v so that small angles keep full precision.
  const Eigen::MatrixXd residual = u - v * (v.transpose() * u);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual);
  return std::min(1.0, svd.singularValues()(0));
}

Eigen::MatrixXd reversal_permutation(int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) j(i, n - 1 - i) = 1.0;
  return j;
}

void require(bool condition, const std::string& message) {
  if (!condition) throw validation_error(message);
}

}  // namespace slcorners
