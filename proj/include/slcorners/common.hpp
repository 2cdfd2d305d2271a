#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace slcorners {

// Precondition / input-format violations.  The CLI maps these to exit code 2.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical failures (ill-conditioning, residuals over budget, unreliable
// fits).  The CLI maps these to exit code 3.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double hs_norm(const Eigen::MatrixXd& m) { return m.norm(); }

// ‖QᵀQ − I‖_F
double orthogonality_defect(const Eigen::MatrixXd& q);

bool is_orthogonal(const Eigen::MatrixXd& q, double tol = 1e-10);

// sin of the largest principal angle between the column spans of u and v.
// Both arguments must have orthonormal columns of the same count.
double subspace_distance(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v);

// Antidiagonal permutation (reverses the standard basis order).
Eigen::MatrixXd reversal_permutation(int n);

void require(bool condition, const std::string& message);

}  // namespace slcorners
