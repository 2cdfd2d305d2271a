#pragma once

// Partial flags stored as an orthonormal basis plus break positions.
// Subspace i is the span of the first c_i columns, so bases are defined
// only up to block-orthogonal changes; comparisons always go through
// subspace projectors (principal angles), never through basis matrices.

#include <vector>

#include "slcorners/common.hpp"

namespace slcorners::chart {

struct PartialFlag {
  Eigen::MatrixXd basis;   // n x n, orthonormal columns
  std::vector<int> breaks; // c_1 < ... < c_r in 1..n-1

  PartialFlag() = default;
  PartialFlag(Eigen::MatrixXd basis_in, std::vector<int> breaks_in, double tol = 1e-10);

  int dim() const { return static_cast<int>(basis.rows()); }
  int rank() const { return static_cast<int>(breaks.size()); }

  Eigen::MatrixXd subspace_basis(int i) const;  // first c_i columns, i = 1..r
  Eigen::MatrixXd projector(int i) const;

  // The flag of orthocomplements in reversed order: basis columns reversed,
  // break c replaced by n - c.
  PartialFlag opposite() const;
};

// Max over subspaces of the principal-angle distance; flags must share breaks.
double flag_distance(const PartialFlag& f, const PartialFlag& g);

}  // namespace slcorners::chart
