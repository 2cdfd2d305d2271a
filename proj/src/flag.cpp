#include "slcorners/flag.hpp"

#include <algorithm>
#include <utility>

namespace slcorners::chart {

PartialFlag::PartialFlag(Eigen::MatrixXd basis_in, std::vector<int> breaks_in, double tol)
    : basis(std::move(basis_in)), breaks(std::move(breaks_in)) {
  const int n = static_cast<int>(basis.rows());
  require(basis.cols() == n && n >= 1, "PartialFlag: basis must be square");
  require(orthogonality_defect(basis) <= tol, "PartialFlag: basis not orthonormal");
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    require(breaks[i] >= 1 && breaks[i] <= n - 1, "PartialFlag: break out of range");
    require(i == 0 || breaks[i] > breaks[i - 1], "PartialFlag: breaks must increase");
  }
}

Eigen::MatrixXd PartialFlag::subspace_basis(int i) const {
  require(i >= 1 && i <= rank(), "PartialFlag: subspace index out of range");
  return basis.leftCols(breaks[i - 1]);
}

Eigen::MatrixXd PartialFlag::projector(int i) const {
  const Eigen::MatrixXd b = subspace_basis(i);
  return b * b.transpose();
}

PartialFlag PartialFlag::opposite() const {
  const int n = dim();
  Eigen::MatrixXd reversed(n, n);
  for (int j = 0; j < n; ++j) reversed.col(j) = basis.col(n - 1 - j);
  std::vector<int> flipped;
  for (auto it = breaks.rbegin(); it != breaks.rend(); ++it) flipped.push_back(n - *it);
  return PartialFlag(std::move(reversed), std::move(flipped));
}

double flag_distance(const PartialFlag& f, const PartialFlag& g) {
  require(f.breaks == g.breaks && f.dim() == g.dim(),
          "flag_distance: flags must share dimensions and breaks");
  double worst = 0.0;
  for (int i = 1; i <= f.rank(); ++i)
    worst = std::max(worst, subspace_distance(f.subspace_basis(i), g.subspace_basis(i)));
  return worst;
}

}  // namespace slcorners::chart
