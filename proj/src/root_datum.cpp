#include "slcorners/root_datum.hpp"

#include <algorithm>
#include <cmath>

namespace slcorners::roots {

CartanVector::CartanVector(Eigen::VectorXd e) : entries(std::move(e)) {
  require(entries.size() >= 1, "CartanVector: empty");
  require(entries.allFinite(), "CartanVector: non-finite entries");
  const double scale = std::max(1.0, entries.cwiseAbs().maxCoeff());
  require(std::abs(entries.sum()) <= 1e-12 * scale,
          "CartanVector: trace must vanish");
}

RootDatumA build_root_datum(int n) {
  require(n >= 1, "build_root_datum: rank must satisfy n >= 1");
  RootDatumA datum;
  datum.n = n;
  for (int k = 1; k <= n - 1; ++k) datum.nodes.push_back(k);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) datum.positive_roots.emplace_back(i, j);
  // sigma_k = value of the sum of the positive roots on the k-th coroot.
  // The root e_i - e_j takes the value 1 on the coroot H_k iff i <= k < j,
  // so the sum stays in exact integer arithmetic.
  datum.sigma.assign(std::max(0, n - 1), 0);
  for (int k = 1; k <= n - 1; ++k)
    for (const auto& [i, j] : datum.positive_roots)
      if (i <= k && k < j) datum.sigma[k - 1] += 1;
  return datum;
}

Eigen::VectorXd coroot_diagonal(int n, int k) {
  require(n >= 2 && k >= 1 && k <= n - 1, "coroot: node out of range");
  Eigen::VectorXd d(n);
  const double kk = static_cast<double>(k), nn = static_cast<double>(n);
  for (int i = 0; i < n; ++i) d(i) = (i < k) ? 1.0 - kk / nn : -kk / nn;
  return d;
}

CartanVector coroot(int n, int k) { return CartanVector(coroot_diagonal(n, k)); }

Eigen::VectorXd simple_root_values(const CartanVector& h) {
  const int n = h.dim();
  Eigen::VectorXd v(std::max(0, n - 1));
  for (int i = 0; i + 1 < n; ++i) v(i) = h.entries(i) - h.entries(i + 1);
  return v;
}

Eigen::VectorXd coweight_coordinates(const Eigen::VectorXd& a) {
  const int n = static_cast<int>(a.size());
  require(n >= 1, "coweight_coordinates: empty diagonal");
  for (int i = 0; i < n; ++i)
    require(a(i) > 0.0, "coweight_coordinates: diagonal must be positive");
  for (int i = 0; i + 1 < n; ++i)
    require(a(i + 1) <= a(i) * (1.0 + 1e-12),
            "coweight_coordinates: diagonal must be sorted non-increasing");
  Eigen::VectorXd tau(std::max(0, n - 1));
  for (int i = 0; i + 1 < n; ++i) tau(i) = a(i + 1) / a(i);
  return tau;
}

std::vector<int> root_degree(int n, int i, int j) {
  require(1 <= i && i < j && j <= n, "root_degree: bad root indices");
  std::vector<int> deg(n - 1, 0);
  for (int k = i; k < j; ++k) deg[k - 1] = 1;
  return deg;
}

int filtration_rank(int n, const std::vector<int>& alpha) {
  require(static_cast<int>(alpha.size()) == n - 1,
          "filtration_rank: alpha must have length n-1");
  for (int a : alpha)
    require(a >= 0, "filtration_rank: alpha must be componentwise >= 0");
  int count = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      bool inside = true;
      for (int k = i; k < j && inside; ++k) inside = alpha[k - 1] >= 1;
      if (inside) ++count;
    }
  return count;
}

bool is_node_subset(int n, const std::vector<int>& subset) {
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] < 1 || subset[i] > n - 1) return false;
    if (i > 0 && subset[i] <= subset[i - 1]) return false;
  }
  return true;
}

std::vector<int> breaks_from_subset(int n, const std::vector<int>& subset) {
  require(is_node_subset(n, subset), "node subset must be a sorted subset of 1..n-1");
  std::vector<int> breaks;
  std::size_t pos = 0;
  for (int c = 1; c <= n - 1; ++c) {
    if (pos < subset.size() && subset[pos] == c) {
      ++pos;
    } else {
      breaks.push_back(c);
    }
  }
  return breaks;
}

std::vector<int> block_sizes_from_breaks(int n, const std::vector<int>& breaks) {
  require(is_node_subset(n, breaks), "breaks must be a sorted subset of 1..n-1");
  std::vector<int> sizes;
  int previous = 0;
  for (int c : breaks) {
    sizes.push_back(c - previous);
    previous = c;
  }
  sizes.push_back(n - previous);
  return sizes;
}

}  // namespace slcorners::roots
