#pragma once

// Type A_{n-1} root combinatorics: Dynkin nodes, positive roots, coroots,
// coweight coordinates, and the Haar boundary exponent sigma.

#include <utility>
#include <vector>

#include "slcorners/common.hpp"

namespace slcorners::roots {

// A trace-free diagonal element of the Cartan algebra, stored by its
// diagonal entries.
struct CartanVector {
  Eigen::VectorXd entries;

  explicit CartanVector(Eigen::VectorXd e);
  int dim() const { return static_cast<int>(entries.size()); }
  Eigen::MatrixXd matrix() const { return entries.asDiagonal(); }
};

struct RootDatumA {
  int n = 1;
  std::vector<int> nodes;                           // D = {1, ..., n-1}
  std::vector<std::pair<int, int>> positive_roots;  // (i, j), i < j, root e_i - e_j
  std::vector<long long> sigma;                     // sum of positive roots on coroots
};

RootDatumA build_root_datum(int n);

// Diagonal of the k-th coroot: first k entries 1 - k/n, the rest -k/n.
Eigen::VectorXd coroot_diagonal(int n, int k);
CartanVector coroot(int n, int k);

// Values of the simple roots alpha_i = e_i - e_{i+1} on h.
Eigen::VectorXd simple_root_values(const CartanVector& h);

// Boundary parameters tau_j = a_{j+1}/a_j for a positive sorted diagonal a
// with unit determinant; the coweight coordinates are t_j = 1/tau_j.
Eigen::VectorXd coweight_coordinates(const Eigen::VectorXd& a_diagonal);

// Degree vector of the root (i, j): indicator of the nodes i..j-1.
std::vector<int> root_degree(int n, int i, int j);

// Number of positive roots whose degree vector is componentwise <= alpha.
int filtration_rank(int n, const std::vector<int>& alpha);

// Break positions D \ S for a node subset S, sorted increasing.
std::vector<int> breaks_from_subset(int n, const std::vector<int>& subset);

// Partition of n induced by break positions.
std::vector<int> block_sizes_from_breaks(int n, const std::vector<int>& breaks);

bool is_node_subset(int n, const std::vector<int>& subset);

}  // namespace slcorners::roots
