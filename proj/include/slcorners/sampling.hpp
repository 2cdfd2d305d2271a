#pragma once

// Deterministic sampling used by verification sweeps and the CLI.  The
// gaussian is generated explicitly from the mt19937_64 stream so that a
// seed pins every output byte regardless of the standard library.

#include <cstdint>
#include <random>
#include <vector>

#include "slcorners/common.hpp"
#include "slcorners/decompositions.hpp"

namespace slcorners::sampling {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  double gaussian();                     // N(0, 1), Box-Muller
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

Eigen::MatrixXd gaussian_matrix(int n, Rng& rng);

// Haar-distributed special orthogonal matrix (QR with positive R diagonal,
// then a last-column flip if the determinant is negative).
Eigen::MatrixXd random_special_orthogonal(int n, Rng& rng);

// Gaussian entries renormalized to determinant one.
decomp::SpecialLinearElement random_special_linear(int n, Rng& rng);

// Positive sorted determinant-one diagonal with prescribed ratios at the
// given break positions and ratios in [ratio_lo, ratio_hi] elsewhere.
Eigen::VectorXd graded_diagonal(int n, const std::vector<int>& breaks,
                                const Eigen::VectorXd& break_ratios, Rng& rng,
                                double ratio_lo = 0.3, double ratio_hi = 0.9);

}  // namespace slcorners::sampling
