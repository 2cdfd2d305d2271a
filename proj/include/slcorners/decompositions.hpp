#pragma once

// Matrix decompositions of SL(n, R): polar, Cartan (KAK), Iwasawa (KAN)
// and the horospherical (Langlands) factorization relative to a standard
// parabolic subgroup.

#include <vector>

#include "slcorners/common.hpp"
#include "slcorners/root_datum.hpp"

namespace slcorners::decomp {

// Reconstruction / orthogonality tolerances; callers may tighten or relax.
struct Tolerances {
  double reconstruction = 1e-10;
  double orthogonality = 1e-10;
};

// An n x n real matrix renormalized to determinant one on construction.
// Inputs with non-positive determinant are rejected (they lie outside the
// component carrying the group).
class SpecialLinearElement {
 public:
  explicit SpecialLinearElement(const Eigen::MatrixXd& m);

  const Eigen::MatrixXd& matrix() const { return entries_; }
  int dim() const { return static_cast<int>(entries_.rows()); }
  SpecialLinearElement inverse() const;

 private:
  Eigen::MatrixXd entries_;
};

struct PolarFactorization {
  Eigen::MatrixXd orthogonal;  // special orthogonal for det-1 input
  Eigen::MatrixXd spd;         // symmetric positive definite
  Eigen::MatrixXd reconstruct() const { return orthogonal * spd; }
};

struct CartanFactorization {
  Eigen::MatrixXd k1;  // special orthogonal
  Eigen::VectorXd a;   // singular values, non-increasing, product 1
  Eigen::MatrixXd k2;  // special orthogonal
  bool repeated_singular_values = false;
  Eigen::MatrixXd reconstruct() const { return k1 * a.asDiagonal() * k2; }
};

struct IwasawaFactorization {
  Eigen::MatrixXd k;        // special orthogonal
  Eigen::VectorXd a;        // positive diagonal, product 1
  Eigen::MatrixXd n_upper;  // unit upper-triangular
  Eigen::MatrixXd reconstruct() const { return k * a.asDiagonal() * n_upper; }
};

struct HorosphericalFactorization {
  std::vector<int> subset;       // S
  std::vector<int> block_sizes;  // partition of n by D \ S
  Eigen::MatrixXd k;             // orthogonal
  Eigen::MatrixXd m;             // block diagonal, each block determinant +-1
  Eigen::VectorXd block_scales;  // a_S, one positive scale per block
  Eigen::MatrixXd n_s;           // block unipotent upper-triangular

  Eigen::MatrixXd a_matrix() const;  // block_scales expanded to a diagonal
  Eigen::MatrixXd reconstruct() const { return k * m * a_matrix() * n_s; }
};

PolarFactorization polar(const SpecialLinearElement& g, const Tolerances& tol = {});

// g = k1 a k2 via SVD; the determinant sign is repaired by flipping the last
// column of both orthogonal factors at once, which leaves a unchanged.
CartanFactorization cartan_kak(const SpecialLinearElement& g, const Tolerances& tol = {});

IwasawaFactorization iwasawa_kan(const SpecialLinearElement& g, const Tolerances& tol = {});

// g = k m a_S n_S.  Block scales use det^(1/d) per block so that a_S lies in
// A_S and m in M_S by construction (the chart module normalizes blocks by
// Hilbert-Schmidt norm instead).
HorosphericalFactorization horospherical(const SpecialLinearElement& g,
                                         const std::vector<int>& subset,
                                         const Tolerances& tol = {});

// Same factorization for any invertible matrix (|det| need not be 1); used
// for flag-basis conjugated membership tests.
HorosphericalFactorization horospherical_matrix(const Eigen::MatrixXd& g,
                                                const std::vector<int>& subset,
                                                const Tolerances& tol = {});

}  // namespace slcorners::decomp
