#pragma once

// Boundary charts for the compactification of SL(n, R) inside the unit
// sphere of the homomorphism space: radial projection, corank detection,
// chart coordinates (flag pair, tau vector, unit-norm blocks, scale),
// inversion in chart coordinates, and limits of chamber rays.

#include <vector>

#include "slcorners/common.hpp"
#include "slcorners/decompositions.hpp"
#include "slcorners/face_lattice.hpp"
#include "slcorners/flag.hpp"
#include "slcorners/root_datum.hpp"

namespace slcorners::chart {

inline constexpr double kDefaultEpsBreak = 1e-3;

// A point of the compactification in the boundary chart attached to its
// break set.  Blocks are expressed in the flag bases and carry unit
// Hilbert-Schmidt norm; the residual positive factor lives in `scale`.
// Cluster i has Hilbert-Schmidt scale s_i with s_1 = scale * prod_j
// tau_j^{-(n-c_j)/n} and s_{i+1} = tau_i s_i.
struct BoundaryChartPoint {
  int n = 1;
  std::vector<int> breaks;  // c_1 < ... < c_r, the set D \ S
  PartialFlag left_flag;    // range side
  PartialFlag right_flag;   // domain side
  Eigen::VectorXd tau;      // boundary defining functions, one per break
  std::vector<Eigen::MatrixXd> blocks;
  double scale = 1.0;
  bool ambiguous_clustering = false;

  std::vector<int> block_sizes() const;
  int rank() const { return static_cast<int>(breaks.size()); }
};

struct FaceLimit {
  faces::FaceDescriptor face;
  PartialFlag left_flag;
  PartialFlag right_flag;
  Eigen::MatrixXd fiber_representative;  // block diagonal in the flag bases
};

// g / |g|_HS.
Eigen::MatrixXd sphere_project(const Eigen::MatrixXd& g);

// e / det(e)^{1/n}; inverse of sphere_project on the positive-determinant
// part of the sphere.  Non-positive determinants are outside the component
// carrying the group and are rejected.
decomp::SpecialLinearElement sl_normalize(const Eigen::MatrixXd& e);

// Number of singular values below tol times the largest, for a unit-norm e.
int corank(const Eigen::MatrixXd& e, double tol);

// Chart coordinates of g: KAK, breaks where successive singular-value
// ratios drop below eps_break, per-cluster unit-norm blocks, tau as ratios
// of cluster Hilbert-Schmidt scales.  A ratio in [eps_break, 2*eps_break)
// marks the point as ambiguously clustered (two charts overlap there); the
// result is still returned.
BoundaryChartPoint chart_decompose(const decomp::SpecialLinearElement& g,
                                   double eps_break = kDefaultEpsBreak);

// Inverse chart map.  With every tau positive this lands in SL(n, R); with
// some tau zero it returns the unit-norm boundary representative spanned by
// the surviving clusters.
Eigen::MatrixXd chart_reconstruct(const BoundaryChartPoint& p);

// Chart coordinates of the group inverse: breaks reflected through the
// diagram flip, tau and blocks reversed (each block inverted, reversed and
// renormalized; the tau of the inverse picks up the block inverse norms,
// which reduces to plain reversal when all clusters are one-dimensional).
// Agrees with chart_decompose of the matrix inverse.
BoundaryChartPoint invert_in_chart(const BoundaryChartPoint& p);

// Limit of chart_decompose(k1 exp(tH) k2) as t -> infinity for H in the
// closed positive chamber.  S collects the nodes where the simple-root
// value of H vanishes; the fiber representative is the block-diagonal part
// of k1 k2 in the limiting flag bases.
FaceLimit curve_limit(const Eigen::MatrixXd& k1, const roots::CartanVector& h,
                      const Eigen::MatrixXd& k2, double zero_tol = 1e-12);

// The face point determined by p when its taus are sent to zero: blocks
// renormalized to unit determinant and reassembled in the flag bases.
Eigen::MatrixXd face_representative(const BoundaryChartPoint& p);

// max of flag distances, fiber distance and largest tau; the convergence
// metric for curve limits.
double limit_distance(const BoundaryChartPoint& p, const FaceLimit& limit);

// Hilbert-Schmidt scales s_1, ..., s_{r+1} of the clusters (requires every
// tau positive).
std::vector<double> cluster_scales(const BoundaryChartPoint& p);

// Throws unless p satisfies the chart-point invariants.
void validate_chart_point(const BoundaryChartPoint& p, double tol = 1e-9);

}  // namespace slcorners::chart
