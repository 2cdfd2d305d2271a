#include "slcorners/boundary_chart.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace slcorners::chart {

namespace {

// Exponents tying the chart scale to the determinant-one condition:
// w_j = (n - c_j) / n for break c_j.
double scale_exponent(int n, int c) { return static_cast<double>(n - c) / n; }

Eigen::MatrixXd block_diagonal(const std::vector<Eigen::MatrixXd>& blocks,
                               const Eigen::VectorXd& factors) {
  int n = 0;
  for (const auto& b : blocks) n += static_cast<int>(b.rows());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  int offset = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const int d = static_cast<int>(blocks[i].rows());
    out.block(offset, offset, d, d) = factors(static_cast<int>(i)) * blocks[i];
    offset += d;
  }
  return out;
}

}  // namespace

std::vector<int> BoundaryChartPoint::block_sizes() const {
  return roots::block_sizes_from_breaks(n, breaks);
}

Eigen::MatrixXd sphere_project(const Eigen::MatrixXd& g) {
  require(g.allFinite(), "sphere_project: non-finite entries");
  const double norm = g.norm();
  require(norm > 0.0, "sphere_project: zero matrix");
  return g / norm;
}

decomp::SpecialLinearElement sl_normalize(const Eigen::MatrixXd& e) {
  require(e.rows() == e.cols() && e.rows() >= 1, "sl_normalize: matrix must be square");
  const double det = e.determinant();
  require(det > 0.0,
          "sl_normalize: determinant must be positive (wrong component of the sphere)");
  return decomp::SpecialLinearElement(e);
}

int corank(const Eigen::MatrixXd& e, double tol) {
  require(e.rows() == e.cols() && e.rows() >= 1, "corank: matrix must be square");
  require(std::abs(e.norm() - 1.0) <= 1e-8, "corank: input must have unit norm");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(e);
  const Eigen::VectorXd& s = svd.singularValues();
  int q = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) < tol * s(0)) ++q;
  return q;
}

BoundaryChartPoint chart_decompose(const decomp::SpecialLinearElement& g, double eps_break) {
  require(eps_break > 0.0 && eps_break < 1.0, "chart_decompose: eps_break must lie in (0, 1)");
  const int n = g.dim();
  const auto kak = decomp::cartan_kak(g);

  BoundaryChartPoint p;
  p.n = n;
  const Eigen::VectorXd ratios = roots::coweight_coordinates(kak.a);
  for (int c = 1; c <= n - 1; ++c) {
    const double rho = ratios(c - 1);
    if (rho < eps_break) p.breaks.push_back(c);
    if (rho >= eps_break && rho < 2.0 * eps_break) p.ambiguous_clustering = true;
  }
  p.left_flag = PartialFlag(kak.k1, p.breaks);
  p.right_flag = PartialFlag(kak.k2.transpose(), p.breaks);

  const std::vector<int> sizes = p.block_sizes();
  const int clusters = static_cast<int>(sizes.size());
  Eigen::VectorXd scales(clusters);
  int offset = 0;
  for (int i = 0; i < clusters; ++i) {
    const Eigen::VectorXd segment = kak.a.segment(offset, sizes[i]);
    scales(i) = segment.norm();
    p.blocks.push_back(Eigen::MatrixXd((segment / scales(i)).asDiagonal()));
    offset += sizes[i];
  }
  p.tau = Eigen::VectorXd(p.rank());
  for (int i = 0; i < p.rank(); ++i) p.tau(i) = scales(i + 1) / scales(i);

  p.scale = scales(0);
  for (int i = 0; i < p.rank(); ++i)
    p.scale *= std::pow(p.tau(i), scale_exponent(n, p.breaks[i]));
  return p;
}

std::vector<double> cluster_scales(const BoundaryChartPoint& p) {
  require((p.tau.array() > 0.0).all(), "cluster_scales: requires every tau positive");
  std::vector<double> s(p.rank() + 1);
  double s1 = p.scale;
  for (int i = 0; i < p.rank(); ++i)
    s1 *= std::pow(p.tau(i), -scale_exponent(p.n, p.breaks[i]));
  s[0] = s1;
  for (int i = 0; i < p.rank(); ++i) s[i + 1] = s[i] * p.tau(i);
  return s;
}

Eigen::MatrixXd chart_reconstruct(const BoundaryChartPoint& p) {
  const int r = p.rank();
  for (int i = 0; i < r; ++i)
    require(p.tau(i) >= 0.0, "chart_reconstruct: tau must be non-negative");

  const bool interior = r == 0 || (p.tau.array() > 0.0).all();
  if (interior) {
    const std::vector<double> s = cluster_scales(p);
    Eigen::VectorXd factors(r + 1);
    for (int i = 0; i <= r; ++i) factors(i) = s[static_cast<std::size_t>(i)];
    return p.left_flag.basis * block_diagonal(p.blocks, factors) *
           p.right_flag.basis.transpose();
  }

  // Boundary representative: clusters beyond a vanishing tau drop out and
  // the survivors are renormalized to unit norm.
  Eigen::VectorXd coeff(r + 1);
  coeff(0) = 1.0;
  for (int i = 0; i < r; ++i) coeff(i + 1) = coeff(i) * p.tau(i);
  const Eigen::MatrixXd rep = p.left_flag.basis * block_diagonal(p.blocks, coeff) *
                              p.right_flag.basis.transpose();
  return rep / rep.norm();
}

BoundaryChartPoint invert_in_chart(const BoundaryChartPoint& p) {
  const int n = p.n;
  const int r = p.rank();
  for (int i = 0; i < r; ++i)
    require(p.tau(i) >= 0.0, "invert_in_chart: tau must be non-negative");

  // Invert each block; the inverse norms feed the new taus.
  std::vector<Eigen::MatrixXd> inverted(p.blocks.size());
  std::vector<double> inverted_norm(p.blocks.size());
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(p.blocks[i]);
    const Eigen::VectorXd& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 1e-14 * sv(0))
      throw numeric_error("invert_in_chart: singular block");
    inverted[i] = p.blocks[i].inverse();
    inverted_norm[i] = inverted[i].norm();
  }

  BoundaryChartPoint q;
  q.n = n;
  for (auto it = p.breaks.rbegin(); it != p.breaks.rend(); ++it) q.breaks.push_back(n - *it);
  q.left_flag = p.right_flag.opposite();
  q.right_flag = p.left_flag.opposite();
  q.ambiguous_clustering = p.ambiguous_clustering;

  // New cluster i corresponds to old cluster j = r - i (0-based), reversed
  // within the block by the antidiagonal.  The inverse tau picks up the
  // block inverse norms (plain reversal when clusters are
  // one-dimensional), which is forced by consistency with the matrix
  // inverse and stays meaningful at tau = 0.
  for (int i = 0; i <= r; ++i) {
    const int j = r - i;
    const int d = static_cast<int>(inverted[j].rows());
    const Eigen::MatrixXd rev = reversal_permutation(d);
    q.blocks.push_back(rev * inverted[j] * rev / inverted_norm[j]);
  }
  q.tau = Eigen::VectorXd(r);
  for (int i = 0; i < r; ++i) {
    const int j = r - i;  // new gap i sits between old clusters j and j - 1
    q.tau(i) = p.tau(j - 1) * inverted_norm[j - 1] / inverted_norm[j];
  }

  if (r == 0 || (p.tau.array() > 0.0).all()) {
    // Interior: tie the scale to the old cluster scales for an exact
    // roundtrip against the matrix inverse.
    const std::vector<double> s = cluster_scales(p);
    q.scale = inverted_norm[r] / s[r];
    for (int i = 0; i < r; ++i)
      q.scale *= std::pow(q.tau(i), scale_exponent(n, q.breaks[i]));
  } else {
    // Boundary representative: the scale is fixed by the unit-determinant
    // normalization of the surviving data.
    double det = 1.0;
    for (const auto& block : q.blocks) det *= std::abs(block.determinant());
    q.scale = std::pow(det, -1.0 / n);
  }
  return q;
}

FaceLimit curve_limit(const Eigen::MatrixXd& k1, const roots::CartanVector& h,
                      const Eigen::MatrixXd& k2, double zero_tol) {
  const int n = h.dim();
  require(k1.rows() == n && k2.rows() == n, "curve_limit: dimension mismatch");
  require(is_orthogonal(k1, 1e-8) && is_orthogonal(k2, 1e-8),
          "curve_limit: k1, k2 must be orthogonal");
  require(k1.determinant() > 0.0 && k2.determinant() > 0.0,
          "curve_limit: k1, k2 must be special orthogonal");

  const Eigen::VectorXd alpha = roots::simple_root_values(h);
  require(h.entries.cwiseAbs().maxCoeff() > 0.0, "curve_limit: H must be non-zero");
  std::vector<int> subset;
  for (int i = 0; i < alpha.size(); ++i) {
    if (alpha(i) < -zero_tol)
      throw validation_error(
          "curve_limit: H outside the closed positive chamber (Weyl-sort first)");
    if (alpha(i) <= zero_tol) subset.push_back(i + 1);
  }

  FaceLimit limit;
  limit.face = faces::face_descriptor(n, subset);
  const std::vector<int> breaks = roots::breaks_from_subset(n, subset);
  limit.left_flag = PartialFlag(k1, breaks);
  limit.right_flag = PartialFlag(k2.transpose(), breaks);

  // Block-diagonal part of k1 k2 in the flag bases.
  const Eigen::MatrixXd product = k1 * k2;
  limit.fiber_representative = Eigen::MatrixXd::Zero(n, n);
  const std::vector<int> sizes = roots::block_sizes_from_breaks(n, breaks);
  int offset = 0;
  for (int d : sizes) {
    const Eigen::MatrixXd left = limit.left_flag.basis.middleCols(offset, d);
    const Eigen::MatrixXd right = limit.right_flag.basis.middleCols(offset, d);
    limit.fiber_representative +=
        left * (left.transpose() * product * right) * right.transpose();
    offset += d;
  }
  return limit;
}

Eigen::MatrixXd face_representative(const BoundaryChartPoint& p) {
  const std::size_t clusters = p.blocks.size();
  Eigen::VectorXd factors(static_cast<int>(clusters));
  std::vector<Eigen::MatrixXd> normalized(clusters);
  for (std::size_t i = 0; i < clusters; ++i) {
    const int d = static_cast<int>(p.blocks[i].rows());
    const double det = std::abs(p.blocks[i].determinant());
    require(det > 0.0, "face_representative: singular block");
    normalized[i] = p.blocks[i] / std::pow(det, 1.0 / d);
    factors(static_cast<int>(i)) = 1.0;
  }
  return p.left_flag.basis * block_diagonal(normalized, factors) *
         p.right_flag.basis.transpose();
}

double limit_distance(const BoundaryChartPoint& p, const FaceLimit& limit) {
  require(p.breaks == roots::breaks_from_subset(p.n, limit.face.subset),
          "limit_distance: break sets differ");
  double worst = flag_distance(p.left_flag, limit.left_flag);
  worst = std::max(worst, flag_distance(p.right_flag, limit.right_flag));
  worst = std::max(worst,
                   (face_representative(p) - limit.fiber_representative).norm());
  if (p.rank() > 0) worst = std::max(worst, p.tau.maxCoeff());
  return worst;
}

void validate_chart_point(const BoundaryChartPoint& p, double tol) {
  const int n = p.n;
  require(n >= 1, "chart point: n must be >= 1");
  require(roots::is_node_subset(n, p.breaks), "chart point: invalid break set");
  require(p.left_flag.dim() == n && p.right_flag.dim() == n,
          "chart point: flag dimension mismatch");
  require(p.left_flag.breaks == p.breaks && p.right_flag.breaks == p.breaks,
          "chart point: flag breaks must equal the break set");
  require(orthogonality_defect(p.left_flag.basis) <= 1e-8 &&
              orthogonality_defect(p.right_flag.basis) <= 1e-8,
          "chart point: flag bases must be orthonormal");
  require(p.tau.size() == p.rank(), "chart point: one tau per break");
  for (int i = 0; i < p.rank(); ++i)
    require(p.tau(i) >= 0.0 && p.tau(i) < 1.0, "chart point: tau must lie in [0, 1)");
  require(p.scale > 0.0, "chart point: scale must be positive");

  const std::vector<int> sizes = p.block_sizes();
  require(p.blocks.size() == sizes.size(), "chart point: block count mismatch");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    require(p.blocks[i].rows() == sizes[i] && p.blocks[i].cols() == sizes[i],
            "chart point: block size mismatch");
    require(std::abs(p.blocks[i].norm() - 1.0) <= 1e-10,
            "chart point: blocks must have unit Hilbert-Schmidt norm");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(p.blocks[i]);
    const Eigen::VectorXd& sv = svd.singularValues();
    require(sv(sv.size() - 1) > 1e-13 * sv(0), "chart point: block not invertible");
  }

  if (p.rank() == 0 || (p.tau.array() > 0.0).all()) {
    // det(reconstruct) = scale^n * prod det(block): the tau exponents cancel
    // by construction.  A chart point extracted from a formed matrix only
    // pins its determinant to eps * cond, so the tolerance opens with the
    // conditioning of the reconstruction.
    double det = std::pow(p.scale, n);
    double sigma_max = 0.0, sigma_min = 1e300;
    const std::vector<double> s = cluster_scales(p);
    for (std::size_t i = 0; i < p.blocks.size(); ++i) {
      det *= p.blocks[i].determinant();
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(p.blocks[i]);
      sigma_max = std::max(sigma_max, s[i] * svd.singularValues()(0));
      sigma_min = std::min(sigma_min, s[i] * svd.singularValues().tail(1)(0));
    }
    const double cond = sigma_max / sigma_min;
    const double det_tol = std::max(tol, 1e3 * 2.2e-16 * cond);
    if (std::abs(det - 1.0) > det_tol)
      throw numeric_error("chart point: reconstruction determinant differs from one");
  }
}

}  // namespace slcorners::chart
