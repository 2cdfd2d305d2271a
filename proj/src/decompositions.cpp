#include "slcorners/decompositions.hpp"

#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>
#include <limits>

namespace slcorners::decomp {

namespace {

// QR with positive diagonal R; k is orthogonal with det k = sign(det g).
void positive_qr(const Eigen::MatrixXd& g, Eigen::MatrixXd& k, Eigen::MatrixXd& r) {
  const int n = static_cast<int>(g.rows());
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  k = qr.householderQ();
  r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    if (r(i, i) < 0.0) {
      r.row(i) *= -1.0;
      k.col(i) *= -1.0;
    }
    require(r(i, i) > 0.0, "triangular factor has a vanishing diagonal entry");
  }
}

void check_reconstruction(const Eigen::MatrixXd& rebuilt, const Eigen::MatrixXd& g,
                          double tol, const char* what) {
  const double residual = (rebuilt - g).norm() / std::max(1.0, g.norm());
  if (residual > tol) throw numeric_error(std::string(what) + ": reconstruction residual over tolerance");
}

}  // namespace

SpecialLinearElement::SpecialLinearElement(const Eigen::MatrixXd& m) {
  require(m.rows() == m.cols() && m.rows() >= 1, "SpecialLinearElement: matrix must be square");
  require(m.allFinite(), "SpecialLinearElement: non-finite entries");
  const int n = static_cast<int>(m.rows());
  const double det = m.determinant();
  require(std::isfinite(det) && det > 0.0,
          "SpecialLinearElement: determinant must be positive");
  entries_ = m / std::pow(det, 1.0 / n);
  // The recomputed determinant carries a relative error of order
  // eps / rcond, so the unit-determinant check scales with conditioning.
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(entries_);
  const double rcond = std::max(lu.rcond(), 1e-300);
  const double tol = std::max(1e-9, 1e3 * std::numeric_limits<double>::epsilon() / rcond);
  if (std::abs(lu.determinant() - 1.0) > tol)
    throw numeric_error("SpecialLinearElement: renormalization failed (matrix too ill-conditioned)");
}

SpecialLinearElement SpecialLinearElement::inverse() const {
  return SpecialLinearElement(entries_.inverse());
}

PolarFactorization polar(const SpecialLinearElement& g, const Tolerances& tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g.matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  if (s(s.size() - 1) <= 0.0 || s(0) / s(s.size() - 1) > 1e14)
    throw numeric_error("polar: input is numerically singular (condition number beyond 1e14)");
  PolarFactorization f;
  f.orthogonal = svd.matrixU() * svd.matrixV().transpose();
  f.spd = svd.matrixV() * s.asDiagonal() * svd.matrixV().transpose();
  f.spd = 0.5 * (f.spd + f.spd.transpose().eval());
  check_reconstruction(f.reconstruct(), g.matrix(), tol.reconstruction, "polar");
  return f;
}

CartanFactorization cartan_kak(const SpecialLinearElement& g, const Tolerances& tol) {
  const int n = g.dim();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g.matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  CartanFactorization f;
  f.k1 = svd.matrixU();
  f.a = svd.singularValues();
  Eigen::MatrixXd v = svd.matrixV();
  // det g = 1 forces det k1 = det k2; flip the last column of both together.
  if (f.k1.determinant() < 0.0) {
    f.k1.col(n - 1) *= -1.0;
    v.col(n - 1) *= -1.0;
  }
  f.k2 = v.transpose();
  for (int i = 0; i + 1 < n; ++i)
    if (f.a(i) - f.a(i + 1) <= 1e-12 * f.a(0)) f.repeated_singular_values = true;
  check_reconstruction(f.reconstruct(), g.matrix(), tol.reconstruction, "cartan_kak");
  if (orthogonality_defect(f.k1) > tol.orthogonality || orthogonality_defect(f.k2) > tol.orthogonality)
    throw numeric_error("cartan_kak: orthogonality defect over tolerance");
  return f;
}

IwasawaFactorization iwasawa_kan(const SpecialLinearElement& g, const Tolerances& tol) {
  const int n = g.dim();
  Eigen::MatrixXd k, r;
  positive_qr(g.matrix(), k, r);
  IwasawaFactorization f;
  f.k = k;
  f.a = r.diagonal();
  f.n_upper = f.a.asDiagonal().inverse() * r;
  for (int i = 0; i < n; ++i) f.n_upper(i, i) = 1.0;
  check_reconstruction(f.reconstruct(), g.matrix(), tol.reconstruction, "iwasawa_kan");
  return f;
}

HorosphericalFactorization horospherical_matrix(const Eigen::MatrixXd& g,
                                                const std::vector<int>& subset,
                                                const Tolerances& tol) {
  require(g.rows() == g.cols() && g.rows() >= 1, "horospherical: matrix must be square");
  const int n = static_cast<int>(g.rows());
  const std::vector<int> breaks = roots::breaks_from_subset(n, subset);
  const std::vector<int> sizes = roots::block_sizes_from_breaks(n, breaks);

  Eigen::MatrixXd k, u;
  positive_qr(g, k, u);

  HorosphericalFactorization f;
  f.subset = subset;
  f.block_sizes = sizes;
  f.k = k;
  f.m = Eigen::MatrixXd::Zero(n, n);
  f.block_scales = Eigen::VectorXd::Ones(static_cast<int>(sizes.size()));
  int offset = 0;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    const int d = sizes[b];
    const Eigen::MatrixXd block = u.block(offset, offset, d, d);
    double logdet = 0.0;  // upper-triangular block with positive diagonal
    for (int i = 0; i < d; ++i) logdet += std::log(block(i, i));
    const double scale = std::exp(logdet / d);
    f.block_scales(static_cast<int>(b)) = scale;
    f.m.block(offset, offset, d, d) = block / scale;
    offset += d;
  }
  f.n_s = (f.m * f.a_matrix()).triangularView<Eigen::Upper>().solve(u);
  // Identity diagonal blocks by construction; snap them exactly.
  offset = 0;
  for (int d : sizes) {
    f.n_s.block(offset, offset, d, d) = Eigen::MatrixXd::Identity(d, d);
    offset += d;
  }
  check_reconstruction(f.reconstruct(), g, tol.reconstruction, "horospherical");
  return f;
}

HorosphericalFactorization horospherical(const SpecialLinearElement& g,
                                         const std::vector<int>& subset,
                                         const Tolerances& tol) {
  return horospherical_matrix(g.matrix(), subset, tol);
}

Eigen::MatrixXd HorosphericalFactorization::a_matrix() const {
  int n = 0;
  for (int d : block_sizes) n += d;
  Eigen::VectorXd diag(n);
  int offset = 0;
  for (std::size_t b = 0; b < block_sizes.size(); ++b) {
    diag.segment(offset, block_sizes[b]).setConstant(block_scales(static_cast<int>(b)));
    offset += block_sizes[b];
  }
  return diag.asDiagonal();
}

}  // namespace slcorners::decomp
