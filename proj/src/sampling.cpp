#include "slcorners/sampling.hpp"

#include <Eigen/QR>

#include <cmath>

namespace slcorners::sampling {

double Rng::uniform() {
  // 53 random bits into [0, 1).
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

Eigen::MatrixXd gaussian_matrix(int n, Rng& rng) {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.gaussian();
  return m;
}

Eigen::MatrixXd random_special_orthogonal(int n, Rng& rng) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian_matrix(n, rng));
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0.0) q.col(i) *= -1.0;
  if (q.determinant() < 0.0) q.col(n - 1) *= -1.0;
  return q;
}

decomp::SpecialLinearElement random_special_linear(int n, Rng& rng) {
  for (;;) {
    Eigen::MatrixXd m = gaussian_matrix(n, rng);
    double det = m.determinant();
    if (std::abs(det) < 1e-6) continue;  // resample near-singular draws
    if (det < 0.0) m.col(0) *= -1.0;
    return decomp::SpecialLinearElement(m);
  }
}

Eigen::VectorXd graded_diagonal(int n, const std::vector<int>& breaks,
                                const Eigen::VectorXd& break_ratios, Rng& rng,
                                double ratio_lo, double ratio_hi) {
  require(static_cast<int>(breaks.size()) == break_ratios.size(),
          "graded_diagonal: one ratio per break");
  Eigen::VectorXd log_lambda(n);
  log_lambda(0) = 0.0;
  std::size_t b = 0;
  for (int j = 1; j < n; ++j) {
    double ratio;
    if (b < breaks.size() && breaks[b] == j) {
      ratio = break_ratios(static_cast<int>(b));
      ++b;
    } else {
      ratio = rng.uniform(ratio_lo, ratio_hi);
    }
    require(ratio > 0.0 && ratio <= 1.0, "graded_diagonal: ratios must lie in (0, 1]");
    log_lambda(j) = log_lambda(j - 1) + std::log(ratio);
  }
  log_lambda.array() -= log_lambda.mean();  // determinant one
  return log_lambda.array().exp();
}

}  // namespace slcorners::sampling
