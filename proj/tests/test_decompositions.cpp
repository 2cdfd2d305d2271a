#include <doctest.h>

#include "slcorners/decompositions.hpp"
#include "slcorners/sampling.hpp"

#include <cmath>

using namespace slcorners;
using decomp::SpecialLinearElement;

namespace {

Eigen::MatrixXd rotation2(double angle) {
  Eigen::MatrixXd r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

double residual(const Eigen::MatrixXd& rebuilt, const Eigen::MatrixXd& g) {
  return (rebuilt - g).norm() / std::max(1.0, g.norm());
}

}  // namespace

TEST_CASE("special linear element normalizes and validates") {
  Eigen::MatrixXd m(2, 2);
  m << 4.0, 0.0, 0.0, 4.0;  // det 16 -> divide by 4
  const SpecialLinearElement g(m);
  CHECK((g.matrix() - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-14);

  Eigen::MatrixXd flipped(2, 2);
  flipped << 0.0, 1.0, 1.0, 0.0;  // det -1
  CHECK_THROWS_AS(SpecialLinearElement{flipped}, validation_error);
  CHECK_THROWS_AS(SpecialLinearElement{Eigen::MatrixXd::Zero(2, 2)}, validation_error);
}

TEST_CASE("polar factorization") {
  const SpecialLinearElement id(Eigen::MatrixXd::Identity(3, 3));
  const auto f0 = decomp::polar(id);
  CHECK((f0.orthogonal - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);
  CHECK((f0.spd - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);

  const SpecialLinearElement rot(rotation2(0.8));
  const auto f1 = decomp::polar(rot);
  CHECK((f1.orthogonal - rotation2(0.8)).norm() < 1e-12);
  CHECK((f1.spd - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-12);

  Eigen::MatrixXd d(2, 2);
  d << 2.0, 0.0, 0.0, 0.5;
  const auto f2 = decomp::polar(SpecialLinearElement(d));
  CHECK((f2.orthogonal - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-12);
  CHECK((f2.spd - d).norm() < 1e-12);

  Eigen::MatrixXd bad(2, 2);
  bad << 1e8, 0.0, 0.0, 1e-8;
  CHECK_THROWS_AS(decomp::polar(SpecialLinearElement(bad)), numeric_error);
}

TEST_CASE("cartan kak examples") {
  const auto f0 = decomp::cartan_kak(SpecialLinearElement(Eigen::MatrixXd::Identity(2, 2)));
  CHECK(f0.a.isApproxToConstant(1.0));
  CHECK(f0.repeated_singular_values);

  Eigen::MatrixXd d(2, 2);
  d << 3.0, 0.0, 0.0, 1.0 / 3.0;
  const auto f1 = decomp::cartan_kak(SpecialLinearElement(d));
  CHECK(f1.a(0) == doctest::Approx(3.0));
  CHECK(f1.a(1) == doctest::Approx(1.0 / 3.0));
  CHECK(f1.k1.determinant() == doctest::Approx(1.0));
  CHECK(f1.k2.determinant() == doctest::Approx(1.0));
  CHECK(residual(f1.reconstruct(), d) < 1e-12);
  CHECK_FALSE(f1.repeated_singular_values);
}

TEST_CASE("iwasawa examples") {
  Eigen::MatrixXd upper(3, 3);
  upper << 1.0, 2.0, -1.0, 0.0, 1.0, 0.5, 0.0, 0.0, 1.0;
  const auto f = decomp::iwasawa_kan(SpecialLinearElement(upper));
  CHECK((f.k - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);
  CHECK(f.a.isApproxToConstant(1.0));
  CHECK((f.n_upper - upper).norm() < 1e-12);

  Eigen::MatrixXd g(2, 2);
  g << 2.0, 10.0, 0.0, 0.5;  // diag(2, 1/2) times unit upper with entry 5
  const auto f2 = decomp::iwasawa_kan(SpecialLinearElement(g));
  CHECK((f2.k - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-12);
  CHECK(f2.a(0) == doctest::Approx(2.0));
  CHECK(f2.a(1) == doctest::Approx(0.5));
  CHECK(f2.n_upper(0, 1) == doctest::Approx(5.0));
}

TEST_CASE("horospherical examples") {
  const int n = 3;
  const SpecialLinearElement id(Eigen::MatrixXd::Identity(n, n));
  for (const auto& subset : std::vector<std::vector<int>>{{}, {1}, {2}, {1, 2}}) {
    const auto f = decomp::horospherical(id, subset);
    CHECK((f.reconstruct() - id.matrix()).norm() < 1e-12);
    CHECK((f.k - Eigen::MatrixXd::Identity(n, n)).norm() < 1e-12);
    CHECK((f.m - Eigen::MatrixXd::Identity(n, n)).norm() < 1e-12);
    CHECK((f.block_scales.array() - 1.0).abs().maxCoeff() < 1e-12);
  }

  // S = D: single block, trivial a_S and n_S.
  sampling::Rng rng(7);
  const SpecialLinearElement g = sampling::random_special_linear(3, rng);
  const auto fd = decomp::horospherical(g, {1, 2});
  CHECK(fd.block_sizes == std::vector<int>{3});
  CHECK(fd.block_scales(0) == doctest::Approx(1.0));
  CHECK((fd.n_s - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);
  CHECK(std::abs(fd.m.determinant() - 1.0) < 1e-9);
  CHECK(residual(fd.reconstruct(), g.matrix()) < 1e-10);

  // Diagonal input with S empty: the diagonal is pure a_S.
  Eigen::MatrixXd d = Eigen::Vector3d(4.0, 1.0, 0.25).asDiagonal();
  const auto fe = decomp::horospherical(SpecialLinearElement(d), {});
  CHECK((fe.k - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);
  CHECK((fe.m - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);
  CHECK(fe.block_scales(0) == doctest::Approx(4.0));
  CHECK(fe.block_scales(1) == doctest::Approx(1.0));
  CHECK(fe.block_scales(2) == doctest::Approx(0.25));
  CHECK((fe.n_s - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);
}

TEST_CASE("seeded roundtrips for every decomposition") {
  sampling::Rng rng(2024);
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 200; ++trial) {
      const SpecialLinearElement g = sampling::random_special_linear(n, rng);
      CHECK(residual(decomp::polar(g).reconstruct(), g.matrix()) < 1e-10);
      CHECK(residual(decomp::cartan_kak(g).reconstruct(), g.matrix()) < 1e-10);
      CHECK(residual(decomp::iwasawa_kan(g).reconstruct(), g.matrix()) < 1e-10);
      // A random subset for the horospherical factorization.
      std::vector<int> subset;
      for (int k = 1; k <= n - 1; ++k)
        if (rng.uniform() < 0.5) subset.push_back(k);
      const auto f = decomp::horospherical(g, subset);
      CHECK(residual(f.reconstruct(), g.matrix()) < 1e-10);
      double logdet = 0.0;
      for (int b = 0; b < f.block_scales.size(); ++b)
        logdet += f.block_sizes[b] * std::log(f.block_scales(b));
      CHECK(std::abs(logdet) < 1e-9);  // a_S has determinant one
    }
  }
}

TEST_CASE("kak singular values are orthogonally invariant") {
  sampling::Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 4.0);
    const SpecialLinearElement g = sampling::random_special_linear(n, rng);
    const Eigen::MatrixXd u = sampling::random_special_orthogonal(n, rng);
    const Eigen::MatrixXd v = sampling::random_special_orthogonal(n, rng);
    const auto f = decomp::cartan_kak(g);
    const auto fuv = decomp::cartan_kak(SpecialLinearElement(u * g.matrix() * v));
    CHECK((f.a - fuv.a).cwiseAbs().maxCoeff() < 1e-10 * f.a(0));
  }
}

TEST_CASE("horospherical with empty subset refines iwasawa") {
  sampling::Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform() * 4.0);
    const SpecialLinearElement g = sampling::random_special_linear(n, rng);
    const auto iw = decomp::iwasawa_kan(g);
    const auto hs = decomp::horospherical(g, {});
    CHECK((hs.a_matrix().diagonal() - iw.a).cwiseAbs().maxCoeff() < 1e-10 * iw.a.maxCoeff());
    CHECK((hs.m - Eigen::MatrixXd::Identity(n, n)).norm() < 1e-10);
  }
}

TEST_CASE("graded conjugation scales unipotent entries by tau ratios") {
  // a n a^{-1} stays block unipotent and entry (i, j) scales by the exact
  // ratio of block scales, matching direct matrix conjugation.
  sampling::Rng rng(13);
  const int n = 5;
  const std::vector<int> subset = {2, 4};  // breaks at 1 and 3
  const std::vector<int> breaks = roots::breaks_from_subset(n, subset);
  const std::vector<int> sizes = roots::block_sizes_from_breaks(n, breaks);

  for (int trial = 0; trial < 25; ++trial) {
    // Random a_S: constant per block, determinant one.
    Eigen::VectorXd log_scales(static_cast<int>(sizes.size()));
    for (int b = 0; b < log_scales.size(); ++b) log_scales(b) = rng.uniform(-1.0, 1.0);
    double total = 0.0;
    for (std::size_t b = 0; b < sizes.size(); ++b) total += sizes[b] * log_scales(b);
    log_scales.array() -= total / n;
    Eigen::VectorXd diag(n);
    int offset = 0;
    std::vector<int> block_of(n);
    for (std::size_t b = 0; b < sizes.size(); ++b) {
      for (int i = 0; i < sizes[b]; ++i) {
        diag(offset + i) = std::exp(log_scales(static_cast<int>(b)));
        block_of[offset + i] = static_cast<int>(b);
      }
      offset += sizes[b];
    }

    // Random block-unipotent upper-triangular element of N_S.
    Eigen::MatrixXd u = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (block_of[i] != block_of[j]) u(i, j) = rng.gaussian();

    const Eigen::MatrixXd a = diag.asDiagonal();
    const Eigen::MatrixXd conj = a * u * a.inverse();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) {
          CHECK(conj(i, j) == doctest::Approx(1.0));
        } else if (block_of[i] == block_of[j] || i > j) {
          CHECK(std::abs(conj(i, j) - u(i, j) * (i == j ? 1.0 : diag(i) / diag(j))) < 1e-12);
        } else {
          const double expected = u(i, j) * diag(i) / diag(j);
          CHECK(std::abs(conj(i, j) - expected) < 1e-12 * std::max(1.0, std::abs(expected)));
        }
      }
  }
}
