#include <doctest.h>

#include "slcorners/flag.hpp"
#include "slcorners/sampling.hpp"

using namespace slcorners;
using chart::PartialFlag;

TEST_CASE("flag validation") {
  CHECK_NOTHROW(PartialFlag(Eigen::MatrixXd::Identity(3, 3), {1, 2}));
  CHECK_THROWS_AS(PartialFlag(Eigen::MatrixXd::Identity(3, 3), {2, 1}), validation_error);
  CHECK_THROWS_AS(PartialFlag(Eigen::MatrixXd::Identity(3, 3), {3}), validation_error);
  CHECK_THROWS_AS(PartialFlag(2.0 * Eigen::MatrixXd::Identity(3, 3), {1}), validation_error);
}

TEST_CASE("opposite flag reverses and complements") {
  const PartialFlag std3(Eigen::MatrixXd::Identity(3, 3), {1});
  const PartialFlag opp = std3.opposite();
  CHECK(opp.breaks == std::vector<int>{2});
  // First subspace of the opposite flag is the orthocomplement span{e2, e3}.
  const Eigen::MatrixXd p = opp.projector(1);
  Eigen::MatrixXd expected = Eigen::MatrixXd::Identity(3, 3);
  expected(0, 0) = 0.0;
  CHECK((p - expected).norm() < 1e-14);
}

TEST_CASE("opposite flag is an involution on projectors") {
  sampling::Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng.uniform() * 3.0);
    std::vector<int> breaks;
    for (int c = 1; c <= n - 1; ++c)
      if (rng.uniform() < 0.6) breaks.push_back(c);
    const PartialFlag f(sampling::random_special_orthogonal(n, rng), breaks);
    const PartialFlag back = f.opposite().opposite();
    REQUIRE(back.breaks == f.breaks);
    for (int i = 1; i <= f.rank(); ++i)
      CHECK((f.projector(i) - back.projector(i)).norm() < 1e-10);
  }
}

TEST_CASE("flag distance") {
  const PartialFlag a(Eigen::MatrixXd::Identity(2, 2), {1});
  Eigen::MatrixXd r(2, 2);
  const double angle = 0.3;
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  const PartialFlag b(r, {1});
  CHECK(chart::flag_distance(a, b) == doctest::Approx(std::sin(angle)));
  CHECK(chart::flag_distance(a, a) == doctest::Approx(0.0));
  const PartialFlag c(Eigen::MatrixXd::Identity(3, 3), {1});
  CHECK_THROWS_AS(chart::flag_distance(a, c), validation_error);
}
