// Acceptance suite: every criterion runs at its stated tolerance and prints
// one PASS/FAIL line.  The process exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "slcorners/boundary_chart.hpp"
#include "slcorners/decompositions.hpp"
#include "slcorners/face_lattice.hpp"
#include "slcorners/root_datum.hpp"
#include "slcorners/sampling.hpp"
#include "slcorners/verification.hpp"

using namespace slcorners;
using decomp::SpecialLinearElement;

namespace {

int failures = 0;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int index, const std::string& name, bool ok, const std::string& detail,
            double seconds) {
  std::printf("%s  %d. %s  (%s, %.1fs)\n", ok ? "PASS" : "FAIL", index, name.c_str(),
              detail.c_str(), seconds);
  if (!ok) ++failures;
}

double rel_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

std::string sci(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3e", x);
  return buffer;
}

// 1. Decomposition roundtrips: n in 2..6, 1000 seeded samples each, all four
// decompositions reconstruct within 1e-9.
void criterion_1() {
  Timer timer;
  double worst = 0.0;
  sampling::Rng rng(101);
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 1000; ++trial) {
      const SpecialLinearElement g = sampling::random_special_linear(n, rng);
      worst = std::max(worst, rel_residual(decomp::polar(g).reconstruct(), g.matrix()));
      worst = std::max(worst, rel_residual(decomp::cartan_kak(g).reconstruct(), g.matrix()));
      worst = std::max(worst, rel_residual(decomp::iwasawa_kan(g).reconstruct(), g.matrix()));
      std::vector<int> subset;
      for (int k = 1; k <= n - 1; ++k)
        if (rng.uniform() < 0.5) subset.push_back(k);
      worst = std::max(
          worst, rel_residual(decomp::horospherical(g, subset).reconstruct(), g.matrix()));
    }
  }
  const double seconds = timer.seconds();
  report(1, "decomposition roundtrips (KAK/Iwasawa/polar/horospherical, n=2..6)",
         worst <= 1e-9 && seconds <= 30.0,
         "worst residual " + sci(worst), seconds);
}

// 2. Chart roundtrip within 1e-9 on 1000 samples per n in {2,3,4} with
// tau-profiles bounded away from eps_break.
void criterion_2() {
  Timer timer;
  double worst = 0.0;
  sampling::Rng rng(202);
  for (int n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<int> breaks;
      std::vector<double> depth;
      double used_depth = 0.0;  // total depth above 1e-8 keeps clusters resolvable
      for (int c = 1; c <= n - 1; ++c)
        if (rng.uniform() < 0.5) {
          const double exponent = rng.uniform(-4.0, -3.7);
          if (used_depth + exponent < -8.0) continue;
          used_depth += exponent;
          breaks.push_back(c);
          depth.push_back(std::pow(10.0, exponent));
        }
      Eigen::VectorXd break_ratios(static_cast<int>(depth.size()));
      for (int i = 0; i < break_ratios.size(); ++i) break_ratios(i) = depth[i];
      const Eigen::VectorXd lambda = sampling::graded_diagonal(n, breaks, break_ratios, rng);
      const Eigen::MatrixXd k1 = sampling::random_special_orthogonal(n, rng);
      const Eigen::MatrixXd k2 = sampling::random_special_orthogonal(n, rng);
      const SpecialLinearElement g(k1 * lambda.asDiagonal() * k2);
      const auto p = chart::chart_decompose(g);
      worst = std::max(worst, rel_residual(chart::chart_reconstruct(p), g.matrix()));
    }
  }
  const double seconds = timer.seconds();
  report(2, "chart roundtrip (reconstruct after decompose, n=2..4)",
         worst <= 1e-9 && seconds <= 30.0, "worst residual " + sci(worst),
         seconds);
}

// 3. Axiom D1: invert_in_chart vs chart_decompose(inverse) within 1e-7 on
// 500 samples per n in {2,3,4}; tau reversal exact to 1e-12.
void criterion_3() {
  Timer timer;
  bool ok = true;
  double worst_disc = 0.0, worst_rev = 0.0;
  for (int n = 2; n <= 4; ++n) {
    const auto report_n = verify::inversion_diffeo_check(n, 500, 300 + n);
    ok = ok && report_n.passed;
    for (const auto& rec : report_n.details) {
      if (rec.label.find("discrepancy") != std::string::npos)
        worst_disc = std::max(worst_disc, rec.value);
      if (rec.label.find("reversal") != std::string::npos)
        worst_rev = std::max(worst_rev, rec.value);
    }
  }
  const double seconds = timer.seconds();
  report(3, "axiom D1 inversion (500 samples per n=2..4)", ok && seconds <= 60.0,
         "worst discrepancy " + sci(worst_disc) + ", tau reversal " + sci(worst_rev),
         seconds);
}

// 4. Haar exponent: fitted slopes equal -k(n-k) within 2% for n in {2,3}.
void criterion_4() {
  Timer timer;
  bool ok = true;
  std::string detail;
  for (int n : {2, 3}) {
    const auto datum = roots::build_root_datum(n);
    const auto fits = verify::haar_report(n, 400 + n);
    for (std::size_t k = 0; k < fits.size(); ++k) {
      const double target = -static_cast<double>(datum.sigma[k]);
      const bool fit_ok = std::abs(fits[k].slope - target) <= 0.02 * std::abs(target) &&
                          fits[k].max_residual <= 0.05;
      ok = ok && fit_ok;
      detail += "n=" + std::to_string(n) + ",k=" + std::to_string(k + 1) + ": " +
                sci(fits[k].slope) + " ";
    }
  }
  const double seconds = timer.seconds();
  report(4, "Haar density slopes equal -k(n-k) within 2% (n=2,3)", ok && seconds <= 120.0,
         detail, seconds);
}

// 5. Axiom D2: a_S + n_S generators fix the boundary with slopes >= 0.95 for
// every proper S; m_S generators keep fiber velocity >= 0.1.
void criterion_5() {
  Timer timer;
  bool ok = true;
  double worst = -1e300;
  for (int n : {2, 3}) {
    const auto rep = verify::isotropy_report(n, 500 + n);
    ok = ok && rep.passed;
    worst = std::max(worst, rep.worst_case);
  }
  const double seconds = timer.seconds();
  report(5, "axiom D2 isotropy vanishing (all S strictly inside D, n=2,3)",
         ok && seconds <= 120.0, "worst violation " + sci(worst), seconds);
}

// 6. Axiom D3: combined rank n^2-1 at 100 near-boundary points, n in {2,3}.
void criterion_6() {
  Timer timer;
  bool ok = true;
  for (int n : {2, 3}) ok = ok && verify::transitivity_report(n, 100, 600 + n).passed;
  const double seconds = timer.seconds();
  report(6, "axiom D3 b-transitivity rank = n^2-1 (100 points, n=2,3)",
         ok && seconds <= 60.0, ok ? "rank full everywhere" : "rank defect", seconds);
}

// 7. Axiom D4: per-hypersurface minimality witness with slope in
// [0.95, 1.05], n in {2,3}.
void criterion_7() {
  Timer timer;
  bool ok = true;
  double worst = -1e300;
  for (int n : {2, 3}) {
    const auto rep = verify::minimality_report(n, 10, 700 + n);
    ok = ok && rep.passed;
    worst = std::max(worst, rep.worst_case);
  }
  const double seconds = timer.seconds();
  report(7, "axiom D4 minimality witnesses (slope in [0.95,1.05], n=2,3)",
         ok && seconds <= 60.0, "worst violation " + sci(worst), seconds);
}

// 8. Face lattice dimensions exact for n <= 8; bracket filtration exact for
// n <= 6.
void criterion_8() {
  Timer timer;
  bool ok = true;
  for (int n = 1; n <= 8; ++n)
    for (const auto& f : faces::enumerate_faces(n))
      ok = ok && (f.dim_face + f.codim == n * n - 1);
  for (int n = 2; n <= 6; ++n) ok = ok && verify::bracket_filtration_check(n);
  const double seconds = timer.seconds();
  report(8, "face dimensions (n<=8) and bracket filtration (n<=6), exact",
         ok && seconds <= 10.0, ok ? "all exact" : "mismatch", seconds);
}

// 9. Curve limits: chart_decompose(k1 exp(tH) k2) at t = 30 within 1e-6 of
// curve_limit in principal angles, and the fiber representative passes
// is_fiber_element; 100 seeded triples per n in {2,3}.
void criterion_9() {
  Timer timer;
  bool ok = true;
  double worst_angle = 0.0;
  sampling::Rng rng(909);
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 100; ++trial) {
      const Eigen::MatrixXd k1 = sampling::random_special_orthogonal(n, rng);
      const Eigen::MatrixXd k2 = sampling::random_special_orthogonal(n, rng);
      Eigen::VectorXd alpha(n - 1);
      for (int i = 0; i < n - 1; ++i) alpha(i) = rng.uniform(0.25, 0.3);
      Eigen::VectorXd h(n);
      h(n - 1) = 0.0;
      for (int i = n - 2; i >= 0; --i) h(i) = h(i + 1) + alpha(i);
      h.array() -= h.mean();
      const roots::CartanVector hvec{h};

      const auto limit = chart::curve_limit(k1, hvec, k2);
      const Eigen::MatrixXd a = (30.0 * h).array().exp().matrix().asDiagonal();
      const auto p = chart::chart_decompose(SpecialLinearElement(k1 * a * k2));
      if (p.breaks != limit.left_flag.breaks) {
        ok = false;
        continue;
      }
      const double angle = std::max(chart::flag_distance(p.left_flag, limit.left_flag),
                                    chart::flag_distance(p.right_flag, limit.right_flag));
      worst_angle = std::max(worst_angle, angle);
      ok = ok && angle <= 1e-6;

      const faces::ParabolicDescriptor incoming{limit.right_flag, limit.face.subset};
      const faces::ParabolicDescriptor outgoing{limit.left_flag, limit.face.subset};
      ok = ok && faces::is_fiber_element(SpecialLinearElement(limit.fiber_representative),
                                         incoming, outgoing, 1e-8);
    }
  }
  const double seconds = timer.seconds();
  report(9, "curve limits converge (principal angles <= 1e-6 at t=30, n=2,3)",
         ok && seconds <= 60.0, "worst angle " + sci(worst_angle), seconds);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
