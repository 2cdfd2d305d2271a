#pragma once

// Numerical certification of the compactification axioms: inversion
// compatibility (D1), boundary-fixing of the right-action isotropy
// directions (D2), combined left/right b-transitivity rank (D3),
// minimality witnesses (D4), the Haar density exponent, and the exact
// bracket filtration.  Every asymptotic claim is measured as a log-log
// slope over a geometric tau grid, never as a single-point comparison.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "slcorners/boundary_chart.hpp"
#include "slcorners/common.hpp"
#include "slcorners/decompositions.hpp"

namespace slcorners::verify {

struct SlopeFit {
  int parameter = 0;  // break index whose tau was varied
  std::vector<std::pair<double, double>> samples;  // (log tau, log quantity)
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};

// Least squares line through the samples; at least 4 samples required.
SlopeFit fit_line(int parameter, std::vector<std::pair<double, double>> samples);

enum class Axiom { D1, D2, D3, D4 };

// One measured quantity against its bound.  `value` compares against
// `bound` in the direction recorded by `ok`; violation is how far the
// check missed (non-positive when it passed).
struct CheckRecord {
  std::string label;
  double value = 0.0;
  double bound = 0.0;
  double violation = 0.0;
  bool ok = true;
};

struct AxiomReport {
  Axiom axiom = Axiom::D1;
  bool passed = false;
  double worst_case = 0.0;  // max violation over all checks
  double tolerance = 0.0;   // passed iff worst_case <= tolerance
  std::vector<CheckRecord> details;
};

const char* axiom_name(Axiom a);

// Finite-difference Jacobian of the KAK parametrization along the
// break_index coroot direction, measured in the left-invariant frame so
// that the fitted density is the Haar b-density.  The slope converges to
// -sigma[break_index] = -k(n-k).
SlopeFit haar_exponent_fit(int n, int break_index, const std::vector<double>& t_grid,
                           std::uint64_t seed, double residual_threshold = 0.05);

// D2: right-action velocities at chart points with tau -> 0.  Generators
// of n_S must fix the left flag and the fiber with log-log slope >= 0.95;
// coroot directions respond on their own tau with slope 1 +- 0.05;
// generators of m_S keep fiber velocity >= 0.1.
AxiomReport isotropy_vanishing_check(int n, const std::vector<int>& subset,
                                     const std::vector<double>& tau_magnitudes,
                                     std::uint64_t seed);

// Principal-angle movement of the left flag of g under right
// multiplication by exp(h E_{ij}), divided by h.
double left_flag_velocity(const decomp::SpecialLinearElement& g, int i, int j,
                          double h = 1e-6, double eps_break = chart::kDefaultEpsBreak);

// D3: numerical rank of the combined left+right invariant velocities in
// logarithmic chart coordinates; singular values above 1e-6 relative count.
int b_transitivity_rank(const chart::BoundaryChartPoint& p, double h);

// D4: per-break minimality witness with tau-slope in [0.95, 1.05].
AxiomReport minimality_probe(const chart::BoundaryChartPoint& p);

// D1: worst chart discrepancy between invert_in_chart and
// chart_decompose of the matrix inverse (projector metric for flags,
// absolute for tau), plus the exact tau-reversal law.
AxiomReport inversion_diffeo_check(int n, int samples, std::uint64_t seed);

// Exact integer check of the bracket filtration on the kappa basis.
bool bracket_filtration_check(int n);

// Sweeps used by the CLI and the acceptance suite.
std::vector<SlopeFit> haar_report(int n, std::uint64_t seed);
AxiomReport isotropy_report(int n, std::uint64_t seed);
AxiomReport transitivity_report(int n, int points, std::uint64_t seed);
AxiomReport minimality_report(int n, int points, std::uint64_t seed);

}  // namespace slcorners::verify
