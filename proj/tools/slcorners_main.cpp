// Command-line access to the library: root data, decompositions, boundary
// charts, the face lattice and the verification suite, with JSON documents
// on stdin/stdout.  Exit codes: 0 success, 2 validation error, 3 numeric
// failure, 4 verification failure.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <fstream>
#include <sstream>
#include <string>

#include "slcorners/boundary_chart.hpp"
#include "slcorners/decompositions.hpp"
#include "slcorners/face_lattice.hpp"
#include "slcorners/json_io.hpp"
#include "slcorners/root_datum.hpp"
#include "slcorners/verification.hpp"

namespace {

using slcorners::io::json;

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitVerification = 4;

std::vector<int> parse_subset(const std::string& text) {
  std::vector<int> subset;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    size_t used = 0;
    const int value = std::stoi(item, &used);
    if (used != item.size()) throw slcorners::validation_error("invalid subset entry: " + item);
    subset.push_back(value);
  }
  std::sort(subset.begin(), subset.end());
  return subset;
}

Eigen::MatrixXd matrix_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw slcorners::validation_error("cannot open file: " + path);
  return slcorners::io::parse_matrix_document(slcorners::io::parse_stream(in));
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

int run_roots(int n, bool as_json) {
  const auto datum = slcorners::roots::build_root_datum(n);
  if (as_json) {
    json doc;
    doc["n"] = datum.n;
    doc["nodes"] = datum.nodes;
    json roots_arr = json::array();
    for (const auto& [i, j] : datum.positive_roots) roots_arr.push_back(json::array({i, j}));
    doc["positive_roots"] = std::move(roots_arr);
    json coroots = json::array();
    for (int k = 1; k <= n - 1; ++k) {
      const Eigen::VectorXd c = slcorners::roots::coroot_diagonal(n, k);
      json entry = json::array();
      for (int i = 0; i < n; ++i) entry.push_back(c(i));
      coroots.push_back(std::move(entry));
    }
    doc["coroots"] = std::move(coroots);
    doc["sigma"] = datum.sigma;
    emit(doc);
    return 0;
  }
  std::cout << "nodes D:";
  for (int k : datum.nodes) std::cout << " " << k;
  std::cout << "\npositive roots:";
  for (const auto& [i, j] : datum.positive_roots) std::cout << " (" << i << "," << j << ")";
  std::cout << "\nsigma:";
  for (long long s : datum.sigma) std::cout << " " << s;
  std::cout << "\n";
  return 0;
}

int run_decompose(const std::string& mode, bool subset_given, const std::string& subset_text,
                  double residual_limit) {
  const Eigen::MatrixXd m = slcorners::io::parse_matrix_document(
      slcorners::io::parse_stream(std::cin));
  const slcorners::decomp::SpecialLinearElement g(m);
  json doc;
  doc["mode"] = mode;
  double residual = 0.0;
  const double scale = std::max(1.0, g.matrix().norm());
  if (mode == "kak") {
    const auto f = slcorners::decomp::cartan_kak(g);
    doc["k1"] = slcorners::io::matrix_document(f.k1);
    json a = json::array();
    for (int i = 0; i < f.a.size(); ++i) a.push_back(f.a(i));
    doc["a"] = std::move(a);
    doc["k2"] = slcorners::io::matrix_document(f.k2);
    doc["repeated_singular_values"] = f.repeated_singular_values;
    residual = (f.reconstruct() - g.matrix()).norm() / scale;
  } else if (mode == "iwasawa") {
    const auto f = slcorners::decomp::iwasawa_kan(g);
    doc["k"] = slcorners::io::matrix_document(f.k);
    json a = json::array();
    for (int i = 0; i < f.a.size(); ++i) a.push_back(f.a(i));
    doc["a"] = std::move(a);
    doc["n_upper"] = slcorners::io::matrix_document(f.n_upper);
    residual = (f.reconstruct() - g.matrix()).norm() / scale;
  } else if (mode == "polar") {
    const auto f = slcorners::decomp::polar(g);
    doc["orthogonal"] = slcorners::io::matrix_document(f.orthogonal);
    doc["spd"] = slcorners::io::matrix_document(f.spd);
    residual = (f.reconstruct() - g.matrix()).norm() / scale;
  } else if (mode == "horospherical") {
    if (!subset_given)
      throw slcorners::validation_error("horospherical mode requires --subset");
    const auto subset = parse_subset(subset_text);
    const auto f = slcorners::decomp::horospherical(g, subset);
    doc["subset"] = f.subset;
    doc["block_sizes"] = f.block_sizes;
    doc["k"] = slcorners::io::matrix_document(f.k);
    doc["m"] = slcorners::io::matrix_document(f.m);
    json scales = json::array();
    for (int i = 0; i < f.block_scales.size(); ++i) scales.push_back(f.block_scales(i));
    doc["a_scales"] = std::move(scales);
    doc["n_s"] = slcorners::io::matrix_document(f.n_s);
    residual = (f.reconstruct() - g.matrix()).norm() / scale;
  } else {
    throw slcorners::validation_error("unknown decomposition mode: " + mode);
  }
  doc["residual"] = residual;
  emit(doc);
  if (residual > residual_limit) {
    std::cerr << "reconstruction residual " << residual << " over limit " << residual_limit
              << "\n";
    return kExitNumeric;
  }
  return 0;
}

int run_chart(const std::string& action, double eps_break) {
  const json input = slcorners::io::parse_stream(std::cin);
  if (action == "decompose") {
    const slcorners::decomp::SpecialLinearElement g(
        slcorners::io::parse_matrix_document(input));
    const auto p = slcorners::chart::chart_decompose(g, eps_break);
    if (p.ambiguous_clustering)
      std::cerr << "warning: ambiguous clustering (a ratio falls in [eps, 2 eps))\n";
    emit(slcorners::io::chart_document(p));
    return 0;
  }
  if (action == "reconstruct") {
    const auto p = slcorners::io::parse_chart_document(input);
    emit(slcorners::io::matrix_document(slcorners::chart::chart_reconstruct(p)));
    return 0;
  }
  if (action == "invert") {
    const auto p = slcorners::io::parse_chart_document(input);
    emit(slcorners::io::chart_document(slcorners::chart::invert_in_chart(p)));
    return 0;
  }
  throw slcorners::validation_error("unknown chart action: " + action);
}

int run_limit(const std::string& k1_path, const std::string& h_path,
              const std::string& k2_path) {
  const Eigen::MatrixXd k1 = matrix_from_file(k1_path);
  const Eigen::MatrixXd hm = matrix_from_file(h_path);
  const Eigen::MatrixXd k2 = matrix_from_file(k2_path);
  const slcorners::roots::CartanVector h{Eigen::VectorXd(hm.diagonal())};
  const auto limit = slcorners::chart::curve_limit(k1, h, k2);
  emit(slcorners::io::face_limit_json(limit));
  return 0;
}

int run_faces(int n, bool as_json) {
  const auto faces = slcorners::faces::enumerate_faces(n);
  if (as_json) {
    json arr = json::array();
    for (const auto& f : faces) arr.push_back(slcorners::io::face_json(f));
    emit(arr);
    return 0;
  }
  for (const auto& f : faces) {
    std::cout << "S={";
    for (std::size_t i = 0; i < f.subset.size(); ++i)
      std::cout << (i ? "," : "") << f.subset[i];
    std::cout << "} blocks=(";
    for (std::size_t i = 0; i < f.block_sizes.size(); ++i)
      std::cout << (i ? "," : "") << f.block_sizes[i];
    std::cout << ") codim=" << f.codim << " dim_flag=" << f.dim_flag
              << " dim_levi=" << f.dim_levi << " dim_face=" << f.dim_face << "\n";
  }
  return 0;
}

int run_verify(const std::string& what, int n, int samples, std::uint64_t seed, bool as_json) {
  using slcorners::verify::AxiomReport;
  if (what == "haar") {
    const auto fits = slcorners::verify::haar_report(n, seed);
    bool ok = true;
    json arr = json::array();
    const auto datum = slcorners::roots::build_root_datum(n);
    for (std::size_t k = 0; k < fits.size(); ++k) {
      const double target = -static_cast<double>(datum.sigma[k]);
      const bool fit_ok = std::abs(fits[k].slope - target) <= 0.02 * std::abs(target);
      ok = ok && fit_ok;
      json entry = slcorners::io::slope_fit_json(fits[k]);
      entry["expected_slope"] = target;
      entry["ok"] = fit_ok;
      arr.push_back(std::move(entry));
      if (!as_json)
        std::cout << "break " << k + 1 << ": slope " << fits[k].slope << " expected " << target
                  << (fit_ok ? "  ok" : "  FAIL") << "\n";
    }
    if (as_json) emit(arr);
    return ok ? 0 : kExitVerification;
  }
  if (what == "brackets") {
    const bool ok = slcorners::verify::bracket_filtration_check(n);
    if (as_json) {
      json doc;
      doc["n"] = n;
      doc["passed"] = ok;
      emit(doc);
    } else {
      std::cout << "bracket filtration n=" << n << (ok ? ": ok" : ": FAIL") << "\n";
    }
    return ok ? 0 : kExitVerification;
  }

  AxiomReport report;
  if (what == "inversion") {
    report = slcorners::verify::inversion_diffeo_check(n, samples, seed);
  } else if (what == "bnormal") {
    report = slcorners::verify::isotropy_report(n, seed);
  } else if (what == "rank") {
    report = slcorners::verify::transitivity_report(n, samples, seed);
  } else if (what == "minimality") {
    report = slcorners::verify::minimality_report(n, std::max(1, samples / 10), seed);
  } else {
    throw slcorners::validation_error("unknown verify target: " + what);
  }
  if (as_json) {
    emit(slcorners::io::axiom_report_json(report));
  } else {
    std::cout << slcorners::verify::axiom_name(report.axiom)
              << (report.passed ? " passed" : " FAILED") << " (worst case "
              << report.worst_case << ")\n";
    for (const auto& rec : report.details)
      if (!rec.ok) std::cout << "  FAIL " << rec.label << " value " << rec.value << "\n";
  }
  return report.passed ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"boundary charts and verification for the corner compactification of SL(n,R)"};
  app.require_subcommand(1);

  int n = 2;
  bool as_json = false;
  std::uint64_t seed = 1;
  int samples = 100;
  double eps_break = slcorners::chart::kDefaultEpsBreak;
  double tol = 1e-8;
  std::string mode, subset_text, action, what;
  std::string k1_path, h_path, k2_path;

  auto* roots_cmd = app.add_subcommand("roots", "type A root datum");
  roots_cmd->add_option("--n", n, "rank plus one")->required();
  roots_cmd->add_flag("--json", as_json, "structured output");

  auto* decompose_cmd =
      app.add_subcommand("decompose", "factor a matrix document from stdin");
  decompose_cmd->add_option("--mode", mode, "kak|iwasawa|polar|horospherical")->required();
  auto* subset_opt = decompose_cmd->add_option("--subset", subset_text,
                                               "node subset S, e.g. \"1,3\" (empty for {})");
  decompose_cmd->add_option("--tol", tol, "residual limit (exit 3 beyond it)");

  auto* chart_cmd = app.add_subcommand("chart", "boundary chart maps on stdin documents");
  chart_cmd->add_option("action", action, "decompose|reconstruct|invert")->required();
  chart_cmd->add_option("--eps-break", eps_break, "cluster break threshold");

  auto* limit_cmd = app.add_subcommand("limit", "face limit of a chamber ray");
  limit_cmd->add_option("--k1", k1_path, "matrix document file")->required();
  limit_cmd->add_option("--H", h_path, "diagonal matrix document file")->required();
  limit_cmd->add_option("--k2", k2_path, "matrix document file")->required();

  auto* faces_cmd = app.add_subcommand("faces", "enumerate boundary faces");
  faces_cmd->add_option("--n", n, "rank plus one")->required();
  faces_cmd->add_flag("--json", as_json, "structured output");

  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("target", what, "haar|inversion|bnormal|rank|minimality|brackets")
      ->required();
  verify_cmd->add_option("--n", n, "rank plus one");
  verify_cmd->add_option("--samples", samples, "sample count");
  verify_cmd->add_option("--seed", seed, "random seed");
  verify_cmd->add_flag("--json", as_json, "structured output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_name() == "CallForHelp" ? 0 : kExitValidation;
  }

  try {
    if (roots_cmd->parsed()) return run_roots(n, as_json);
    if (decompose_cmd->parsed())
      return run_decompose(mode, subset_opt->count() > 0, subset_text, tol);
    if (chart_cmd->parsed()) return run_chart(action, eps_break);
    if (limit_cmd->parsed()) return run_limit(k1_path, h_path, k2_path);
    if (faces_cmd->parsed()) return run_faces(n, as_json);
    if (verify_cmd->parsed()) return run_verify(what, n, samples, seed, as_json);
  } catch (const slcorners::validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const slcorners::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
