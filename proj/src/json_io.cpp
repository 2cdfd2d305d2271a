#include "slcorners/json_io.hpp"

#include <cmath>
#include <istream>

namespace slcorners::io {

namespace {

void fail_unless(bool ok, const std::string& message) {
  if (!ok) throw validation_error(message);
}

std::vector<int> int_vector(const json& arr, const std::string& what) {
  fail_unless(arr.is_array(), what + " must be an array");
  std::vector<int> out;
  for (const auto& v : arr) {
    fail_unless(v.is_number_integer(), what + " must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace

json parse_stream(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("invalid JSON input: ") + e.what());
  }
  return doc;
}

json matrix_rows(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_rows(const json& rows) {
  fail_unless(rows.is_array() && !rows.empty(), "rows must be a non-empty array");
  const int n = static_cast<int>(rows.size());
  Eigen::MatrixXd m(n, static_cast<int>(rows[0].size()));
  for (int i = 0; i < n; ++i) {
    fail_unless(rows[i].is_array() && static_cast<int>(rows[i].size()) == m.cols(),
                "rows must form a rectangular array");
    for (int j = 0; j < m.cols(); ++j) {
      fail_unless(rows[i][j].is_number(), "matrix entries must be numbers");
      m(i, j) = rows[i][j].get<double>();
      fail_unless(std::isfinite(m(i, j)), "matrix entries must be finite");
    }
  }
  return m;
}

json matrix_document(const Eigen::MatrixXd& m, const std::string& tag) {
  json doc;
  doc["n"] = m.rows();
  doc["rows"] = matrix_rows(m);
  if (!tag.empty()) doc["tag"] = tag;
  return doc;
}

Eigen::MatrixXd parse_matrix_document(const json& doc) {
  fail_unless(doc.is_object() && doc.contains("n") && doc.contains("rows"),
              "matrix document needs fields n and rows");
  const int n = doc.at("n").get<int>();
  fail_unless(n >= 1, "matrix document: n must be >= 1");
  const Eigen::MatrixXd m = matrix_from_rows(doc.at("rows"));
  fail_unless(m.rows() == n && m.cols() == n, "matrix document: rows must be n x n");
  if (doc.contains("tag") && doc.at("tag") == "sl")
    fail_unless(std::abs(m.determinant() - 1.0) <= 1e-6,
                "matrix document tagged sl must have determinant 1 within 1e-6");
  return m;
}

json flag_json(const chart::PartialFlag& flag) {
  json doc;
  doc["basis"] = matrix_rows(flag.basis);
  doc["breaks"] = flag.breaks;
  return doc;
}

chart::PartialFlag flag_from_json(const json& doc) {
  fail_unless(doc.is_object() && doc.contains("basis") && doc.contains("breaks"),
              "flag needs fields basis and breaks");
  return chart::PartialFlag(matrix_from_rows(doc.at("basis")),
                            int_vector(doc.at("breaks"), "flag breaks"));
}

json chart_document(const chart::BoundaryChartPoint& p) {
  json doc;
  doc["n"] = p.n;
  doc["breaks"] = p.breaks;
  json tau = json::array();
  for (int i = 0; i < p.tau.size(); ++i) tau.push_back(p.tau(i));
  doc["tau"] = std::move(tau);
  doc["left_flag"] = flag_json(p.left_flag);
  doc["right_flag"] = flag_json(p.right_flag);
  json blocks = json::array();
  for (const auto& b : p.blocks) blocks.push_back(matrix_rows(b));
  doc["blocks"] = std::move(blocks);
  doc["scale"] = p.scale;
  return doc;
}

chart::BoundaryChartPoint parse_chart_document(const json& doc) {
  fail_unless(doc.is_object(), "chart document must be an object");
  for (const char* field : {"n", "breaks", "tau", "left_flag", "right_flag", "blocks", "scale"})
    fail_unless(doc.contains(field), std::string("chart document missing field ") + field);
  chart::BoundaryChartPoint p;
  p.n = doc.at("n").get<int>();
  p.breaks = int_vector(doc.at("breaks"), "breaks");
  const auto& tau = doc.at("tau");
  fail_unless(tau.is_array(), "tau must be an array");
  p.tau = Eigen::VectorXd(static_cast<int>(tau.size()));
  for (int i = 0; i < p.tau.size(); ++i) p.tau(i) = tau[i].get<double>();
  p.left_flag = flag_from_json(doc.at("left_flag"));
  p.right_flag = flag_from_json(doc.at("right_flag"));
  for (const auto& b : doc.at("blocks")) p.blocks.push_back(matrix_from_rows(b));
  p.scale = doc.at("scale").get<double>();
  chart::validate_chart_point(p);
  return p;
}

json face_json(const faces::FaceDescriptor& face) {
  json doc;
  doc["n"] = face.n;
  doc["S"] = face.subset;
  doc["block_sizes"] = face.block_sizes;
  doc["codim"] = face.codim;
  doc["dim_flag"] = face.dim_flag;
  doc["dim_levi"] = face.dim_levi;
  doc["dim_face"] = face.dim_face;
  return doc;
}

json face_limit_json(const chart::FaceLimit& limit) {
  json doc;
  doc["face"] = face_json(limit.face);
  doc["left_flag"] = flag_json(limit.left_flag);
  doc["right_flag"] = flag_json(limit.right_flag);
  doc["fiber_representative"] = matrix_rows(limit.fiber_representative);
  return doc;
}

json slope_fit_json(const verify::SlopeFit& fit) {
  json doc;
  doc["parameter"] = fit.parameter;
  json samples = json::array();
  for (const auto& [x, y] : fit.samples) samples.push_back(json::array({x, y}));
  doc["samples"] = std::move(samples);
  doc["slope"] = fit.slope;
  doc["intercept"] = fit.intercept;
  doc["max_residual"] = fit.max_residual;
  return doc;
}

json axiom_report_json(const verify::AxiomReport& report) {
  json doc;
  doc["axiom"] = verify::axiom_name(report.axiom);
  doc["passed"] = report.passed;
  doc["worst_case"] = report.worst_case;
  doc["tolerance"] = report.tolerance;
  json details = json::array();
  for (const auto& rec : report.details) {
    json d;
    d["label"] = rec.label;
    d["value"] = rec.value;
    d["bound"] = rec.bound;
    d["violation"] = rec.violation;
    d["ok"] = rec.ok;
    details.push_back(std::move(d));
  }
  doc["details"] = std::move(details);
  return doc;
}

}  // namespace slcorners::io
