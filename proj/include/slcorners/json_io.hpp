#pragma once

// JSON schemas for the CLI: matrix and chart documents, faces, limits and
// verification reports.  Field order is fixed and numbers round-trip
// exactly, so identical seeds give byte-identical output.

#include <json.hpp>

#include <string>

#include "slcorners/boundary_chart.hpp"
#include "slcorners/decompositions.hpp"
#include "slcorners/face_lattice.hpp"
#include "slcorners/verification.hpp"

namespace slcorners::io {

using json = nlohmann::ordered_json;

json matrix_rows(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_rows(const json& rows);

// MatrixDocument: { "n": ..., "rows": [[...], ...], "tag": "sl"? }
json matrix_document(const Eigen::MatrixXd& m, const std::string& tag = {});
Eigen::MatrixXd parse_matrix_document(const json& doc);

json flag_json(const chart::PartialFlag& flag);
chart::PartialFlag flag_from_json(const json& doc);

// ChartDocument: { n, breaks, tau, left_flag, right_flag, blocks, scale }
json chart_document(const chart::BoundaryChartPoint& p);
chart::BoundaryChartPoint parse_chart_document(const json& doc);

json face_json(const faces::FaceDescriptor& face);
json face_limit_json(const chart::FaceLimit& limit);

json slope_fit_json(const verify::SlopeFit& fit);
json axiom_report_json(const verify::AxiomReport& report);

json parse_stream(std::istream& in);

}  // namespace slcorners::io
