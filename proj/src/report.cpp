#include "rreval/report.hpp"

#include <ostream>

#include "rreval/errors.hpp"

namespace rreval::report {

using analysis::CorrelationResult;
using analysis::HeatmapMatrix;
using analysis::RatioBucket;
using analysis::SegmentKey;
using analysis::Width;
using nlohmann::json;

std::string number_text(double value) {
  return json(value).dump();
}

void write_matrix_csv(std::ostream& out, const HeatmapMatrix& matrix) {
  const bool has_components = !matrix.cell_components.empty();
  out << "embedding";
  if (has_components) out << ",grade";
  for (const RatioBucket& col : matrix.col_labels) out << ',' << col.label();
  out << '\n';
  for (std::size_t row = 0; row < matrix.row_labels.size(); ++row) {
    const auto& cells = matrix.cells.at(row);
    if (!has_components) {
      out << matrix.row_labels[row];
      for (const auto& cell : cells) {
        out << ',';
        if (cell.has_value()) out << number_text(cell->at(0));
      }
      out << '\n';
      continue;
    }
    for (std::size_t comp = 0; comp < matrix.cell_components.size(); ++comp) {
      out << matrix.row_labels[row] << ',' << matrix.cell_components[comp];
      for (const auto& cell : cells) {
        out << ',';
        if (cell.has_value()) out << number_text(cell->at(comp));
      }
      out << '\n';
    }
  }
}

std::string slice_text(const SegmentKey& key) {
  if (std::holds_alternative<RatioBucket>(key.slice)) {
    return std::get<RatioBucket>(key.slice).label();
  }
  return std::get<Width>(key.slice) == Width::Narrow ? "narrow" : "wide";
}

json to_json(const SegmentKey& key) {
  json j = {{"subset", key.subset}, {"embedding", key.embedding}};
  if (std::holds_alternative<RatioBucket>(key.slice)) {
    j["slice"] = {{"kind", "ratio"}, {"value", std::get<RatioBucket>(key.slice).value()},
                  {"label", std::get<RatioBucket>(key.slice).label()}};
  } else {
    j["slice"] = {{"kind", "width"}, {"label", slice_text(key)}};
  }
  return j;
}

json to_json(const CorrelationResult& result) {
  json j = {{"segment", to_json(result.segment)},
            {"measure", analysis::measure_label(result.measure)},
            {"method", analysis::method_label(result.method)},
            {"coefficient", result.coefficient},
            {"n", result.n}};
  if (result.alpha_star.has_value()) j["alpha_star"] = *result.alpha_star;
  return j;
}

json results_json(std::span<const CorrelationResult> results) {
  json list = json::array();
  for (const CorrelationResult& r : results) list.push_back(to_json(r));
  return list;
}

void write_width_summary_csv(std::ostream& out,
                             std::span<const CorrelationResult> results) {
  out << "method,subset,slice,embedding,measure,alpha_star,coefficient,n\n";
  for (const CorrelationResult& r : results) {
    out << analysis::method_label(r.method) << ',' << r.segment.subset << ','
        << slice_text(r.segment) << ',' << r.segment.embedding << ','
        << analysis::measure_label(r.measure) << ',';
    if (r.alpha_star.has_value()) out << number_text(*r.alpha_star);
    out << ',' << number_text(r.coefficient) << ',' << r.n << '\n';
  }
}

}  // namespace rreval::report
