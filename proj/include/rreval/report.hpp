#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "json.hpp"
#include "rreval/analysis.hpp"

// Serialization of analysis outputs. Everything here is deterministic:
// iteration orders are sorted and numbers use shortest round-trip formatting,
// so rerunning a pipeline reproduces files byte for byte.
namespace rreval::report {

// Shortest decimal text that parses back to exactly the same double.
std::string number_text(double value);

// Matrix as CSV: scalar matrices get one row per embedding; component
// matrices (grade distributions) one row per embedding x component. Absent
// cells stay empty.
void write_matrix_csv(std::ostream& out, const analysis::HeatmapMatrix& matrix);

// "narrow" / "wide" / bucket label of a segment's slice.
std::string slice_text(const analysis::SegmentKey& key);

nlohmann::json to_json(const analysis::SegmentKey& key);
nlohmann::json to_json(const analysis::CorrelationResult& result);
nlohmann::json results_json(std::span<const analysis::CorrelationResult> results);

// Long-format CSV of width-slice correlations:
// method,subset,slice,embedding,measure,alpha_star,coefficient,n.
void write_width_summary_csv(std::ostream& out,
                             std::span<const analysis::CorrelationResult> results);

}  // namespace rreval::report
