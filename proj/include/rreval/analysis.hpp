#pragma once

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rreval/dataset.hpp"
#include "rreval/metrics.hpp"

// Correlation of retrieval measures with judge grades over segmented sample
// populations, and the matrices the reports are built from.
namespace rreval::analysis {

enum class Method { Spearman, Pearson, KendallTauB, KendallTauC };

enum class Measure { Precision, Recall, F, Fe, T, Tu, Ndcg };

// Short tags used in file names and report cells ("spearman", "F", "nDCG"...).
std::string method_label(Method method);
std::string measure_label(Measure measure);
std::optional<Method> parse_method(const std::string& label);

// True for the measures that take the alpha weight.
bool measure_uses_alpha(Measure measure);

// Correlation coefficient of two equal-length series, clamped to [-1, 1].
// Spearman uses average ranks for ties; the Kendall variants count tied pairs
// (tau-b discounts single-sided ties, tau-c corrects for the smaller number
// of distinct values). Throws UndefinedCorrelation when either series is
// constant, InvalidInput on shape problems.
double correlate(Method method, std::span<const double> x, std::span<const double> y);

// K/Np bucket, stored in integer hundredths so both rounding modes share a
// representation; one-decimal rounding always lands on whole tenths.
struct RatioBucket {
  int hundredths = 0;

  double value() const { return hundredths / 100.0; }
  std::string label() const;

  auto operator<=>(const RatioBucket&) const = default;
};

enum class RoundingMode {
  OneDecimal,          // K/Np rounded to one decimal place (the default)
  OneSignificantDigit  // K/Np rounded to one significant digit
};

// Bucket of the ratio k/np under the given rounding; halves round away from
// zero. Throws InvalidInput when k < 1 or np < 1.
RatioBucket ratio_bucket(int k, int np, RoundingMode mode = RoundingMode::OneDecimal);

// Coarse cutoff-vs-pool slices: Narrow means K < Np (the cutoff cannot hold
// the whole positive pool), Wide means K >= Np.
enum class Width { Narrow, Wide };

// A population of graded samples: one subset, one embedding, and either a
// ratio bucket or a width slice.
struct SegmentKey {
  std::string subset;
  std::string embedding;
  std::variant<RatioBucket, Width> slice;

  std::string label() const;  // e.g. "A/AM/1.7", "A/AM/narrow"

  auto operator<=>(const SegmentKey&) const = default;
};

// A graded sample joined with its analysis context: the subset tag derived
// from the id and, when the parent ranking is available, the top-2K relevance
// window the estimated-F measure needs.
struct AnalysisSample {
  const dataset::GradedSample* graded = nullptr;
  std::string subset;
  std::optional<std::vector<int>> labels_top_2k;
};

// Joins graded samples with their parent rankings (matched on id, embedding,
// and pool sizes). ranked may be null; with it, every graded sample must
// find its parent or CrossLinkError is thrown.
std::vector<AnalysisSample> join_samples(const std::vector<dataset::GradedSample>& graded,
                                         const std::vector<dataset::RankedSample>* ranked);

// The top-K selection outcome of a joined sample. need_full_window demands
// the top-2K window and throws InvalidInput when the sample lacks one.
metrics::TopKOutcome outcome_of(const AnalysisSample& sample, bool need_full_window);

// Partitions samples into ratio-bucket segments and width segments; every
// sample lands in exactly one of each. Segments smaller than min_count are
// dropped from both families.
using SegmentMap = std::map<SegmentKey, std::vector<const AnalysisSample*>>;
SegmentMap segment(std::span<const AnalysisSample> samples, int min_count,
                   RoundingMode rounding = RoundingMode::OneDecimal);

// Evaluates one measure over samples and pairs it with the grades. alpha must
// be present exactly for the alpha-parameterized measures; ndcg_mode and the
// per-sample pool counts feed the discounted-gain measure.
std::pair<std::vector<double>, std::vector<double>> measure_series(
    std::span<const AnalysisSample* const> samples, Measure measure,
    std::optional<metrics::Alpha> alpha,
    metrics::NdcgMode ndcg_mode = metrics::NdcgMode::ObservedIdeal);

struct CorrelationResult {
  SegmentKey segment;
  Measure measure = Measure::F;
  Method method = Method::Spearman;
  std::optional<double> alpha_star;  // present only for alpha-parameterized measures
  double coefficient = 0.0;
  int n = 0;
};

// Sweeps the alpha grid in ascending order and keeps the alpha with the
// largest coefficient; earlier grid points win ties. Grid points where the
// coefficient is undefined are skipped; if all are, UndefinedCorrelation
// propagates.
CorrelationResult alpha_max_correlation(std::span<const AnalysisSample* const> samples,
                                        Measure measure, Method method,
                                        std::span<const metrics::Alpha> grid,
                                        metrics::NdcgMode ndcg_mode, SegmentKey segment);

// Correlation of one measure with the grades for one segment: alpha-swept for
// the alpha measures, direct otherwise. Returns nullopt when undefined.
std::optional<CorrelationResult> segment_correlation(
    std::span<const AnalysisSample* const> samples, Measure measure, Method method,
    std::span<const metrics::Alpha> grid, metrics::NdcgMode ndcg_mode, SegmentKey segment);

// embedding-by-bucket matrix of either scalar cells or fixed-length component
// vectors (grade distributions); absent cells stay empty.
struct HeatmapMatrix {
  std::string statistic;
  std::vector<std::string> row_labels;
  std::vector<RatioBucket> col_labels;
  std::vector<std::string> cell_components;  // empty for scalar cells
  std::vector<std::vector<std::optional<std::vector<double>>>> cells;
};

// Per (embedding, bucket) cell: the relative frequencies of grades 1..5,
// summing to 1. Cells with no samples are omitted.
HeatmapMatrix grade_distribution(std::span<const AnalysisSample* const> samples,
                                 RoundingMode rounding = RoundingMode::OneDecimal);

// Cell-wise difference a - b of two coefficient sets over ratio-bucket
// segments. Both sets must hold one method and one measure each, with
// identical segment keys; otherwise AlignmentError.
HeatmapMatrix correlation_difference(std::span<const CorrelationResult> a,
                                     std::span<const CorrelationResult> b);

}  // namespace rreval::analysis
