#include "rreval/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>
#include <tuple>

#include "rreval/errors.hpp"

namespace rreval::analysis {

namespace {

using metrics::Alpha;
using metrics::NdcgMode;
using metrics::TopKOutcome;

bool all_equal(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

// Ranks 1..n with ties sharing their average rank.
std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size(), 0.0);
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) hold ranks i+1..j+1; everyone gets the mean.
    const double mean_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

double pearson_raw(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) throw UndefinedCorrelation("series is constant");
  return sxy / std::sqrt(sxx * syy);
}

// Prefix-sum counter over compressed values.
class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}

  void add(std::size_t i) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) ++tree_[i];
  }

  // Number of inserted values with index <= i.
  long long prefix(std::size_t i) const {
    long long sum = 0;
    for (++i; i > 0; i -= i & (~i + 1)) sum += tree_[i];
    return sum;
  }

 private:
  std::vector<long long> tree_;
};

struct KendallCounts {
  long long concordant = 0;
  long long discordant = 0;
  long long ties_x_only = 0;
  long long ties_y_only = 0;
  long long distinct_x = 0;
  long long distinct_y = 0;
};

// Counts pair classes in O(n log n): samples sorted by (x, y), then each
// group of equal x is compared against everything with strictly smaller x
// through a counter over compressed y values. Pairs tied in both series are
// in no class.
KendallCounts kendall_counts(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  std::vector<double> sorted_y(y.begin(), y.end());
  std::sort(sorted_y.begin(), sorted_y.end());
  sorted_y.erase(std::unique(sorted_y.begin(), sorted_y.end()), sorted_y.end());
  auto y_index = [&](double v) {
    return static_cast<std::size_t>(
        std::lower_bound(sorted_y.begin(), sorted_y.end(), v) - sorted_y.begin());
  };

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return x[a] != x[b] ? x[a] < x[b] : y[a] < y[b];
  });

  KendallCounts counts;
  counts.distinct_y = static_cast<long long>(sorted_y.size());
  Fenwick seen(sorted_y.size());
  long long inserted = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    ++counts.distinct_x;
    // Versus strictly smaller x: below, equal, above in y.
    for (std::size_t t = i; t <= j; ++t) {
      const std::size_t yi = y_index(y[order[t]]);
      const long long below = yi > 0 ? seen.prefix(yi - 1) : 0;
      const long long equal = seen.prefix(yi) - below;
      counts.concordant += below;
      counts.ties_y_only += equal;
      counts.discordant += inserted - below - equal;
    }
    // Within the equal-x group: tied in x, split by whether y ties too.
    const long long group = static_cast<long long>(j - i + 1);
    long long same_y_pairs = 0;
    std::size_t t = i;
    while (t <= j) {
      std::size_t u = t;
      while (u + 1 <= j && y[order[u + 1]] == y[order[t]]) ++u;
      const long long run = static_cast<long long>(u - t + 1);
      same_y_pairs += run * (run - 1) / 2;
      t = u + 1;
    }
    counts.ties_x_only += group * (group - 1) / 2 - same_y_pairs;
    for (std::size_t s = i; s <= j; ++s) seen.add(y_index(y[order[s]]));
    inserted += group;
    i = j + 1;
  }
  return counts;
}

}  // namespace

std::string method_label(Method method) {
  switch (method) {
    case Method::Spearman: return "spearman";
    case Method::Pearson: return "pearson";
    case Method::KendallTauB: return "kendall-b";
    case Method::KendallTauC: return "kendall-c";
  }
  throw InvalidInput("unknown correlation method");
}

std::string measure_label(Measure measure) {
  switch (measure) {
    case Measure::Precision: return "P";
    case Measure::Recall: return "R";
    case Measure::F: return "F";
    case Measure::Fe: return "Fe";
    case Measure::T: return "T";
    case Measure::Tu: return "Tu";
    case Measure::Ndcg: return "nDCG";
  }
  throw InvalidInput("unknown measure");
}

std::optional<Method> parse_method(const std::string& label) {
  if (label == "spearman") return Method::Spearman;
  if (label == "pearson") return Method::Pearson;
  if (label == "kendall-b") return Method::KendallTauB;
  if (label == "kendall-c") return Method::KendallTauC;
  return std::nullopt;
}

bool measure_uses_alpha(Measure measure) {
  switch (measure) {
    case Measure::F:
    case Measure::Fe:
    case Measure::T:
    case Measure::Tu:
      return true;
    default:
      return false;
  }
}

double correlate(Method method, std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidInput("correlation series lengths differ");
  if (x.size() < 2) throw InvalidInput("correlation needs at least two observations");
  if (all_equal(x) || all_equal(y)) throw UndefinedCorrelation("series is constant");

  double coefficient = 0.0;
  switch (method) {
    case Method::Pearson:
      coefficient = pearson_raw(x, y);
      break;
    case Method::Spearman: {
      const std::vector<double> rx = average_ranks(x);
      const std::vector<double> ry = average_ranks(y);
      coefficient = pearson_raw(rx, ry);
      break;
    }
    case Method::KendallTauB: {
      const KendallCounts c = kendall_counts(x, y);
      const double cd = static_cast<double>(c.concordant + c.discordant);
      const double denom = std::sqrt((cd + static_cast<double>(c.ties_x_only)) *
                                     (cd + static_cast<double>(c.ties_y_only)));
      coefficient = static_cast<double>(c.concordant - c.discordant) / denom;
      break;
    }
    case Method::KendallTauC: {
      const KendallCounts c = kendall_counts(x, y);
      const long long m = std::min(c.distinct_x, c.distinct_y);
      const double n = static_cast<double>(x.size());
      coefficient = 2.0 * static_cast<double>(m) *
                    static_cast<double>(c.concordant - c.discordant) /
                    (n * n * static_cast<double>(m - 1));
      break;
    }
  }
  return std::clamp(coefficient, -1.0, 1.0);
}

std::string RatioBucket::label() const {
  const bool negative = hundredths < 0;
  const int h = std::abs(hundredths);
  std::string text = negative ? "-" : "";
  text += std::to_string(h / 100);
  if (h % 10 == 0) {
    text += "." + std::to_string((h / 10) % 10);
  } else {
    text += "." + std::to_string((h / 10) % 10) + std::to_string(h % 10);
  }
  return text;
}

RatioBucket ratio_bucket(int k, int np, RoundingMode mode) {
  if (k < 1) throw InvalidInput("ratio bucket needs a cutoff of at least 1");
  if (np < 1) throw InvalidInput("ratio bucket needs at least one pool positive");
  const double ratio = static_cast<double>(k) / np;
  if (mode == RoundingMode::OneDecimal) {
    // std::round rounds halves away from zero; k/np is exact for true halves.
    return RatioBucket{static_cast<int>(std::lround(ratio * 10.0)) * 10};
  }
  const double exponent = std::floor(std::log10(ratio));
  const double scale = std::pow(10.0, exponent);
  const double rounded = std::round(ratio / scale) * scale;
  return RatioBucket{static_cast<int>(std::lround(rounded * 100.0))};
}

std::string SegmentKey::label() const {
  std::string slice_text;
  if (std::holds_alternative<RatioBucket>(slice)) {
    slice_text = std::get<RatioBucket>(slice).label();
  } else {
    slice_text = std::get<Width>(slice) == Width::Narrow ? "narrow" : "wide";
  }
  return subset + "/" + embedding + "/" + slice_text;
}

std::vector<AnalysisSample> join_samples(const std::vector<dataset::GradedSample>& graded,
                                         const std::vector<dataset::RankedSample>* ranked) {
  std::map<std::tuple<std::string, std::string, int, int>, const dataset::RankedSample*> parents;
  if (ranked != nullptr) {
    for (const auto& sr : *ranked) {
      parents[{sr.id, sr.e, sr.nc, sr.np}] = &sr;
    }
  }
  std::vector<AnalysisSample> out;
  out.reserve(graded.size());
  for (const auto& sg : graded) {
    AnalysisSample sample;
    sample.graded = &sg;
    sample.subset = dataset::subset_tag(sg.id);
    if (ranked != nullptr) {
      auto it = parents.find({sg.id, sg.e, sg.nc, sg.np});
      if (it == parents.end()) {
        throw CrossLinkError("graded sample (" + sg.id + ", " + sg.e +
                             ") has no parent ranking");
      }
      const dataset::RankedSample& sr = *it->second;
      const std::size_t window_len = std::min<std::size_t>(
          2 * static_cast<std::size_t>(sg.k), sr.rank.size());
      sample.labels_top_2k = dataset::labels_from_rank(
          std::span<const int>(sr.rank.data(), window_len), sr.np);
    }
    out.push_back(std::move(sample));
  }
  return out;
}

TopKOutcome outcome_of(const AnalysisSample& sample, bool need_full_window) {
  const dataset::GradedSample& g = *sample.graded;
  if (g.in_k.size() != static_cast<std::size_t>(g.k)) {
    throw InvalidInput("sample (" + g.id + ", " + g.e +
                       "): top-K label list length disagrees with K");
  }
  if (sample.labels_top_2k.has_value()) {
    return TopKOutcome::from_window(*sample.labels_top_2k, g.k, g.np, g.nc);
  }
  if (need_full_window) {
    throw InvalidInput("sample (" + g.id + ", " + g.e + ") lacks the top-2K label window");
  }
  return TopKOutcome::from_labels(g.in_k, g.np, g.nc);
}

SegmentMap segment(std::span<const AnalysisSample> samples, int min_count,
                   RoundingMode rounding) {
  if (min_count < 1) throw InvalidInput("min_count must be at least 1");
  SegmentMap out;
  for (const AnalysisSample& sample : samples) {
    const dataset::GradedSample& g = *sample.graded;
    const SegmentKey bucket_key{sample.subset, g.e, ratio_bucket(g.k, g.np, rounding)};
    const SegmentKey width_key{sample.subset, g.e,
                               g.k < g.np ? Width::Narrow : Width::Wide};
    out[bucket_key].push_back(&sample);
    out[width_key].push_back(&sample);
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.size() < static_cast<std::size_t>(min_count)) {
      it = out.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

std::pair<std::vector<double>, std::vector<double>> measure_series(
    std::span<const AnalysisSample* const> samples, Measure measure,
    std::optional<Alpha> alpha, NdcgMode ndcg_mode) {
  if (measure_uses_alpha(measure) != alpha.has_value()) {
    throw InvalidInput(measure_uses_alpha(measure)
                           ? "measure " + measure_label(measure) + " needs an alpha weight"
                           : "measure " + measure_label(measure) + " takes no alpha weight");
  }
  std::vector<double> values;
  std::vector<double> grades;
  values.reserve(samples.size());
  grades.reserve(samples.size());
  for (const AnalysisSample* sample : samples) {
    const TopKOutcome outcome = outcome_of(*sample, measure == Measure::Fe);
    double value = 0.0;
    switch (measure) {
      case Measure::Precision: value = metrics::precision(outcome); break;
      case Measure::Recall: value = metrics::recall(outcome); break;
      case Measure::F: value = metrics::f_measure(*alpha, outcome); break;
      case Measure::Fe: value = metrics::f_estimated(*alpha, outcome); break;
      case Measure::T: value = metrics::t_measure(*alpha, outcome); break;
      case Measure::Tu: value = metrics::t_unnormalized(*alpha, outcome); break;
      case Measure::Ndcg:
        value = metrics::ndcg(outcome.labels_top_k, ndcg_mode,
                              ndcg_mode == NdcgMode::CorpusIdeal
                                  ? std::optional<int>(outcome.total_positives)
                                  : std::nullopt);
        break;
    }
    values.push_back(value);
    grades.push_back(static_cast<double>(sample->graded->grade));
  }
  return {std::move(values), std::move(grades)};
}

CorrelationResult alpha_max_correlation(std::span<const AnalysisSample* const> samples,
                                        Measure measure, Method method,
                                        std::span<const Alpha> grid, NdcgMode ndcg_mode,
                                        SegmentKey segment) {
  if (!measure_uses_alpha(measure)) {
    throw InvalidInput("measure " + measure_label(measure) + " takes no alpha weight");
  }
  if (grid.empty()) throw InvalidInput("alpha grid is empty");
  std::optional<std::pair<double, double>> best;  // (alpha, coefficient)
  for (const Alpha& alpha : grid) {
    const auto [values, grades] = measure_series(samples, measure, alpha, ndcg_mode);
    double coefficient = 0.0;
    try {
      coefficient = correlate(method, values, grades);
    } catch (const UndefinedCorrelation&) {
      continue;
    }
    if (!best.has_value() || coefficient > best->second) {
      best = {alpha.value(), coefficient};
    }
  }
  if (!best.has_value()) {
    throw UndefinedCorrelation("coefficient undefined at every grid alpha for segment " +
                               segment.label());
  }
  CorrelationResult result;
  result.segment = std::move(segment);
  result.measure = measure;
  result.method = method;
  result.alpha_star = best->first;
  result.coefficient = best->second;
  result.n = static_cast<int>(samples.size());
  return result;
}

std::optional<CorrelationResult> segment_correlation(
    std::span<const AnalysisSample* const> samples, Measure measure, Method method,
    std::span<const Alpha> grid, NdcgMode ndcg_mode, SegmentKey segment) {
  if (samples.size() < 2) return std::nullopt;
  try {
    if (measure_uses_alpha(measure)) {
      return alpha_max_correlation(samples, measure, method, grid, ndcg_mode,
                                   std::move(segment));
    }
    const auto [values, grades] = measure_series(samples, measure, std::nullopt, ndcg_mode);
    CorrelationResult result;
    result.segment = std::move(segment);
    result.measure = measure;
    result.method = method;
    result.coefficient = correlate(method, values, grades);
    result.n = static_cast<int>(samples.size());
    return result;
  } catch (const UndefinedCorrelation&) {
    return std::nullopt;
  }
}

HeatmapMatrix grade_distribution(std::span<const AnalysisSample* const> samples,
                                 RoundingMode rounding) {
  std::map<std::pair<std::string, RatioBucket>, std::array<double, 5>> counts;
  for (const AnalysisSample* sample : samples) {
    const dataset::GradedSample& g = *sample->graded;
    if (g.grade < 1 || g.grade > 5) {
      throw InvalidInput("sample (" + g.id + ", " + g.e + "): grade outside 1..5");
    }
    ++counts[{g.e, ratio_bucket(g.k, g.np, rounding)}][static_cast<std::size_t>(g.grade - 1)];
  }
  HeatmapMatrix matrix;
  matrix.statistic = "grade-distribution";
  matrix.cell_components = {"1", "2", "3", "4", "5"};
  std::set<std::string> rows;
  std::set<RatioBucket> cols;
  for (const auto& [key, _] : counts) {
    rows.insert(key.first);
    cols.insert(key.second);
  }
  matrix.row_labels.assign(rows.begin(), rows.end());
  matrix.col_labels.assign(cols.begin(), cols.end());
  for (const std::string& row : matrix.row_labels) {
    auto& row_cells = matrix.cells.emplace_back();
    for (const RatioBucket& col : matrix.col_labels) {
      auto it = counts.find({row, col});
      if (it == counts.end()) {
        row_cells.emplace_back(std::nullopt);
        continue;
      }
      const double total = std::accumulate(it->second.begin(), it->second.end(), 0.0);
      std::vector<double> freq(it->second.begin(), it->second.end());
      for (double& f : freq) f /= total;
      row_cells.emplace_back(std::move(freq));
    }
  }
  return matrix;
}

HeatmapMatrix correlation_difference(std::span<const CorrelationResult> a,
                                     std::span<const CorrelationResult> b) {
  auto collect = [](std::span<const CorrelationResult> results, const char* side) {
    std::map<std::pair<std::string, RatioBucket>, double> cells;
    std::optional<Method> method;
    std::optional<Measure> measure;
    for (const CorrelationResult& r : results) {
      if (!std::holds_alternative<RatioBucket>(r.segment.slice)) {
        throw InvalidInput("difference matrices take ratio-bucket segments only");
      }
      if (method.has_value() && (*method != r.method || *measure != r.measure)) {
        throw InvalidInput(std::string("mixed methods or measures in difference operand ") +
                           side);
      }
      method = r.method;
      measure = r.measure;
      cells[{r.segment.embedding, std::get<RatioBucket>(r.segment.slice)}] = r.coefficient;
    }
    return std::make_tuple(cells, method, measure);
  };
  auto [cells_a, method_a, measure_a] = collect(a, "a");
  auto [cells_b, method_b, measure_b] = collect(b, "b");
  if (method_a.has_value() && method_b.has_value() && *method_a != *method_b) {
    throw AlignmentError("difference operands use different correlation methods");
  }
  for (const auto& [key, _] : cells_a) {
    if (cells_b.find(key) == cells_b.end()) {
      throw AlignmentError("segment " + key.first + "/" + key.second.label() +
                           " present in a but not in b");
    }
  }
  for (const auto& [key, _] : cells_b) {
    if (cells_a.find(key) == cells_a.end()) {
      throw AlignmentError("segment " + key.first + "/" + key.second.label() +
                           " present in b but not in a");
    }
  }

  HeatmapMatrix matrix;
  matrix.statistic =
      (measure_a.has_value() ? measure_label(*measure_a) : "?") + std::string("-") +
      (measure_b.has_value() ? measure_label(*measure_b) : "?") +
      (method_a.has_value() ? " (" + method_label(*method_a) + ")" : "");
  std::set<std::string> rows;
  std::set<RatioBucket> cols;
  for (const auto& [key, _] : cells_a) {
    rows.insert(key.first);
    cols.insert(key.second);
  }
  matrix.row_labels.assign(rows.begin(), rows.end());
  matrix.col_labels.assign(cols.begin(), cols.end());
  for (const std::string& row : matrix.row_labels) {
    auto& row_cells = matrix.cells.emplace_back();
    for (const RatioBucket& col : matrix.col_labels) {
      auto it = cells_a.find({row, col});
      if (it == cells_a.end()) {
        row_cells.emplace_back(std::nullopt);
        continue;
      }
      row_cells.emplace_back(std::vector<double>{it->second - cells_b.at({row, col})});
    }
  }
  return matrix;
}

}  // namespace rreval::analysis
