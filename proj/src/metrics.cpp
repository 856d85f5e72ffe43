#include "rreval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rreval/errors.hpp"

namespace rreval::metrics {

namespace {

// Validates that every entry is 0 or 1 and returns the number of ones.
int checked_label_sum(std::span<const int> labels) {
  int sum = 0;
  for (int v : labels) {
    if (v != 0 && v != 1) {
      throw InvalidInput("relevance labels must be 0 or 1, got " + std::to_string(v));
    }
    sum += v;
  }
  return sum;
}

}  // namespace

Alpha::Alpha(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InvalidInput("alpha must lie in [0, 1], got " + std::to_string(value));
  }
}

Alpha alpha_from_beta(double beta) {
  if (!(beta >= 0.0)) {
    throw InvalidInput("beta must be nonnegative, got " + std::to_string(beta));
  }
  return Alpha(1.0 / (1.0 + beta * beta));
}

double beta_squared(Alpha alpha) {
  if (alpha.value() <= 0.0) {
    throw InvalidInput("beta is undefined at alpha = 0");
  }
  return 1.0 / alpha.value() - 1.0;
}

TopKOutcome TopKOutcome::from_labels(std::vector<int> labels_top_k, int total_positives,
                                     int total_candidates) {
  TopKOutcome out;
  out.k = static_cast<int>(labels_top_k.size());
  out.positives_in_k = checked_label_sum(labels_top_k);
  out.negatives_in_k = out.k - out.positives_in_k;
  out.labels_top_k = std::move(labels_top_k);
  out.total_positives = total_positives;
  out.total_candidates = total_candidates;
  out.check();
  return out;
}

TopKOutcome TopKOutcome::from_window(std::vector<int> labels_top_2k, int k, int total_positives,
                                     int total_candidates) {
  if (k < 1 || static_cast<std::size_t>(k) > labels_top_2k.size()) {
    throw InvalidInput("top-K cutoff must lie within the label window");
  }
  TopKOutcome out;
  out.k = k;
  out.labels_top_k.assign(labels_top_2k.begin(), labels_top_2k.begin() + k);
  out.positives_in_k = checked_label_sum(out.labels_top_k);
  out.negatives_in_k = k - out.positives_in_k;
  out.labels_top_2k = std::move(labels_top_2k);
  out.total_positives = total_positives;
  out.total_candidates = total_candidates;
  out.check();
  return out;
}

void TopKOutcome::check() const {
  if (k < 1) throw InvalidInput("top-K cutoff must be at least 1");
  if (labels_top_k.size() != static_cast<std::size_t>(k)) {
    throw InvalidInput("top-K label list length must equal k");
  }
  const int n_p = checked_label_sum(labels_top_k);
  if (n_p != positives_in_k || k - n_p != negatives_in_k) {
    throw InvalidInput("positive/negative counts disagree with the top-K labels");
  }
  if (total_positives < 0 || total_positives > total_candidates) {
    throw InvalidInput("pool positive count must lie in [0, total_candidates]");
  }
  if (k > total_candidates) throw InvalidInput("top-K cutoff exceeds the candidate pool");
  if (positives_in_k > total_positives) {
    throw InvalidInput("more positives in the top K than in the pool");
  }
  if (labels_top_2k.has_value()) {
    const auto& window = *labels_top_2k;
    const std::size_t want =
        static_cast<std::size_t>(std::min(2LL * k, static_cast<long long>(total_candidates)));
    if (window.size() != want) {
      throw InvalidInput("top-2K window length must equal min(2K, total_candidates)");
    }
    if (!std::equal(labels_top_k.begin(), labels_top_k.end(), window.begin())) {
      throw InvalidInput("top-K labels must be a prefix of the top-2K window");
    }
    if (checked_label_sum(window) > total_positives) {
      throw InvalidInput("more positives in the top-2K window than in the pool");
    }
  }
}

double precision(const TopKOutcome& outcome) {
  if (outcome.k < 1) throw InvalidInput("precision is undefined at cutoff 0");
  return static_cast<double>(outcome.positives_in_k) / outcome.k;
}

double recall(const TopKOutcome& outcome) {
  if (outcome.total_positives < 1) {
    throw InvalidInput("recall is undefined for a pool without positives");
  }
  return static_cast<double>(outcome.positives_in_k) / outcome.total_positives;
}

double f_measure(Alpha alpha, const TopKOutcome& outcome) {
  if (outcome.k < 1) throw InvalidInput("F is undefined at cutoff 0");
  if (outcome.total_positives < 1) {
    throw InvalidInput("F is undefined for a pool without positives");
  }
  const double denom =
      alpha.value() * outcome.k + (1.0 - alpha.value()) * outcome.total_positives;
  return outcome.positives_in_k / denom;
}

double f_from_pr(Alpha alpha, double precision, double recall) {
  if (!(precision > 0.0) || !(recall > 0.0)) {
    throw InvalidInput("the harmonic form of F needs positive precision and recall");
  }
  return 1.0 / (alpha.value() / precision + (1.0 - alpha.value()) / recall);
}

double f_estimated(Alpha alpha, const TopKOutcome& outcome) {
  if (!outcome.labels_top_2k.has_value()) {
    throw InvalidInput("estimated F needs the top-2K label window");
  }
  if (outcome.positives_in_k == 0) return 0.0;
  const int estimated_positives = checked_label_sum(*outcome.labels_top_2k);
  const double denom =
      alpha.value() * outcome.k + (1.0 - alpha.value()) * estimated_positives;
  return outcome.positives_in_k / denom;
}

double t_measure(Alpha alpha, const TopKOutcome& outcome) {
  if (outcome.k < 1) throw InvalidInput("T is undefined at cutoff 0");
  return (1.0 - alpha.value()) * outcome.positives_in_k -
         alpha.value() * (static_cast<double>(outcome.negatives_in_k) / outcome.k);
}

double t_unnormalized(Alpha alpha, const TopKOutcome& outcome) {
  return (1.0 - alpha.value()) * outcome.positives_in_k -
         alpha.value() * outcome.negatives_in_k;
}

double dcg(std::span<const int> labels) {
  if (labels.empty()) throw InvalidInput("position-discounted gain of an empty list");
  checked_label_sum(labels);
  double sum = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    sum += labels[i] / std::log2(static_cast<double>(i) + 2.0);
  }
  return sum;
}

double ndcg(std::span<const int> labels, NdcgMode mode, std::optional<int> total_positives) {
  const double observed = dcg(labels);
  int leading_ones = 0;
  if (mode == NdcgMode::ObservedIdeal) {
    leading_ones = checked_label_sum(labels);
  } else {
    if (!total_positives.has_value()) {
      throw InvalidInput("the corpus-ideal normalization needs the pool's positive count");
    }
    if (*total_positives < 1) {
      throw InvalidInput("the corpus-ideal normalization needs at least one pool positive");
    }
    if (checked_label_sum(labels) > *total_positives) {
      throw InvalidInput("more positive labels than the stated pool total");
    }
    leading_ones = std::min(*total_positives, static_cast<int>(labels.size()));
  }
  double ideal = 0.0;
  for (int i = 0; i < leading_ones; ++i) {
    ideal += 1.0 / std::log2(static_cast<double>(i) + 2.0);
  }
  if (ideal <= 0.0) return 0.0;
  return observed / ideal;
}

}  // namespace rreval::metrics
