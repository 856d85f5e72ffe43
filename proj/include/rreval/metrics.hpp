#pragma once

#include <optional>
#include <span>
#include <vector>

namespace rreval::metrics {

// Weight trading precision against recall (equivalently, positives against
// negatives). Valid values lie in [0, 1]; construction rejects anything else.
class Alpha {
 public:
  explicit Alpha(double value);

  double value() const { return value_; }

 private:
  double value_;
};

// Maps the beta of the recall-weighted F parametrization onto the equivalent
// alpha weight: beta = 1 means alpha = 1/2, larger beta favours recall.
Alpha alpha_from_beta(double beta);

// Inverse of alpha_from_beta; undefined at alpha = 0.
double beta_squared(Alpha alpha);

// How the ideal ordering used to normalize DCG is formed.
enum class NdcgMode {
  // Sort the observed labels descending; needs no pool-level counts.
  ObservedIdeal,
  // Ideal list holds min(total_positives, list length) leading ones; requires
  // the pool's positive count.
  CorpusIdeal,
};

// Binary relevance outcome of one top-K selection over a candidate pool of
// total_candidates texts of which total_positives are relevant. labels_top_k
// lists the top K relevance flags in rank order; labels_top_2k, when known,
// extends it to the window of length min(2K, total_candidates) used by the
// estimated-recall variant of F.
struct TopKOutcome {
  int k = 0;
  std::vector<int> labels_top_k;
  std::optional<std::vector<int>> labels_top_2k;
  int positives_in_k = 0;
  int negatives_in_k = 0;
  int total_positives = 0;
  int total_candidates = 0;

  // Builds an outcome from the top-K labels alone (no 2K window).
  static TopKOutcome from_labels(std::vector<int> labels_top_k, int total_positives,
                                 int total_candidates);

  // Builds an outcome from the full window; the top-K labels are its first k
  // entries and the window length must equal min(2k, total_candidates).
  static TopKOutcome from_window(std::vector<int> labels_top_2k, int k, int total_positives,
                                 int total_candidates);

  // Throws InvalidInput when any field relation is broken.
  void check() const;
};

// Fraction of the top K that is relevant.
double precision(const TopKOutcome& outcome);

// Fraction of the pool's relevant texts that made the top K.
double recall(const TopKOutcome& outcome);

// Weighted harmonic mean of precision and recall, computed directly from the
// counts: positives_in_k / (alpha * k + (1 - alpha) * total_positives).
// Returns 0 when nothing relevant made the top K.
double f_measure(Alpha alpha, const TopKOutcome& outcome);

// Same measure computed from precision and recall values; both must be
// positive for the harmonic form to exist.
double f_from_pr(Alpha alpha, double precision, double recall);

// F with the pool's positive count replaced by the positives observed in the
// top-2K window, for settings where the pool count is unknown.
double f_estimated(Alpha alpha, const TopKOutcome& outcome);

// Linear trade-off between the relevant and irrelevant texts in the top K,
// with the irrelevant count normalized by K:
// (1 - alpha) * positives_in_k - alpha * negatives_in_k / k.
double t_measure(Alpha alpha, const TopKOutcome& outcome);

// Unnormalized variant: (1 - alpha) * positives_in_k - alpha * negatives_in_k.
double t_unnormalized(Alpha alpha, const TopKOutcome& outcome);

// Position-discounted gain of a binary relevance list; position i (1-based)
// contributes labels[i] / log2(i + 1).
double dcg(std::span<const int> labels);

// dcg normalized by the ideal ordering's dcg; 0 when the ideal gain is 0
// (all-irrelevant list under ObservedIdeal).
double ndcg(std::span<const int> labels, NdcgMode mode = NdcgMode::ObservedIdeal,
            std::optional<int> total_positives = std::nullopt);

}  // namespace rreval::metrics
