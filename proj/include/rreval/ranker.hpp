#pragma once

#include <chrono>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "rreval/dataset.hpp"

// Cosine-similarity ranking of embedded candidate pools. Vectors come from a
// JSON Lines file or from an embedding HTTP service; they are never computed
// in-process.
namespace rreval::ranker {

// One query vector with its candidate pool: the first np candidate vectors
// embed relevant texts, the rest irrelevant ones. e names the embedding.
struct EmbeddedSample {
  std::string id;
  std::string e;
  std::vector<double> q_vec;
  std::vector<std::vector<double>> cand_vecs;
  int np = 0;

  // Throws InvalidInput on empty pools, dimension mismatches, or an np
  // outside [0, candidate count).
  void check() const;
};

// Cosine similarity clamped to [-1, 1]. Throws InvalidInput on a dimension
// mismatch or a zero-norm vector.
double cosine(std::span<const double> u, std::span<const double> v);

// Indices of cands ordered by descending cosine similarity to q; equal
// similarities keep ascending index order.
std::vector<int> rank_by_cosine(std::span<const double> q,
                                const std::vector<std::vector<double>>& cands);

// rank_by_cosine over a sample's pool (checks the sample first).
std::vector<int> rank_candidates(const EmbeddedSample& s);

// Precision and recall of a ranking's prefixes at the given cutoffs.
struct PrCurve {
  std::vector<double> precisions;
  std::vector<double> recalls;
};
PrCurve pr_curve(std::span<const int> rank, int np, std::span<const int> ks);

// Reads embedded samples from JSON Lines records
// {"id", "E", "q_vec", "p_vecs", "n_vecs"}.
std::vector<EmbeddedSample> load_vectors(std::istream& in);

// Ranks a sample and evaluates precision/recall at the given cutoffs;
// cutoffs beyond the pool size are dropped, duplicates collapsed.
dataset::RankedSample make_ranked(const EmbeddedSample& s, std::span<const int> cutoffs);

// Client for an embeddings HTTP service speaking the common
// {"model", "input": [texts]} -> {"data": [{"embedding": [...]}]} dialect.
struct EmbeddingServiceConfig {
  std::string endpoint_url;
  std::string model;        // omitted from requests when empty
  std::string api_key_env;  // name of the env var holding the bearer token
  int max_attempts = 3;
  std::chrono::milliseconds backoff_base{250};
};

class EmbeddingClient {
 public:
  explicit EmbeddingClient(EmbeddingServiceConfig config);

  // One vector per input text, in order. Retries transport failures with
  // exponential backoff and throws DeliveryError when attempts run out.
  std::vector<std::vector<double>> embed(std::span<const std::string> texts) const;

 private:
  EmbeddingServiceConfig config_;
  std::string api_key_;
};

}  // namespace rreval::ranker
