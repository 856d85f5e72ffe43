#include "rreval/ranker.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <thread>

#include "rreval/errors.hpp"
#include "rreval/http.hpp"
#include "rreval/jsonl.hpp"

namespace rreval::ranker {

void EmbeddedSample::check() const {
  if (q_vec.empty()) throw InvalidInput("sample \"" + id + "\": empty query vector");
  if (cand_vecs.empty()) throw InvalidInput("sample \"" + id + "\": empty candidate pool");
  for (const auto& v : cand_vecs) {
    if (v.size() != q_vec.size()) {
      throw InvalidInput("sample \"" + id + "\": candidate dimension " +
                         std::to_string(v.size()) + " != query dimension " +
                         std::to_string(q_vec.size()));
    }
  }
  if (np < 0 || static_cast<std::size_t>(np) >= cand_vecs.size()) {
    throw InvalidInput("sample \"" + id + "\": positive count outside the candidate pool");
  }
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw InvalidInput("cosine of vectors with dimensions " + std::to_string(u.size()) +
                       " and " + std::to_string(v.size()));
  }
  if (u.empty()) throw InvalidInput("cosine of empty vectors");
  double dot = 0.0;
  double nu = 0.0;
  double nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu <= 0.0 || nv <= 0.0) throw InvalidInput("cosine of a zero-norm vector");
  return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), -1.0, 1.0);
}

std::vector<int> rank_by_cosine(std::span<const double> q,
                                const std::vector<std::vector<double>>& cands) {
  std::vector<double> sims;
  sims.reserve(cands.size());
  for (const auto& c : cands) sims.push_back(cosine(q, c));
  std::vector<int> order(cands.size());
  std::iota(order.begin(), order.end(), 0);
  // Stable sort keeps ascending input order among equal similarities.
  std::stable_sort(order.begin(), order.end(),
                   [&sims](int a, int b) { return sims[a] > sims[b]; });
  return order;
}

std::vector<int> rank_candidates(const EmbeddedSample& s) {
  s.check();
  return rank_by_cosine(s.q_vec, s.cand_vecs);
}

PrCurve pr_curve(std::span<const int> rank, int np, std::span<const int> ks) {
  if (np < 1) throw InvalidInput("precision/recall curve needs at least one pool positive");
  for (int k : ks) {
    if (k < 1 || static_cast<std::size_t>(k) > rank.size()) {
      throw InvalidInput("cutoff " + std::to_string(k) + " outside [1, " +
                         std::to_string(rank.size()) + "]");
    }
  }
  if (!std::is_sorted(ks.begin(), ks.end())) {
    throw InvalidInput("cutoffs must be sorted ascending");
  }
  PrCurve curve;
  curve.precisions.reserve(ks.size());
  curve.recalls.reserve(ks.size());
  int positives = 0;
  std::size_t next = 0;
  for (int k : ks) {
    while (next < static_cast<std::size_t>(k)) {
      if (rank[next] < np) ++positives;
      ++next;
    }
    curve.precisions.push_back(static_cast<double>(positives) / k);
    curve.recalls.push_back(static_cast<double>(positives) / np);
  }
  return curve;
}

std::vector<EmbeddedSample> load_vectors(std::istream& in) {
  std::vector<EmbeddedSample> out;
  jsonl::for_each_object(in, [&](std::size_t line, jsonl::json&& obj) {
    EmbeddedSample s;
    s.id = jsonl::get_string(obj, "id", line);
    s.e = jsonl::get_string(obj, "E", line);
    s.q_vec = jsonl::get_number_array(obj, "q_vec", line);
    auto p_vecs = jsonl::get_number_matrix(obj, "p_vecs", line);
    auto n_vecs = jsonl::get_number_matrix(obj, "n_vecs", line);
    s.np = static_cast<int>(p_vecs.size());
    s.cand_vecs = std::move(p_vecs);
    s.cand_vecs.insert(s.cand_vecs.end(), std::make_move_iterator(n_vecs.begin()),
                       std::make_move_iterator(n_vecs.end()));
    out.push_back(std::move(s));
  });
  return out;
}

dataset::RankedSample make_ranked(const EmbeddedSample& s, std::span<const int> cutoffs) {
  const int nc = static_cast<int>(s.cand_vecs.size());
  std::vector<int> ks;
  for (int k : cutoffs) {
    if (k >= 1 && k <= nc) ks.push_back(k);
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());

  dataset::RankedSample out;
  out.id = s.id;
  out.e = s.e;
  out.nc = nc;
  out.np = s.np;
  out.rank = rank_candidates(s);
  PrCurve curve = pr_curve(out.rank, out.np, ks);
  out.ks = std::move(ks);
  out.ps = std::move(curve.precisions);
  out.rs = std::move(curve.recalls);
  return out;
}

EmbeddingClient::EmbeddingClient(EmbeddingServiceConfig config) : config_(std::move(config)) {
  if (config_.endpoint_url.empty()) throw InvalidInput("embedding service URL is empty");
  if (config_.max_attempts < 1) throw InvalidInput("embedding client needs max_attempts >= 1");
  if (!config_.api_key_env.empty()) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (key == nullptr) {
      throw DeliveryError("environment variable \"" + config_.api_key_env +
                          "\" named for the embedding service key is not set");
    }
    api_key_ = key;
  }
}

std::vector<std::vector<double>> EmbeddingClient::embed(
    std::span<const std::string> texts) const {
  if (texts.empty()) throw InvalidInput("embedding request without texts");
  nlohmann::json request = {{"input", std::vector<std::string>(texts.begin(), texts.end())}};
  if (!config_.model.empty()) request["model"] = config_.model;
  std::vector<std::pair<std::string, std::string>> headers;
  if (!api_key_.empty()) headers.emplace_back("Authorization", "Bearer " + api_key_);

  std::string last_error;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(config_.backoff_base * (1LL << (attempt - 2)));
    }
    try {
      http::Response resp = http::post_json(config_.endpoint_url, request.dump(), headers);
      if (resp.status != 200) {
        last_error = "HTTP " + std::to_string(resp.status);
        continue;
      }
      nlohmann::json body = nlohmann::json::parse(resp.body, nullptr, false);
      if (body.is_discarded() || !body.contains("data") || !body["data"].is_array() ||
          body["data"].size() != texts.size()) {
        throw DeliveryError("embedding service returned a malformed body");
      }
      std::vector<std::vector<double>> vectors;
      vectors.reserve(texts.size());
      for (const auto& item : body["data"]) {
        if (!item.is_object() || !item.contains("embedding") || !item["embedding"].is_array()) {
          throw DeliveryError("embedding service returned a malformed body");
        }
        vectors.push_back(item["embedding"].get<std::vector<double>>());
      }
      return vectors;
    } catch (const DeliveryError& e) {
      last_error = e.what();
      if (std::string(e.what()).find("malformed body") != std::string::npos) throw;
    }
  }
  throw DeliveryError("no embedding response after " + std::to_string(config_.max_attempts) +
                      " attempts: " + last_error);
}

}  // namespace rreval::ranker
