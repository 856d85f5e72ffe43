#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

// The three-part evaluation dataset: query/text pools, per-embedding rankings
// over those pools, and per-cutoff graded retrieval outcomes. Each part is a
// JSON Lines file; records link through the sample id (plus embedding tag and
// pool sizes for the ranked and graded parts).
namespace rreval::dataset {

// One query with its pools of relevant ("p") and irrelevant ("n") texts.
// Sample ids start with a subset prefix such as "A" or "Hp-e"; c1/c2/q2 are
// optional source fields kept for round-tripping.
struct QueryTextsSample {
  std::string id;
  std::string q;
  std::vector<std::string> p;
  std::vector<std::string> n;
  std::optional<std::string> c1;
  std::optional<std::string> c2;
  std::optional<std::string> q2;
  nlohmann::json extra = nlohmann::json::object();
};

// One embedding's ranking of a candidate pool drawn from a query-texts sample:
// nc candidates of which the first np text-pool positives are relevant. rank
// is a permutation of [0, nc); ks lists the evaluated cutoffs with their
// precision (ps) and recall (rs) values.
struct RankedSample {
  std::string id;
  std::string e;
  int nc = 0;
  int np = 0;
  std::vector<int> ks;
  std::vector<double> ps;
  std::vector<double> rs;
  std::vector<int> rank;
  nlohmann::json extra = nlohmann::json::object();
};

// One graded retrieval outcome at a single cutoff k: the top-k slice of the
// parent ranking, its relevance flags, the two generated answers, and the
// 1-5 grade the judge assigned to the top-k answer.
struct GradedSample {
  std::string id;
  std::string e;
  int nc = 0;
  int np = 0;
  int k = 0;
  std::vector<int> rank;
  std::vector<int> in_k;
  std::string answer_ideal;
  std::string answer_topk;
  int grade = 0;
  double p = 0.0;
  double r = 0.0;
  nlohmann::json extra = nlohmann::json::object();
};

enum class Part { QueryTexts, Ranked, Graded };

// Loaders;  throw ParseError / SchemaError with 1-based line numbers.
std::vector<QueryTextsSample> load_query_texts(std::istream& in);
std::vector<RankedSample> load_ranked(std::istream& in);
std::vector<GradedSample> load_graded(std::istream& in);

// Serialization back to single JSON objects (unknown keys are preserved) and
// to JSON Lines streams.
nlohmann::json to_json(const QueryTextsSample& s);
nlohmann::json to_json(const RankedSample& s);
nlohmann::json to_json(const GradedSample& s);
void write_query_texts(std::ostream& out, std::span<const QueryTextsSample> samples);
void write_ranked(std::ostream& out, std::span<const RankedSample> samples);
void write_graded(std::ostream& out, std::span<const GradedSample> samples);

// Recognized sample-id prefixes, e.g. "A", "Hp-e", "N".
const std::vector<std::string>& known_id_prefixes();
bool id_prefix_known(const std::string& id);

// Subset tag of an id: the part before the first '-' ("Hp-e-3" -> "Hp").
std::string subset_tag(const std::string& id);

// Outcome of validating one sample: the names of the checks that failed.
struct ValidationReport {
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

// Per-sample checks. validate_ranked / validate_graded throw CrossLinkError
// when the two records do not describe the same sample; the *_local variants
// run only the checks that need no companion record.
ValidationReport validate_query_texts(const QueryTextsSample& sq);
ValidationReport validate_ranked_local(const RankedSample& sr);
ValidationReport validate_ranked(const RankedSample& sr, const QueryTextsSample& sq);
ValidationReport validate_graded_local(const GradedSample& sg);
ValidationReport validate_graded(const GradedSample& sg, const RankedSample& sr);

// Candidate texts in rank order: rank entry i selects positive text i when
// i < np and negative text i - np otherwise. Throws InvalidInput on an index
// that leaves the pools.
std::vector<std::string> ranked_texts(const RankedSample& sr, const QueryTextsSample& sq);

// Binary relevance flags for a rank slice: 1 where the entry is below np.
std::vector<int> labels_from_rank(std::span<const int> rank, int np);

}  // namespace rreval::dataset
