#include "rreval/dataset.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "rreval/errors.hpp"
#include "rreval/jsonl.hpp"

namespace rreval::dataset {

namespace {

using nlohmann::json;

// Copies obj minus the listed keys, keeping whatever else the producer wrote.
json leftover_keys(const json& obj, std::initializer_list<const char*> known) {
  json extra = obj;
  for (const char* key : known) extra.erase(key);
  return extra;
}

bool strictly_increasing(std::span<const int> values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) return false;
  }
  return true;
}

// True when every entry is a distinct integer in [0, nc).
bool entries_form_permutation(std::span<const int> rank, int nc) {
  std::set<int> seen;
  for (int v : rank) {
    if (v < 0 || v >= nc) return false;
    if (!seen.insert(v).second) return false;
  }
  return true;
}

}  // namespace

std::vector<QueryTextsSample> load_query_texts(std::istream& in) {
  std::vector<QueryTextsSample> out;
  jsonl::for_each_object(in, [&](std::size_t line, json&& obj) {
    QueryTextsSample s;
    s.id = jsonl::get_string(obj, "id", line);
    s.q = jsonl::get_string(obj, "q", line);
    s.p = jsonl::get_string_array(obj, "p", line);
    s.n = jsonl::get_string_array(obj, "n", line);
    s.c1 = jsonl::get_optional_string(obj, "c1", line);
    s.c2 = jsonl::get_optional_string(obj, "c2", line);
    s.q2 = jsonl::get_optional_string(obj, "q2", line);
    s.extra = leftover_keys(obj, {"id", "q", "p", "n", "c1", "c2", "q2"});
    out.push_back(std::move(s));
  });
  return out;
}

std::vector<RankedSample> load_ranked(std::istream& in) {
  std::vector<RankedSample> out;
  jsonl::for_each_object(in, [&](std::size_t line, json&& obj) {
    RankedSample s;
    s.id = jsonl::get_string(obj, "id", line);
    s.e = jsonl::get_string(obj, "E", line);
    s.nc = jsonl::get_int(obj, "Nc", line);
    s.np = jsonl::get_int(obj, "Np", line);
    s.ks = jsonl::get_int_array(obj, "K", line);
    s.ps = jsonl::get_number_array(obj, "P", line);
    s.rs = jsonl::get_number_array(obj, "R", line);
    s.rank = jsonl::get_int_array(obj, "rank", line);
    s.extra = leftover_keys(obj, {"id", "E", "Nc", "Np", "K", "P", "R", "rank"});
    out.push_back(std::move(s));
  });
  return out;
}

std::vector<GradedSample> load_graded(std::istream& in) {
  std::vector<GradedSample> out;
  jsonl::for_each_object(in, [&](std::size_t line, json&& obj) {
    GradedSample s;
    s.id = jsonl::get_string(obj, "id", line);
    s.e = jsonl::get_string(obj, "E", line);
    s.nc = jsonl::get_int(obj, "Nc", line);
    s.np = jsonl::get_int(obj, "Np", line);
    s.k = jsonl::get_int(obj, "K", line);
    s.rank = jsonl::get_int_array(obj, "rank", line);
    s.in_k = jsonl::get_int_array(obj, "inK", line);
    s.answer_ideal = jsonl::get_string(obj, "answer_ideal", line);
    s.answer_topk = jsonl::get_string(obj, "answer_topK", line);
    s.grade = jsonl::get_int(obj, "grade", line);
    const json& p = jsonl::require_key(obj, "P", line);
    if (!p.is_number()) throw SchemaError(line, "P", "expected a number");
    s.p = p.get<double>();
    const json& r = jsonl::require_key(obj, "R", line);
    if (!r.is_number()) throw SchemaError(line, "R", "expected a number");
    s.r = r.get<double>();
    s.extra = leftover_keys(obj, {"id", "E", "Nc", "Np", "K", "rank", "inK", "answer_ideal",
                                  "answer_topK", "grade", "P", "R"});
    out.push_back(std::move(s));
  });
  return out;
}

json to_json(const QueryTextsSample& s) {
  json j = s.extra.is_object() ? s.extra : json::object();
  j["id"] = s.id;
  j["q"] = s.q;
  j["p"] = s.p;
  j["n"] = s.n;
  if (s.c1) j["c1"] = *s.c1;
  if (s.c2) j["c2"] = *s.c2;
  if (s.q2) j["q2"] = *s.q2;
  return j;
}

json to_json(const RankedSample& s) {
  json j = s.extra.is_object() ? s.extra : json::object();
  j["id"] = s.id;
  j["E"] = s.e;
  j["Nc"] = s.nc;
  j["Np"] = s.np;
  j["K"] = s.ks;
  j["P"] = s.ps;
  j["R"] = s.rs;
  j["rank"] = s.rank;
  return j;
}

json to_json(const GradedSample& s) {
  json j = s.extra.is_object() ? s.extra : json::object();
  j["id"] = s.id;
  j["E"] = s.e;
  j["Nc"] = s.nc;
  j["Np"] = s.np;
  j["K"] = s.k;
  j["rank"] = s.rank;
  j["inK"] = s.in_k;
  j["answer_ideal"] = s.answer_ideal;
  j["answer_topK"] = s.answer_topk;
  j["grade"] = s.grade;
  j["P"] = s.p;
  j["R"] = s.r;
  return j;
}

namespace {

template <typename T>
void write_lines(std::ostream& out, std::span<const T> samples) {
  for (const T& s : samples) out << to_json(s).dump() << '\n';
}

}  // namespace

void write_query_texts(std::ostream& out, std::span<const QueryTextsSample> samples) {
  write_lines(out, samples);
}

void write_ranked(std::ostream& out, std::span<const RankedSample> samples) {
  write_lines(out, samples);
}

void write_graded(std::ostream& out, std::span<const GradedSample> samples) {
  write_lines(out, samples);
}

const std::vector<std::string>& known_id_prefixes() {
  static const std::vector<std::string> prefixes = {
      "A", "Hp-e", "Hp-h", "Hp-m", "Hs-e", "Hs-h", "Hs-m", "M", "N"};
  return prefixes;
}

bool id_prefix_known(const std::string& id) {
  for (const std::string& prefix : known_id_prefixes()) {
    // The prefix must be followed by "-<sample index>".
    if (id.size() > prefix.size() + 1 && id.compare(0, prefix.size(), prefix) == 0 &&
        id[prefix.size()] == '-') {
      return true;
    }
  }
  return false;
}

std::string subset_tag(const std::string& id) {
  const std::size_t dash = id.find('-');
  return dash == std::string::npos ? id : id.substr(0, dash);
}

ValidationReport validate_query_texts(const QueryTextsSample& sq) {
  ValidationReport rep;
  if (sq.p.empty()) rep.failures.emplace_back("has_positives");
  if (sq.n.empty()) rep.failures.emplace_back("has_negatives");
  if (!id_prefix_known(sq.id)) rep.failures.emplace_back("id_prefix_known");
  return rep;
}

namespace {

// Checks shared by the standalone and cross-linked ranked validations.
// Returns the report plus a flag telling whether the precision/recall lists
// can be recomputed safely.
std::pair<ValidationReport, bool> ranked_core_checks(const RankedSample& sr) {
  ValidationReport rep;
  auto fail = [&rep](const char* name) { rep.failures.emplace_back(name); };

  const bool len_p_ok = sr.ps.size() == sr.ks.size();
  const bool len_r_ok = sr.rs.size() == sr.ks.size();
  const bool len_rank_ok = sr.nc >= 0 && sr.rank.size() == static_cast<std::size_t>(sr.nc);
  if (!len_p_ok) fail("len_P_eq_len_K");
  if (!len_r_ok) fail("len_R_eq_len_K");
  if (!len_rank_ok) fail("len_rank_eq_Nc");
  if (!(sr.np < sr.nc)) fail("Np_lt_Nc");
  if (!(sr.nc >= 2)) fail("Nc_ge_2");
  if (!(sr.np >= 2)) fail("Np_ge_2");
  const bool perm_ok = entries_form_permutation(sr.rank, sr.nc);
  if (!perm_ok) fail("rank_permutation");
  const bool ks_sorted = strictly_increasing(sr.ks);
  if (!ks_sorted) fail("K_sorted");
  const bool ks_in_range =
      std::all_of(sr.ks.begin(), sr.ks.end(), [&](int k) { return k >= 1 && k <= sr.nc; });
  if (!ks_in_range) fail("K_in_range");

  const bool recomputable =
      len_p_ok && len_r_ok && len_rank_ok && perm_ok && ks_sorted && ks_in_range && sr.np >= 1;
  if (recomputable) {
    bool p_ok = true;
    bool r_ok = true;
    int positives = 0;
    std::size_t next = 0;
    for (std::size_t i = 0; i < sr.ks.size(); ++i) {
      while (next < static_cast<std::size_t>(sr.ks[i])) {
        if (sr.rank[next] < sr.np) ++positives;
        ++next;
      }
      if (sr.ps[i] != static_cast<double>(positives) / sr.ks[i]) p_ok = false;
      if (sr.rs[i] != static_cast<double>(positives) / sr.np) r_ok = false;
    }
    if (!p_ok) fail("P_recompute");
    if (!r_ok) fail("R_recompute");
  }
  return {rep, recomputable};
}

}  // namespace

ValidationReport validate_ranked_local(const RankedSample& sr) {
  return ranked_core_checks(sr).first;
}

ValidationReport validate_ranked(const RankedSample& sr, const QueryTextsSample& sq) {
  if (sr.id != sq.id) {
    throw CrossLinkError("ranked sample \"" + sr.id + "\" checked against query-texts sample \"" +
                         sq.id + "\"");
  }
  ValidationReport rep = ranked_core_checks(sr).first;
  const auto pool = static_cast<long long>(sq.p.size()) + static_cast<long long>(sq.n.size());
  if (!(sr.nc <= pool)) rep.failures.emplace_back("Nc_le_texts");
  if (!(sr.np <= static_cast<long long>(sq.p.size()))) rep.failures.emplace_back("Np_le_positives");
  return rep;
}

ValidationReport validate_graded_local(const GradedSample& sg) {
  ValidationReport rep;
  auto fail = [&rep](const char* name) { rep.failures.emplace_back(name); };

  const bool len_rank_ok = sg.k >= 0 && sg.rank.size() == static_cast<std::size_t>(sg.k);
  const bool len_ink_ok = sg.k >= 0 && sg.in_k.size() == static_cast<std::size_t>(sg.k);
  if (!len_rank_ok) fail("len_rank_eq_K");
  if (!len_ink_ok) fail("len_inK_eq_K");

  long long in_k_sum = 0;
  for (int v : sg.in_k) in_k_sum += v;
  if (!(in_k_sum <= sg.np)) fail("sum_inK_le_Np");

  if (len_rank_ok && len_ink_ok) {
    bool consistent = true;
    for (std::size_t j = 0; j < sg.rank.size(); ++j) {
      const int expected = sg.rank[j] < sg.np ? 1 : 0;
      if (sg.in_k[j] != expected) consistent = false;
    }
    if (!consistent) fail("inK_consistent");
  }
  if (sg.grade < 1 || sg.grade > 5) fail("grade_range");

  if (len_rank_ok && sg.k >= 1 && sg.np >= 1) {
    int positives = 0;
    for (int v : sg.rank) {
      if (v < sg.np) ++positives;
    }
    if (sg.p != static_cast<double>(positives) / sg.k) fail("P_recompute");
    if (sg.r != static_cast<double>(positives) / sg.np) fail("R_recompute");
  }
  return rep;
}

ValidationReport validate_graded(const GradedSample& sg, const RankedSample& sr) {
  if (sg.id != sr.id || sg.e != sr.e || sg.nc != sr.nc || sg.np != sr.np) {
    throw CrossLinkError("graded sample (" + sg.id + ", " + sg.e +
                         ") checked against ranked sample (" + sr.id + ", " + sr.e + ")");
  }
  ValidationReport rep = validate_graded_local(sg);
  if (std::find(sr.ks.begin(), sr.ks.end(), sg.k) == sr.ks.end()) {
    rep.failures.emplace_back("K_in_ranked_K");
  }
  if (sg.rank.size() == static_cast<std::size_t>(sg.k) &&
      sg.rank.size() <= sr.rank.size()) {
    if (!std::equal(sg.rank.begin(), sg.rank.end(), sr.rank.begin())) {
      rep.failures.emplace_back("rank_prefix");
    }
  } else if (sg.rank.size() > sr.rank.size()) {
    rep.failures.emplace_back("rank_prefix");
  }
  return rep;
}

std::vector<std::string> ranked_texts(const RankedSample& sr, const QueryTextsSample& sq) {
  std::vector<std::string> out;
  out.reserve(sr.rank.size());
  for (int i : sr.rank) {
    if (i < 0 || i >= sr.nc) {
      throw InvalidInput("corrupt rank in sample \"" + sr.id + "\": index " + std::to_string(i) +
                         " outside [0, " + std::to_string(sr.nc) + ")");
    }
    if (i < sr.np) {
      if (static_cast<std::size_t>(i) >= sq.p.size()) {
        throw InvalidInput("corrupt rank in sample \"" + sr.id + "\": positive index " +
                           std::to_string(i) + " outside the text pool");
      }
      out.push_back(sq.p[static_cast<std::size_t>(i)]);
    } else {
      const std::size_t j = static_cast<std::size_t>(i - sr.np);
      if (j >= sq.n.size()) {
        throw InvalidInput("corrupt rank in sample \"" + sr.id + "\": negative index " +
                           std::to_string(i) + " outside the text pool");
      }
      out.push_back(sq.n[j]);
    }
  }
  return out;
}

std::vector<int> labels_from_rank(std::span<const int> rank, int np) {
  std::vector<int> labels;
  labels.reserve(rank.size());
  for (int i : rank) labels.push_back(i < np ? 1 : 0);
  return labels;
}

}  // namespace rreval::dataset
