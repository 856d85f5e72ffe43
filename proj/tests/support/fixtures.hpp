#pragma once

// Shared dataset fixtures: a small valid three-part dataset, a per-assertion
// corruption table with the exact failure sets each corruption must produce,
// and a builder for synthetic graded samples used by the analysis tests.

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rreval/dataset.hpp"

namespace fixtures {

using rreval::dataset::GradedSample;
using rreval::dataset::QueryTextsSample;
using rreval::dataset::RankedSample;

inline std::vector<QueryTextsSample> make_query_texts() {
  std::vector<QueryTextsSample> out;
  {
    QueryTextsSample s;
    s.id = "N-0";
    s.q = "river flow";
    s.p = {"p0 text", "p1 text"};
    s.n = {"n0 text", "n1 text", "n2 text"};
    out.push_back(std::move(s));
  }
  {
    QueryTextsSample s;
    s.id = "A-1";
    s.q = "qa";
    s.p = {"a-p0", "a-p1", "a-p2", "a-p3", "a-p4"};
    s.n = {"a-n0"};
    s.c1 = "source context";
    out.push_back(std::move(s));
  }
  {
    QueryTextsSample s;
    s.id = "M-5";
    s.q = "qm";
    s.p = {"m-p0", "m-p1", "m-p2", "m-p3", "m-p4"};
    s.n = {"m-n0"};
    out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<RankedSample> make_ranked() {
  std::vector<RankedSample> out;
  {
    RankedSample s;
    s.id = "N-0";
    s.e = "AM";
    s.nc = 5;
    s.np = 2;
    s.ks = {1, 2, 3, 4};
    s.ps = {0.0, 0.5, 1.0 / 3.0, 0.5};
    s.rs = {0.0, 0.5, 0.5, 1.0};
    s.rank = {2, 0, 3, 1, 4};
    out.push_back(std::move(s));
  }
  {
    RankedSample s;
    s.id = "A-1";
    s.e = "EM";
    s.nc = 6;
    s.np = 5;
    s.ks = {2, 4};
    s.ps = {1.0, 1.0};
    s.rs = {0.4, 0.8};
    s.rank = {0, 1, 2, 3, 4, 5};
    out.push_back(std::move(s));
  }
  {
    RankedSample s;
    s.id = "M-5";
    s.e = "AM";
    s.nc = 6;
    s.np = 5;
    s.ks = {1, 5};
    s.ps = {1.0, 1.0};
    s.rs = {0.2, 1.0};
    s.rank = {0, 1, 2, 3, 4, 5};
    out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<GradedSample> make_graded() {
  std::vector<GradedSample> out;
  {
    GradedSample s;
    s.id = "N-0";
    s.e = "AM";
    s.nc = 5;
    s.np = 2;
    s.k = 2;
    s.rank = {2, 0};
    s.in_k = {0, 1};
    s.answer_ideal = "[mock:7] river flow\n[1] p0 text\n[2] p1 text";
    s.answer_topk = "[mock:7] river flow\n[1] n0 text\n[2] p0 text";
    s.grade = 3;
    s.p = 0.5;
    s.r = 0.5;
    out.push_back(std::move(s));
  }
  {
    GradedSample s;
    s.id = "N-0";
    s.e = "AM";
    s.nc = 5;
    s.np = 2;
    s.k = 4;
    s.rank = {2, 0, 3, 1};
    s.in_k = {0, 1, 0, 1};
    s.answer_ideal = "[mock:7] river flow\n[1] p0 text\n[2] p1 text";
    s.answer_topk = "[mock:7] river flow\n[1] n0 text\n[2] p0 text\n[3] n1 text\n[4] p1 text";
    s.grade = 5;
    s.p = 0.5;
    s.r = 1.0;
    out.push_back(std::move(s));
  }
  {
    GradedSample s;
    s.id = "A-1";
    s.e = "EM";
    s.nc = 6;
    s.np = 5;
    s.k = 4;
    s.rank = {0, 1, 2, 3};
    s.in_k = {1, 1, 1, 1};
    s.answer_ideal = "[mock:7] qa\n[1] a-p0\n[2] a-p1\n[3] a-p2\n[4] a-p3\n[5] a-p4";
    s.answer_topk = "[mock:7] qa\n[1] a-p0\n[2] a-p1\n[3] a-p2\n[4] a-p3";
    s.grade = 4;
    s.p = 1.0;
    s.r = 0.8;
    out.push_back(std::move(s));
  }
  return out;
}

inline std::string query_texts_jsonl() {
  std::ostringstream out;
  const auto samples = make_query_texts();
  rreval::dataset::write_query_texts(out, samples);
  return out.str();
}

inline std::string ranked_jsonl() {
  std::ostringstream out;
  const auto samples = make_ranked();
  rreval::dataset::write_ranked(out, samples);
  return out.str();
}

inline std::string graded_jsonl() {
  std::ostringstream out;
  const auto samples = make_graded();
  rreval::dataset::write_graded(out, samples);
  return out.str();
}

// One deliberate defect in a ranked sample. base_index selects the sample
// from make_ranked() (whose companion query-texts record has the same index);
// expected_failures is the exact set validate_ranked must report.
struct RankedCorruption {
  const char* name;
  std::size_t base_index;
  std::function<void(RankedSample&)> mutate;
  std::vector<std::string> expected_failures;
};

inline std::vector<RankedCorruption> ranked_corruptions() {
  return {
      {"precision list too short", 0, [](RankedSample& s) { s.ps.pop_back(); },
       {"len_P_eq_len_K"}},
      {"recall list too short", 0, [](RankedSample& s) { s.rs.pop_back(); },
       {"len_R_eq_len_K"}},
      {"rank shorter than the pool", 0, [](RankedSample& s) { s.rank.pop_back(); },
       {"len_rank_eq_Nc"}},
      {"pool larger than the texts", 0,
       [](RankedSample& s) {
         s.nc = 6;
         s.rank = {2, 0, 3, 1, 4, 5};
       },
       {"Nc_le_texts"}},
      {"positive count beyond the positive pool", 0, [](RankedSample& s) { s.np = 3; },
       {"Np_le_positives", "P_recompute", "R_recompute"}},
      {"positive count equal to the pool", 2, [](RankedSample& s) { s.np = 6; },
       {"Np_lt_Nc", "Np_le_positives", "R_recompute"}},
      {"single-candidate pool", 0,
       [](RankedSample& s) {
         s.nc = 1;
         s.np = 0;
         s.rank = {0};
         s.ks = {1};
         s.ps = {0.0};
         s.rs = {0.0};
       },
       {"Nc_ge_2", "Np_ge_2"}},
      {"single positive", 0, [](RankedSample& s) { s.np = 1; },
       {"Np_ge_2", "P_recompute", "R_recompute"}},
      {"stored precision wrong", 0, [](RankedSample& s) { s.ps[1] = 0.75; },
       {"P_recompute"}},
      {"stored recall wrong", 0, [](RankedSample& s) { s.rs[0] = 0.25; },
       {"R_recompute"}},
      {"rank repeats an index", 0, [](RankedSample& s) { s.rank = {2, 0, 3, 1, 1}; },
       {"rank_permutation"}},
      {"rank holds the pool size", 0, [](RankedSample& s) { s.rank = {2, 0, 3, 1, 5}; },
       {"rank_permutation"}},
      {"cutoffs unsorted", 0, [](RankedSample& s) { s.ks = {1, 2, 4, 3}; },
       {"K_sorted"}},
      {"cutoff beyond the pool", 0, [](RankedSample& s) { s.ks = {1, 2, 3, 6}; },
       {"K_in_range"}},
  };
}

// Same idea for graded samples; base_index selects from make_graded(), whose
// parent ranked sample is make_ranked()[parent_index].
struct GradedCorruption {
  const char* name;
  std::size_t base_index;
  std::size_t parent_index;
  std::function<void(GradedSample&)> mutate;
  std::vector<std::string> expected_failures;
};

inline std::vector<GradedCorruption> graded_corruptions() {
  return {
      {"rank slice too short", 0, 0, [](GradedSample& s) { s.rank = {2}; },
       {"len_rank_eq_K"}},
      {"relevance flags too short", 0, 0, [](GradedSample& s) { s.in_k = {0}; },
       {"len_inK_eq_K"}},
      {"relevance flags wrong", 0, 0, [](GradedSample& s) { s.in_k = {1, 1}; },
       {"inK_consistent"}},
      {"relevance flags overflow the pool", 0, 0, [](GradedSample& s) { s.in_k = {2, 1}; },
       {"sum_inK_le_Np", "inK_consistent"}},
      {"cutoff never evaluated", 0, 0,
       [](GradedSample& s) {
         s.k = 5;
         s.rank = {2, 0, 3, 1, 4};
         s.in_k = {0, 1, 0, 1, 0};
         s.p = 0.4;
         s.r = 1.0;
       },
       {"K_in_ranked_K"}},
      {"rank slice is not the prefix", 0, 0,
       [](GradedSample& s) {
         s.rank = {0, 2};
         s.in_k = {1, 0};
       },
       {"rank_prefix"}},
      {"grade out of range", 0, 0, [](GradedSample& s) { s.grade = 6; },
       {"grade_range"}},
      {"stored precision wrong", 0, 0, [](GradedSample& s) { s.p = 1.0; },
       {"P_recompute"}},
      {"stored recall wrong", 0, 0, [](GradedSample& s) { s.r = 0.75; },
       {"R_recompute"}},
  };
}

// Synthetic graded sample with positives_in_k leading relevant entries; the
// rank slice takes positives 0..positives_in_k-1 then negatives np, np+1, ...
// so validation holds whenever positives_in_k <= min(k, np) and
// np + (k - positives_in_k) <= nc.
inline GradedSample make_synthetic(const std::string& id, const std::string& e, int k, int np,
                                   int nc, int positives_in_k, int grade) {
  GradedSample s;
  s.id = id;
  s.e = e;
  s.nc = nc;
  s.np = np;
  s.k = k;
  for (int i = 0; i < positives_in_k; ++i) s.rank.push_back(i);
  for (int i = positives_in_k; i < k; ++i) s.rank.push_back(np + (i - positives_in_k));
  s.in_k = rreval::dataset::labels_from_rank(s.rank, np);
  s.answer_ideal = "[1] ideal";
  s.answer_topk = "[1] topk";
  s.grade = grade;
  s.p = static_cast<double>(positives_in_k) / k;
  s.r = static_cast<double>(positives_in_k) / np;
  return s;
}

}  // namespace fixtures
