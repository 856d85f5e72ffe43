#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rreval/analysis.hpp"
#include "rreval/judge.hpp"
#include "rreval/ranker.hpp"

// In-process entry points behind the command-line subcommands. Each returns
// a process exit code: 0 on success, 1 when content failed validation or the
// judge skipped samples, 2 on unusable options or I/O problems.
namespace rreval::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitContent = 1;
inline constexpr int kExitUsage = 2;

// Default sweep 0.05, 0.10, ..., 0.95.
std::vector<double> default_alpha_grid();

struct ValidateOptions {
  std::optional<std::string> query_texts;
  std::optional<std::string> ranked;
  std::optional<std::string> graded;
  std::string out_dir = ".";
};

// Validates whichever dataset parts are given, cross-linking the ones that
// are, and writes <out_dir>/validation_report.json.
int cmd_validate(const ValidateOptions& options);

// Report produced by cmd_validate, for callers that want the JSON directly.
nlohmann::json run_validation(const ValidateOptions& options);

struct RankOptions {
  std::string query_texts;
  std::optional<std::string> vectors;  // JSON Lines vector file
  std::optional<ranker::EmbeddingServiceConfig> service;  // or an embedding service
  std::string service_tag;  // embedding name stamped on service-ranked samples
  std::vector<int> cutoffs;
  std::string out_dir = ".";
};

// Ranks every embedded sample by cosine similarity and writes
// <out_dir>/ranked.jsonl.
int cmd_rank(const RankOptions& options);

struct GradeOptions {
  std::string query_texts;
  std::string ranked;
  std::optional<judge::JudgeConfig> judge_config;  // exactly one of these two
  std::optional<long long> mock_seed;
  int jobs = 1;
  std::string out_dir = ".";
};

// Generates ideal and top-K answers for every (ranked sample, cutoff) pair,
// grades the top-K answers, and writes <out_dir>/graded.jsonl. Samples whose
// judge calls fail are recorded in <out_dir>/grade_failures.jsonl and the
// command exits 1.
int cmd_grade(const GradeOptions& options);

struct AnalyzeOptions {
  std::string graded;
  std::optional<std::string> ranked;  // enables the estimated-F measure
  std::vector<double> alpha_grid = default_alpha_grid();
  int min_count = 300;
  metrics::NdcgMode ndcg_mode = metrics::NdcgMode::ObservedIdeal;
  analysis::RoundingMode rounding = analysis::RoundingMode::OneDecimal;
  std::vector<analysis::Method> methods = {analysis::Method::Spearman};
  std::string out_dir = ".";
};

// Segments the graded samples, correlates every measure with the grades per
// segment and method, and writes the report files into out_dir:
// correlations.json, summary.json, narrow_wide.csv, and per-subset
// correlation, grade-distribution, and difference-matrix CSVs.
int cmd_analyze(const AnalyzeOptions& options);

}  // namespace rreval::cli
