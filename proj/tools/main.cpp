#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rreval/cli.hpp"

namespace {

// "2-15" or "2,3,8" or a mix ("2-5,8"); values must be positive.
std::vector<int> parse_cutoffs(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) throw CLI::ValidationError("--cutoffs", "empty cutoff token");
    const std::size_t dash = token.find('-');
    try {
      if (dash == std::string::npos) {
        out.push_back(std::stoi(token));
      } else {
        const int lo = std::stoi(token.substr(0, dash));
        const int hi = std::stoi(token.substr(dash + 1));
        if (hi < lo) throw CLI::ValidationError("--cutoffs", "descending range " + token);
        for (int k = lo; k <= hi; ++k) out.push_back(k);
      }
    } catch (const std::invalid_argument&) {
      throw CLI::ValidationError("--cutoffs", "not a number: " + token);
    } catch (const std::out_of_range&) {
      throw CLI::ValidationError("--cutoffs", "out of range: " + token);
    }
  }
  for (int k : out) {
    if (k < 1) throw CLI::ValidationError("--cutoffs", "cutoffs must be positive");
  }
  if (out.empty()) throw CLI::ValidationError("--cutoffs", "no cutoffs given");
  return out;
}

// "0.05:0.95:0.05" (start:stop:step) or "0.1,0.5,0.9".
std::vector<double> parse_alpha_grid(const std::string& text) {
  std::vector<double> out;
  try {
    if (text.find(':') != std::string::npos) {
      std::stringstream ss(text);
      std::string a, b, c;
      if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c)) {
        throw CLI::ValidationError("--alpha-grid", "expected start:stop:step");
      }
      const double start = std::stod(a);
      const double stop = std::stod(b);
      const double step = std::stod(c);
      if (!(step > 0.0)) throw CLI::ValidationError("--alpha-grid", "step must be positive");
      // Half-step slack keeps the stop point despite accumulated rounding.
      for (double v = start; v <= stop + step / 2; v += step) out.push_back(v);
    } else {
      std::stringstream ss(text);
      std::string token;
      while (std::getline(ss, token, ',')) out.push_back(std::stod(token));
    }
  } catch (const std::invalid_argument&) {
    throw CLI::ValidationError("--alpha-grid", "not a number in: " + text);
  } catch (const std::out_of_range&) {
    throw CLI::ValidationError("--alpha-grid", "out of range: " + text);
  }
  if (out.empty()) throw CLI::ValidationError("--alpha-grid", "no grid points given");
  return out;
}

std::vector<rreval::analysis::Method> parse_methods(const std::string& text) {
  std::vector<rreval::analysis::Method> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const auto method = rreval::analysis::parse_method(token);
    if (!method.has_value()) {
      throw CLI::ValidationError(
          "--methods", token + " (choose from spearman, pearson, kendall-b, kendall-c)");
    }
    out.push_back(*method);
  }
  if (out.empty()) throw CLI::ValidationError("--methods", "no methods given");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluation toolkit for top-K retrieval quality versus graded response quality"};
  app.require_subcommand(1);

  // validate
  rreval::cli::ValidateOptions validate_options;
  auto* validate = app.add_subcommand(
      "validate", "Check dataset files for schema and consistency failures");
  std::string v_qt, v_ranked, v_graded;
  validate->add_option("--query-texts", v_qt, "Query/texts JSONL file");
  validate->add_option("--ranked", v_ranked, "Ranked-samples JSONL file");
  validate->add_option("--graded", v_graded, "Graded-samples JSONL file");
  validate->add_option("--out-dir", validate_options.out_dir,
                       "Directory for validation_report.json");

  // rank
  rreval::cli::RankOptions rank_options;
  auto* rank = app.add_subcommand(
      "rank", "Rank candidate pools by cosine similarity and write ranked.jsonl");
  std::string r_vectors, r_embed_url, r_embed_model, r_api_env, r_cutoffs;
  rank->add_option("--query-texts", rank_options.query_texts, "Query/texts JSONL file")
      ->required();
  rank->add_option("--vectors", r_vectors, "Embedded-vectors JSONL file");
  rank->add_option("--embed-url", r_embed_url, "Embedding service endpoint");
  rank->add_option("--embed-model", r_embed_model, "Model name sent to the embedding service");
  rank->add_option("--embed-tag", rank_options.service_tag,
                   "Embedding tag stamped on service-ranked samples (e.g. AM)");
  rank->add_option("--api-key-env", r_api_env,
                   "Environment variable holding the service bearer token");
  rank->add_option("--cutoffs", r_cutoffs, "Cutoff list, e.g. 2-15 or 1,2,5")->required();
  rank->add_option("--out-dir", rank_options.out_dir, "Output directory");

  // grade
  rreval::cli::GradeOptions grade_options;
  auto* grade = app.add_subcommand(
      "grade", "Generate and grade answers for every ranked sample and cutoff");
  std::string g_url, g_model, g_api_env, g_audit;
  double g_temperature = 0.0;
  int g_attempts = 3;
  int g_backoff_ms = 250;
  std::optional<long long> g_mock_seed;
  grade->add_option("--query-texts", grade_options.query_texts, "Query/texts JSONL file")
      ->required();
  grade->add_option("--ranked", grade_options.ranked, "Ranked-samples JSONL file")->required();
  grade->add_option("--judge-url", g_url, "Chat-completions endpoint of the judge");
  grade->add_option("--judge-model", g_model, "Judge model name");
  grade->add_option("--api-key-env", g_api_env,
                    "Environment variable holding the judge bearer token");
  grade->add_option("--temperature", g_temperature, "Sampling temperature (default 0)");
  grade->add_option("--max-attempts", g_attempts, "Delivery attempts per request (default 3)");
  grade->add_option("--backoff-ms", g_backoff_ms,
                    "Base backoff between attempts in milliseconds (default 250)");
  grade->add_option("--audit-log", g_audit, "JSONL audit log of every judge exchange");
  grade->add_option("--mock-seed", g_mock_seed,
                    "Use the deterministic offline judge with this seed");
  grade->add_option("--jobs", grade_options.jobs, "Parallel judge requests (default 1)");
  grade->add_option("--out-dir", grade_options.out_dir, "Output directory");

  // analyze
  rreval::cli::AnalyzeOptions analyze_options;
  auto* analyze = app.add_subcommand(
      "analyze", "Correlate retrieval measures with grades and write report files");
  std::string a_ranked, a_alpha, a_ndcg = "observed", a_rounding = "decimal",
              a_methods = "spearman";
  analyze->add_option("--graded", analyze_options.graded, "Graded-samples JSONL file")
      ->required();
  analyze->add_option("--ranked", a_ranked,
                      "Ranked-samples JSONL file (enables the estimated-F measure)");
  analyze->add_option("--alpha-grid", a_alpha,
                      "Alpha sweep, start:stop:step or a comma list (default 0.05:0.95:0.05)");
  analyze->add_option("--min-count", analyze_options.min_count,
                      "Smallest segment population kept (default 300)");
  analyze->add_option("--ndcg-mode", a_ndcg, "Ideal ordering: observed or corpus")
      ->check(CLI::IsMember({"observed", "corpus"}));
  analyze->add_option("--ratio-rounding", a_rounding,
                      "Bucket rounding: decimal or significant")
      ->check(CLI::IsMember({"decimal", "significant"}));
  analyze->add_option("--methods", a_methods,
                      "Comma list of spearman, pearson, kendall-b, kendall-c");
  analyze->add_option("--out-dir", analyze_options.out_dir, "Output directory");

  try {
    app.parse(argc, argv);

    if (validate->parsed()) {
      if (!v_qt.empty()) validate_options.query_texts = v_qt;
      if (!v_ranked.empty()) validate_options.ranked = v_ranked;
      if (!v_graded.empty()) validate_options.graded = v_graded;
      return rreval::cli::cmd_validate(validate_options);
    }
    if (rank->parsed()) {
      if (!r_vectors.empty()) rank_options.vectors = r_vectors;
      if (!r_embed_url.empty()) {
        rreval::ranker::EmbeddingServiceConfig service;
        service.endpoint_url = r_embed_url;
        service.model = r_embed_model;
        service.api_key_env = r_api_env;
        rank_options.service = service;
      }
      rank_options.cutoffs = parse_cutoffs(r_cutoffs);
      return rreval::cli::cmd_rank(rank_options);
    }
    if (grade->parsed()) {
      if (!g_url.empty()) {
        rreval::judge::JudgeConfig config;
        config.endpoint_url = g_url;
        config.model_name = g_model;
        config.api_key_env = g_api_env;
        config.temperature = g_temperature;
        config.max_attempts = g_attempts;
        config.backoff_base = std::chrono::milliseconds(g_backoff_ms);
        config.audit_log_path = g_audit;
        grade_options.judge_config = config;
      }
      grade_options.mock_seed = g_mock_seed;
      return rreval::cli::cmd_grade(grade_options);
    }
    if (analyze->parsed()) {
      if (!a_ranked.empty()) analyze_options.ranked = a_ranked;
      if (!a_alpha.empty()) analyze_options.alpha_grid = parse_alpha_grid(a_alpha);
      analyze_options.ndcg_mode = a_ndcg == "corpus" ? rreval::metrics::NdcgMode::CorpusIdeal
                                                     : rreval::metrics::NdcgMode::ObservedIdeal;
      analyze_options.rounding = a_rounding == "significant"
                                     ? rreval::analysis::RoundingMode::OneSignificantDigit
                                     : rreval::analysis::RoundingMode::OneDecimal;
      analyze_options.methods = parse_methods(a_methods);
      return rreval::cli::cmd_analyze(analyze_options);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : rreval::cli::kExitUsage;
  }
  return rreval::cli::kExitUsage;
}
