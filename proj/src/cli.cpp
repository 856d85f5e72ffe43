#include "rreval/cli.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <thread>
#include <tuple>

#include "rreval/dataset.hpp"
#include "rreval/errors.hpp"
#include "rreval/report.hpp"

namespace rreval::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open \"" + path + "\" for reading");
  return in;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open \"" + path.string() + "\" for writing");
  return out;
}

// Maps an exception from a command body onto the exit-code contract.
template <typename Fn>
int guarded(Fn&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitContent;
  }
}

// Runs fn(index) for every index, spreading work over the given number of
// threads. fn must not throw.
template <typename Fn>
void parallel_for(int jobs, std::size_t count, const Fn& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> threads;
  const int n_threads = std::min<int>(jobs, static_cast<int>(count));
  threads.reserve(static_cast<std::size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
}

}  // namespace

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  grid.reserve(19);
  for (int i = 1; i <= 19; ++i) grid.push_back(i / 20.0);
  return grid;
}

json run_validation(const ValidateOptions& options) {
  json report;
  json file_errors = json::array();
  std::size_t failing_samples = 0;

  std::optional<std::vector<dataset::QueryTextsSample>> query_texts;
  std::optional<std::vector<dataset::RankedSample>> ranked;
  std::optional<std::vector<dataset::GradedSample>> graded;

  auto load_part = [&](const std::optional<std::string>& path, const char* part, auto loader,
                       auto& storage) {
    if (!path.has_value()) return;
    auto in = open_input(*path);
    try {
      storage = loader(in);
    } catch (const std::exception& e) {
      file_errors.push_back({{"file", *path}, {"part", part}, {"message", e.what()}});
    }
  };
  load_part(options.query_texts, "query_texts",
            [](std::istream& in) { return dataset::load_query_texts(in); }, query_texts);
  load_part(options.ranked, "ranked",
            [](std::istream& in) { return dataset::load_ranked(in); }, ranked);
  load_part(options.graded, "graded",
            [](std::istream& in) { return dataset::load_graded(in); }, graded);

  std::map<std::string, const dataset::QueryTextsSample*> by_id;
  json qt_failures = json::array();
  if (query_texts.has_value()) {
    std::map<std::string, int> id_counts;
    for (const auto& sq : *query_texts) ++id_counts[sq.id];
    std::set<std::string> reported_dups;
    for (const auto& sq : *query_texts) {
      dataset::ValidationReport rep = dataset::validate_query_texts(sq);
      if (id_counts[sq.id] > 1 && !reported_dups.insert(sq.id).second) {
        rep.failures.emplace_back("id_unique");
      }
      by_id.emplace(sq.id, &sq);
      if (!rep.ok()) {
        ++failing_samples;
        qt_failures.push_back({{"id", sq.id}, {"failures", rep.failures}});
      }
    }
  }

  std::map<std::tuple<std::string, std::string, int, int>, const dataset::RankedSample*>
      ranked_by_key;
  json ranked_failures = json::array();
  if (ranked.has_value()) {
    for (const auto& sr : *ranked) {
      dataset::ValidationReport rep;
      if (query_texts.has_value()) {
        auto it = by_id.find(sr.id);
        if (it == by_id.end()) {
          rep.failures = dataset::validate_ranked_local(sr).failures;
          rep.failures.emplace_back("query_texts_link");
        } else {
          rep = dataset::validate_ranked(sr, *it->second);
        }
      } else {
        rep = dataset::validate_ranked_local(sr);
      }
      ranked_by_key.emplace(std::make_tuple(sr.id, sr.e, sr.nc, sr.np), &sr);
      if (!rep.ok()) {
        ++failing_samples;
        ranked_failures.push_back({{"id", sr.id},
                                   {"E", sr.e},
                                   {"Nc", sr.nc},
                                   {"Np", sr.np},
                                   {"failures", rep.failures}});
      }
    }
  }

  json graded_failures = json::array();
  if (graded.has_value()) {
    for (const auto& sg : *graded) {
      dataset::ValidationReport rep;
      if (ranked.has_value()) {
        auto it = ranked_by_key.find(std::make_tuple(sg.id, sg.e, sg.nc, sg.np));
        if (it == ranked_by_key.end()) {
          rep.failures = dataset::validate_graded_local(sg).failures;
          rep.failures.emplace_back("ranked_link");
        } else {
          rep = dataset::validate_graded(sg, *it->second);
        }
      } else {
        rep = dataset::validate_graded_local(sg);
      }
      if (!rep.ok()) {
        ++failing_samples;
        graded_failures.push_back({{"id", sg.id},
                                   {"E", sg.e},
                                   {"Nc", sg.nc},
                                   {"Np", sg.np},
                                   {"K", sg.k},
                                   {"failures", rep.failures}});
      }
    }
  }

  report["file_errors"] = file_errors;
  report["query_texts"] = qt_failures;
  report["ranked"] = ranked_failures;
  report["graded"] = graded_failures;
  report["summary"] = {
      {"parts",
       {{"query_texts",
         {{"samples", query_texts.has_value() ? query_texts->size() : 0},
          {"with_failures", qt_failures.size()}}},
        {"ranked",
         {{"samples", ranked.has_value() ? ranked->size() : 0},
          {"with_failures", ranked_failures.size()}}},
        {"graded",
         {{"samples", graded.has_value() ? graded->size() : 0},
          {"with_failures", graded_failures.size()}}}}},
      {"failing_samples", failing_samples},
      {"file_errors", file_errors.size()},
      {"ok", failing_samples == 0 && file_errors.empty()}};
  return report;
}

int cmd_validate(const ValidateOptions& options) {
  return guarded([&]() {
    if (!options.query_texts && !options.ranked && !options.graded) {
      std::cerr << "error: nothing to validate; give at least one dataset file\n";
      return kExitUsage;
    }
    const json report = run_validation(options);
    auto out = open_output(fs::path(options.out_dir) / "validation_report.json");
    out << report.dump(2) << '\n';
    const bool ok = report.at("summary").at("ok").get<bool>();
    std::cout << (ok ? "validation passed" : "validation FAILED") << ": "
              << report.at("summary").at("failing_samples").get<std::size_t>()
              << " failing samples, " << report.at("file_errors").size()
              << " unreadable parts (report: "
              << (fs::path(options.out_dir) / "validation_report.json").string() << ")\n";
    return ok ? kExitOk : kExitContent;
  });
}

int cmd_rank(const RankOptions& options) {
  return guarded([&]() {
    if (options.vectors.has_value() == options.service.has_value()) {
      std::cerr << "error: give exactly one vector source (a vectors file or a service URL)\n";
      return kExitUsage;
    }
    if (options.service.has_value() && options.service_tag.empty()) {
      std::cerr << "error: ranking through a service needs an embedding tag\n";
      return kExitUsage;
    }
    if (options.cutoffs.empty()) {
      std::cerr << "error: at least one cutoff is required\n";
      return kExitUsage;
    }

    auto qt_in = open_input(options.query_texts);
    const std::vector<dataset::QueryTextsSample> query_texts =
        dataset::load_query_texts(qt_in);
    std::map<std::string, const dataset::QueryTextsSample*> by_id;
    for (const auto& sq : query_texts) {
      if (!by_id.emplace(sq.id, &sq).second) {
        throw CrossLinkError("duplicate query-texts id \"" + sq.id + "\"");
      }
    }

    std::vector<ranker::EmbeddedSample> embedded;
    if (options.vectors.has_value()) {
      auto vec_in = open_input(*options.vectors);
      embedded = ranker::load_vectors(vec_in);
    } else {
      const ranker::EmbeddingClient client(*options.service);
      for (const auto& sq : query_texts) {
        std::vector<std::string> texts;
        texts.reserve(1 + sq.p.size() + sq.n.size());
        texts.push_back(sq.q);
        texts.insert(texts.end(), sq.p.begin(), sq.p.end());
        texts.insert(texts.end(), sq.n.begin(), sq.n.end());
        std::vector<std::vector<double>> vectors = client.embed(texts);
        ranker::EmbeddedSample s;
        s.id = sq.id;
        s.e = options.service_tag;
        s.q_vec = std::move(vectors.front());
        s.cand_vecs.assign(std::make_move_iterator(vectors.begin() + 1),
                           std::make_move_iterator(vectors.end()));
        s.np = static_cast<int>(sq.p.size());
        embedded.push_back(std::move(s));
      }
    }

    std::vector<dataset::RankedSample> out_samples;
    out_samples.reserve(embedded.size());
    for (const auto& s : embedded) {
      auto it = by_id.find(s.id);
      if (it == by_id.end()) {
        throw CrossLinkError("vector sample \"" + s.id + "\" has no query-texts record");
      }
      const dataset::QueryTextsSample& sq = *it->second;
      if (static_cast<std::size_t>(s.np) > sq.p.size() ||
          s.cand_vecs.size() - static_cast<std::size_t>(s.np) > sq.n.size()) {
        throw CrossLinkError("vector sample \"" + s.id +
                             "\" holds more vectors than the text pools");
      }
      out_samples.push_back(ranker::make_ranked(s, options.cutoffs));
    }

    const fs::path out_path = fs::path(options.out_dir) / "ranked.jsonl";
    auto out = open_output(out_path);
    dataset::write_ranked(out, out_samples);
    std::cout << "ranked " << out_samples.size() << " samples -> " << out_path.string() << '\n';
    return kExitOk;
  });
}

int cmd_grade(const GradeOptions& options) {
  return guarded([&]() {
    if (options.judge_config.has_value() == options.mock_seed.has_value()) {
      std::cerr << "error: give exactly one judge (an endpoint or a mock seed)\n";
      return kExitUsage;
    }
    if (options.jobs < 1) {
      std::cerr << "error: jobs must be at least 1\n";
      return kExitUsage;
    }

    auto qt_in = open_input(options.query_texts);
    const std::vector<dataset::QueryTextsSample> query_texts =
        dataset::load_query_texts(qt_in);
    std::map<std::string, const dataset::QueryTextsSample*> by_id;
    for (const auto& sq : query_texts) {
      if (!by_id.emplace(sq.id, &sq).second) {
        throw CrossLinkError("duplicate query-texts id \"" + sq.id + "\"");
      }
    }
    auto ranked_in = open_input(options.ranked);
    const std::vector<dataset::RankedSample> ranked = dataset::load_ranked(ranked_in);

    std::unique_ptr<judge::Judge> the_judge;
    if (options.mock_seed.has_value()) {
      the_judge = judge::mock_judge(*options.mock_seed);
    } else {
      the_judge = std::make_unique<judge::LlmJudge>(*options.judge_config);
    }

    // Ideal answers repeat across cutoffs (and embeddings), so they are
    // produced once per sample id.
    std::set<std::string> id_set;
    for (const auto& sr : ranked) {
      if (by_id.find(sr.id) == by_id.end()) {
        throw CrossLinkError("ranked sample \"" + sr.id + "\" has no query-texts record");
      }
      id_set.insert(sr.id);
    }
    const std::vector<std::string> ids(id_set.begin(), id_set.end());
    std::vector<std::string> ideal_answers(ids.size());
    std::vector<std::string> ideal_errors(ids.size());
    parallel_for(options.jobs, ids.size(), [&](std::size_t i) {
      const dataset::QueryTextsSample& sq = *by_id.at(ids[i]);
      try {
        ideal_answers[i] = the_judge->generate(sq.q, sq.p);
      } catch (const std::exception& e) {
        ideal_errors[i] = e.what();
      }
    });
    std::map<std::string, std::size_t> ideal_index;
    for (std::size_t i = 0; i < ids.size(); ++i) ideal_index[ids[i]] = i;

    struct Task {
      const dataset::RankedSample* sr;
      const dataset::QueryTextsSample* sq;
      int k;
    };
    std::vector<Task> tasks;
    for (const auto& sr : ranked) {
      for (int k : sr.ks) tasks.push_back({&sr, by_id.at(sr.id), k});
    }

    std::vector<std::optional<dataset::GradedSample>> produced(tasks.size());
    std::vector<std::string> task_errors(tasks.size());
    parallel_for(options.jobs, tasks.size(), [&](std::size_t t) {
      const Task& task = tasks[t];
      try {
        const std::size_t ii = ideal_index.at(task.sr->id);
        if (!ideal_errors[ii].empty()) {
          throw JudgeError("ideal answer unavailable: " + ideal_errors[ii]);
        }
        if (task.k < 1 || static_cast<std::size_t>(task.k) > task.sr->rank.size()) {
          throw InvalidInput("cutoff " + std::to_string(task.k) +
                             " outside the ranking of sample \"" + task.sr->id + "\"");
        }
        if (task.sr->np < 1) {
          throw InvalidInput("sample \"" + task.sr->id + "\" has no pool positives");
        }
        const std::vector<std::string> texts = dataset::ranked_texts(*task.sr, *task.sq);
        const std::vector<std::string> top_k(texts.begin(), texts.begin() + task.k);
        const std::string answer = the_judge->generate(task.sq->q, top_k);
        const judge::GradeValue grade =
            the_judge->score(task.sq->q, answer, ideal_answers[ii]);

        dataset::GradedSample sg;
        sg.id = task.sr->id;
        sg.e = task.sr->e;
        sg.nc = task.sr->nc;
        sg.np = task.sr->np;
        sg.k = task.k;
        sg.rank.assign(task.sr->rank.begin(), task.sr->rank.begin() + task.k);
        sg.in_k = dataset::labels_from_rank(sg.rank, sg.np);
        sg.answer_ideal = ideal_answers[ii];
        sg.answer_topk = answer;
        sg.grade = grade.value();
        int positives = 0;
        for (int flag : sg.in_k) positives += flag;
        sg.p = static_cast<double>(positives) / sg.k;
        sg.r = static_cast<double>(positives) / sg.np;
        produced[t] = std::move(sg);
      } catch (const std::exception& e) {
        task_errors[t] = e.what();
      }
    });

    std::vector<dataset::GradedSample> graded;
    json failures = json::array();
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      if (produced[t].has_value()) {
        graded.push_back(std::move(*produced[t]));
      } else {
        failures.push_back({{"id", tasks[t].sr->id},
                            {"E", tasks[t].sr->e},
                            {"Nc", tasks[t].sr->nc},
                            {"Np", tasks[t].sr->np},
                            {"K", tasks[t].k},
                            {"error", task_errors[t]}});
      }
    }

    const fs::path out_path = fs::path(options.out_dir) / "graded.jsonl";
    auto out = open_output(out_path);
    dataset::write_graded(out, graded);
    if (!failures.empty()) {
      auto fail_out = open_output(fs::path(options.out_dir) / "grade_failures.jsonl");
      for (const auto& f : failures) fail_out << f.dump() << '\n';
    }
    std::cout << "graded " << graded.size() << " of " << tasks.size() << " samples -> "
              << out_path.string();
    if (!failures.empty()) std::cout << " (" << failures.size() << " skipped)";
    std::cout << '\n';
    return failures.empty() ? kExitOk : kExitContent;
  });
}

namespace {

using analysis::CorrelationResult;
using analysis::Measure;
using analysis::Method;
using analysis::RatioBucket;
using analysis::SegmentKey;

// Assembles the embedding-by-bucket matrix of one measure/method/subset.
analysis::HeatmapMatrix coefficient_matrix(const std::vector<const CorrelationResult*>& results,
                                           const std::string& statistic) {
  analysis::HeatmapMatrix matrix;
  matrix.statistic = statistic;
  std::map<std::pair<std::string, RatioBucket>, double> cells;
  std::set<std::string> rows;
  std::set<RatioBucket> cols;
  for (const CorrelationResult* r : results) {
    const auto bucket = std::get<RatioBucket>(r->segment.slice);
    cells[{r->segment.embedding, bucket}] = r->coefficient;
    rows.insert(r->segment.embedding);
    cols.insert(bucket);
  }
  matrix.row_labels.assign(rows.begin(), rows.end());
  matrix.col_labels.assign(cols.begin(), cols.end());
  for (const std::string& row : matrix.row_labels) {
    auto& row_cells = matrix.cells.emplace_back();
    for (const RatioBucket& col : matrix.col_labels) {
      auto it = cells.find({row, col});
      if (it == cells.end()) {
        row_cells.emplace_back(std::nullopt);
      } else {
        row_cells.emplace_back(std::vector<double>{it->second});
      }
    }
  }
  return matrix;
}

std::string ndcg_mode_label(metrics::NdcgMode mode) {
  return mode == metrics::NdcgMode::ObservedIdeal ? "observed" : "corpus";
}

std::string rounding_label(analysis::RoundingMode mode) {
  return mode == analysis::RoundingMode::OneDecimal ? "decimal" : "significant";
}

}  // namespace

int cmd_analyze(const AnalyzeOptions& options) {
  return guarded([&]() {
    if (options.alpha_grid.empty() || options.methods.empty() || options.min_count < 1) {
      std::cerr << "error: the alpha grid, methods, and min-count must all be non-degenerate\n";
      return kExitUsage;
    }
    std::vector<metrics::Alpha> grid;
    grid.reserve(options.alpha_grid.size());
    for (double a : options.alpha_grid) {
      if (!(a >= 0.0 && a <= 1.0)) {
        std::cerr << "error: alpha grid values must lie in [0, 1]\n";
        return kExitUsage;
      }
      grid.emplace_back(a);
    }
    std::vector<Method> methods;
    for (Method m : options.methods) {
      if (std::find(methods.begin(), methods.end(), m) == methods.end()) methods.push_back(m);
    }

    auto graded_in = open_input(options.graded);
    const std::vector<dataset::GradedSample> graded = dataset::load_graded(graded_in);
    std::optional<std::vector<dataset::RankedSample>> ranked;
    if (options.ranked.has_value()) {
      auto ranked_in = open_input(*options.ranked);
      ranked = dataset::load_ranked(ranked_in);
    }
    const bool fe_enabled = ranked.has_value();
    const std::vector<analysis::AnalysisSample> samples =
        analysis::join_samples(graded, ranked.has_value() ? &*ranked : nullptr);

    std::vector<Measure> measures = {Measure::Precision, Measure::Recall, Measure::F};
    if (fe_enabled) measures.push_back(Measure::Fe);
    measures.insert(measures.end(), {Measure::T, Measure::Tu, Measure::Ndcg});

    const analysis::SegmentMap all_segments =
        analysis::segment(samples, 1, options.rounding);
    const analysis::SegmentMap segments =
        analysis::segment(samples, options.min_count, options.rounding);

    std::vector<CorrelationResult> results;
    json undefined_cells = json::array();
    for (Method method : methods) {
      for (const auto& [key, seg_samples] : segments) {
        for (Measure measure : measures) {
          std::optional<CorrelationResult> r = analysis::segment_correlation(
              seg_samples, measure, method, grid, options.ndcg_mode, key);
          if (r.has_value()) {
            results.push_back(std::move(*r));
          } else {
            undefined_cells.push_back({{"segment", report::to_json(key)},
                                       {"measure", analysis::measure_label(measure)},
                                       {"method", analysis::method_label(method)}});
          }
        }
      }
    }

    const fs::path out_dir(options.out_dir);
    {
      auto out = open_output(out_dir / "correlations.json");
      out << json({{"results", report::results_json(results)}}).dump(2) << '\n';
    }

    // Per-subset matrices and differences cover the ratio-bucket family.
    std::set<std::string> subsets;
    for (const auto& [key, _] : segments) subsets.insert(key.subset);
    std::vector<std::string> diff_files;
    std::vector<std::string> skipped_diffs;
    for (Method method : methods) {
      for (const std::string& subset : subsets) {
        std::map<Measure, std::vector<const CorrelationResult*>> by_measure;
        for (const CorrelationResult& r : results) {
          if (r.method == method && r.segment.subset == subset &&
              std::holds_alternative<RatioBucket>(r.segment.slice)) {
            by_measure[r.measure].push_back(&r);
          }
        }
        for (const auto& [measure, rs] : by_measure) {
          const std::string name = "correlation_" + subset + "_" +
                                   analysis::measure_label(measure) + "_" +
                                   analysis::method_label(method) + ".csv";
          auto out = open_output(out_dir / name);
          report::write_matrix_csv(
              out, coefficient_matrix(rs, analysis::measure_label(measure) + " vs grade (" +
                                              analysis::method_label(method) + ")"));
        }

        std::vector<std::pair<Measure, Measure>> pairs = {
            {Measure::T, Measure::F},
            {Measure::Tu, Measure::T},
            {Measure::Ndcg, Measure::F},
            {Measure::T, Measure::Ndcg}};
        if (fe_enabled) pairs.insert(pairs.begin() + 3, {Measure::Fe, Measure::F});
        for (const auto& [ma, mb] : pairs) {
          const std::string pair_name = analysis::measure_label(ma) + "_minus_" +
                                        analysis::measure_label(mb) + "_" +
                                        analysis::method_label(method);
          auto in_a = by_measure.find(ma);
          auto in_b = by_measure.find(mb);
          if (in_a == by_measure.end() || in_b == by_measure.end()) {
            skipped_diffs.push_back(subset + ":" + pair_name);
            continue;
          }
          // Restrict both operands to the segments where both are defined.
          std::set<SegmentKey> keys_a;
          for (const CorrelationResult* r : in_a->second) keys_a.insert(r->segment);
          std::vector<CorrelationResult> a_aligned;
          std::vector<CorrelationResult> b_aligned;
          std::set<SegmentKey> keys_both;
          for (const CorrelationResult* r : in_b->second) {
            if (keys_a.count(r->segment) > 0) {
              b_aligned.push_back(*r);
              keys_both.insert(r->segment);
            }
          }
          for (const CorrelationResult* r : in_a->second) {
            if (keys_both.count(r->segment) > 0) a_aligned.push_back(*r);
          }
          if (a_aligned.empty()) {
            skipped_diffs.push_back(subset + ":" + pair_name);
            continue;
          }
          const std::string name = "diff_" + subset + "_" + pair_name + ".csv";
          auto out = open_output(out_dir / name);
          report::write_matrix_csv(out, analysis::correlation_difference(a_aligned, b_aligned));
          diff_files.push_back(name);
        }
      }
    }

    // Grade distributions cover every subset with retained bucket segments;
    // bucket segments are disjoint, so concatenation has no duplicates.
    for (const std::string& subset : subsets) {
      std::vector<const analysis::AnalysisSample*> subset_samples;
      for (const auto& [key, seg_samples] : segments) {
        if (key.subset == subset && std::holds_alternative<RatioBucket>(key.slice)) {
          subset_samples.insert(subset_samples.end(), seg_samples.begin(), seg_samples.end());
        }
      }
      if (subset_samples.empty()) continue;
      auto out = open_output(out_dir / ("grade_distribution_" + subset + ".csv"));
      report::write_matrix_csv(out,
                               analysis::grade_distribution(subset_samples, options.rounding));
    }

    {
      std::vector<CorrelationResult> width_results;
      for (const CorrelationResult& r : results) {
        if (std::holds_alternative<analysis::Width>(r.segment.slice)) {
          width_results.push_back(r);
        }
      }
      auto out = open_output(out_dir / "narrow_wide.csv");
      report::write_width_summary_csv(out, width_results);
    }

    std::size_t bucket_segments = 0;
    for (const auto& [key, _] : segments) {
      if (std::holds_alternative<RatioBucket>(key.slice)) ++bucket_segments;
    }
    std::vector<std::string> method_labels;
    for (Method m : methods) method_labels.push_back(analysis::method_label(m));
    json summary = {
        {"settings",
         {{"alpha_grid", options.alpha_grid},
          {"min_count", options.min_count},
          {"ndcg_mode", ndcg_mode_label(options.ndcg_mode)},
          {"ratio_rounding", rounding_label(options.rounding)},
          {"methods", method_labels},
          {"fe_enabled", fe_enabled}}},
        {"counts",
         {{"graded_samples", graded.size()},
          {"segments_before_min_count", all_segments.size()},
          {"segments_retained", segments.size()},
          {"bucket_segments_retained", bucket_segments},
          {"width_segments_retained", segments.size() - bucket_segments},
          {"results_defined", results.size()},
          {"results_undefined", undefined_cells.size()}}},
        {"undefined_cells", undefined_cells},
        {"skipped_differences", skipped_diffs}};
    if (!fe_enabled) {
      summary["notes"] = json::array(
          {"estimated F was skipped: no ranked file was given, so top-2K windows are unknown"});
    }
    auto out = open_output(out_dir / "summary.json");
    out << summary.dump(2) << '\n';

    std::cout << "analyzed " << graded.size() << " graded samples: " << segments.size()
              << " segments retained, " << results.size() << " correlations -> "
              << options.out_dir << '\n';
    return kExitOk;
  });
}

}  // namespace rreval::cli
