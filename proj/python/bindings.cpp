#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rreval/analysis.hpp"
#include "rreval/cli.hpp"
#include "rreval/dataset.hpp"
#include "rreval/errors.hpp"
#include "rreval/judge.hpp"
#include "rreval/metrics.hpp"
#include "rreval/ranker.hpp"

namespace py = pybind11;

namespace {

rreval::metrics::Alpha make_alpha(double value) { return rreval::metrics::Alpha(value); }

rreval::metrics::NdcgMode parse_ndcg_mode(const std::string& mode) {
  if (mode == "observed") return rreval::metrics::NdcgMode::ObservedIdeal;
  if (mode == "corpus") return rreval::metrics::NdcgMode::CorpusIdeal;
  throw rreval::InvalidInput("ndcg mode must be \"observed\" or \"corpus\"");
}

rreval::analysis::RoundingMode parse_rounding(const std::string& rounding) {
  if (rounding == "decimal") return rreval::analysis::RoundingMode::OneDecimal;
  if (rounding == "significant") return rreval::analysis::RoundingMode::OneSignificantDigit;
  throw rreval::InvalidInput("rounding must be \"decimal\" or \"significant\"");
}

rreval::analysis::Method parse_method_or_throw(const std::string& label) {
  const auto method = rreval::analysis::parse_method(label);
  if (!method.has_value()) {
    throw rreval::InvalidInput("unknown correlation method \"" + label +
                               "\"; choose from spearman, pearson, kendall-b, kendall-c");
  }
  return *method;
}

}  // namespace

PYBIND11_MODULE(_rreval, m) {
  m.doc() = "Top-K retrieval quality measures, ranking, offline judging, and "
            "grade-correlation analysis";
  m.attr("__version__") = "0.1.0";

  py::register_exception<rreval::InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<rreval::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<rreval::SchemaError>(m, "SchemaError", PyExc_ValueError);
  py::register_exception<rreval::CrossLinkError>(m, "CrossLinkError", PyExc_ValueError);
  py::register_exception<rreval::AlignmentError>(m, "AlignmentError", PyExc_ValueError);
  py::register_exception<rreval::UndefinedCorrelation>(m, "UndefinedCorrelation",
                                                       PyExc_ArithmeticError);
  py::register_exception<rreval::DeliveryError>(m, "DeliveryError", PyExc_ConnectionError);
  py::register_exception<rreval::IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<rreval::JudgeError>(m, "JudgeError", PyExc_RuntimeError);
  py::register_exception<rreval::GradeParseError>(m, "GradeParseError", PyExc_ValueError);

  // --- measures -------------------------------------------------------------

  py::class_<rreval::metrics::TopKOutcome>(m, "TopKOutcome",
                                           "Binary relevance outcome of one top-K selection")
      .def_static(
          "from_labels",
          [](std::vector<int> labels, int total_positives, int total_candidates) {
            return rreval::metrics::TopKOutcome::from_labels(std::move(labels),
                                                             total_positives, total_candidates);
          },
          py::arg("labels_top_k"), py::arg("total_positives"), py::arg("total_candidates"),
          "Build from the top-K relevance flags alone")
      .def_static(
          "from_window",
          [](std::vector<int> window, int k, int total_positives, int total_candidates) {
            return rreval::metrics::TopKOutcome::from_window(std::move(window), k,
                                                             total_positives, total_candidates);
          },
          py::arg("labels_top_2k"), py::arg("k"), py::arg("total_positives"),
          py::arg("total_candidates"),
          "Build from the top-min(2K, pool) window; its first k entries are the top K")
      .def_readonly("k", &rreval::metrics::TopKOutcome::k)
      .def_readonly("labels_top_k", &rreval::metrics::TopKOutcome::labels_top_k)
      .def_readonly("labels_top_2k", &rreval::metrics::TopKOutcome::labels_top_2k)
      .def_readonly("positives_in_k", &rreval::metrics::TopKOutcome::positives_in_k)
      .def_readonly("negatives_in_k", &rreval::metrics::TopKOutcome::negatives_in_k)
      .def_readonly("total_positives", &rreval::metrics::TopKOutcome::total_positives)
      .def_readonly("total_candidates", &rreval::metrics::TopKOutcome::total_candidates)
      .def("__repr__", [](const rreval::metrics::TopKOutcome& o) {
        return "TopKOutcome(k=" + std::to_string(o.k) +
               ", positives_in_k=" + std::to_string(o.positives_in_k) +
               ", total_positives=" + std::to_string(o.total_positives) +
               ", total_candidates=" + std::to_string(o.total_candidates) + ")";
      });

  m.def("precision", &rreval::metrics::precision, py::arg("outcome"),
        "Fraction of the top K that is relevant");
  m.def("recall", &rreval::metrics::recall, py::arg("outcome"),
        "Fraction of the positive pool inside the top K");
  m.def(
      "f_measure",
      [](double alpha, const rreval::metrics::TopKOutcome& o) {
        return rreval::metrics::f_measure(make_alpha(alpha), o);
      },
      py::arg("alpha"), py::arg("outcome"),
      "Weighted harmonic mean of precision and recall, in its count form");
  m.def(
      "f_from_pr",
      [](double alpha, double p, double r) {
        return rreval::metrics::f_from_pr(make_alpha(alpha), p, r);
      },
      py::arg("alpha"), py::arg("precision"), py::arg("recall"),
      "The same F computed from precision and recall directly");
  m.def(
      "f_estimated",
      [](double alpha, const rreval::metrics::TopKOutcome& o) {
        return rreval::metrics::f_estimated(make_alpha(alpha), o);
      },
      py::arg("alpha"), py::arg("outcome"),
      "F with the positive pool estimated from the top-2K window");
  m.def(
      "t_measure",
      [](double alpha, const rreval::metrics::TopKOutcome& o) {
        return rreval::metrics::t_measure(make_alpha(alpha), o);
      },
      py::arg("alpha"), py::arg("outcome"),
      "Linear positives-vs-negatives trade-off with the negative term scaled by 1/K");
  m.def(
      "t_unnormalized",
      [](double alpha, const rreval::metrics::TopKOutcome& o) {
        return rreval::metrics::t_unnormalized(make_alpha(alpha), o);
      },
      py::arg("alpha"), py::arg("outcome"), "The unscaled linear trade-off");
  m.def(
      "alpha_from_beta",
      [](double beta) { return rreval::metrics::alpha_from_beta(beta).value(); },
      py::arg("beta"), "Alpha weight equivalent to the recall-weighted beta");
  m.def(
      "beta_squared",
      [](double alpha) { return rreval::metrics::beta_squared(make_alpha(alpha)); },
      py::arg("alpha"), "Squared beta equivalent to the alpha weight");
  m.def(
      "dcg", [](const std::vector<int>& labels) { return rreval::metrics::dcg(labels); },
      py::arg("labels"), "Discounted cumulative gain of binary relevance labels");
  m.def(
      "ndcg",
      [](const std::vector<int>& labels, const std::string& mode,
         std::optional<int> total_positives) {
        return rreval::metrics::ndcg(labels, parse_ndcg_mode(mode), total_positives);
      },
      py::arg("labels"), py::arg("mode") = "observed",
      py::arg("total_positives") = py::none(),
      "DCG normalized by the ideal ordering; mode \"corpus\" needs total_positives");

  // --- ranking --------------------------------------------------------------

  m.def(
      "cosine",
      [](const std::vector<double>& u, const std::vector<double>& v) {
        return rreval::ranker::cosine(u, v);
      },
      py::arg("u"), py::arg("v"), "Cosine similarity of two vectors");
  m.def(
      "rank_by_cosine",
      [](const std::vector<double>& q, const std::vector<std::vector<double>>& candidates) {
        return rreval::ranker::rank_by_cosine(q, candidates);
      },
      py::arg("query_vec"), py::arg("candidate_vecs"),
      "Candidate indices sorted by descending cosine similarity (stable on ties)");
  m.def(
      "pr_curve",
      [](const std::vector<int>& rank, int np, const std::vector<int>& ks) {
        const auto curve = rreval::ranker::pr_curve(rank, np, ks);
        return py::make_tuple(curve.precisions, curve.recalls);
      },
      py::arg("rank"), py::arg("total_positives"), py::arg("cutoffs"),
      "(precisions, recalls) at each cutoff of a ranking over indices 0..Nc-1 "
      "where indices below total_positives are the relevant ones");
  m.def(
      "labels_from_rank",
      [](const std::vector<int>& rank, int np) {
        return rreval::dataset::labels_from_rank(rank, np);
      },
      py::arg("rank"), py::arg("total_positives"),
      "Relevance flags of a rank slice: 1 where the index is below total_positives");
  m.def("subset_tag", &rreval::dataset::subset_tag, py::arg("sample_id"),
        "Subset tag of a sample id (the token before the first dash)");

  // --- judging --------------------------------------------------------------

  m.def(
      "generation_prompt",
      [](const std::string& query, const std::vector<std::string>& references) {
        const auto p = rreval::judge::build_generation_prompt(query, references);
        return py::make_tuple(p.system, p.user);
      },
      py::arg("query"), py::arg("references"),
      "(system, user) messages asking for an answer grounded in the references");
  m.def(
      "scoring_prompt",
      [](const std::string& query, const std::string& response, const std::string& ideal) {
        const auto p = rreval::judge::build_scoring_prompt(query, response, ideal);
        return py::make_tuple(p.system, p.user);
      },
      py::arg("query"), py::arg("response"), py::arg("ideal"),
      "(system, user) messages asking for a 1-5 grade against the ideal response");
  m.def(
      "parse_grade_reply",
      [](const std::string& raw) { return rreval::judge::parse_grade_reply(raw).value(); },
      py::arg("raw"), "Strictly parse a judge reply into a 1-5 grade");

  py::class_<rreval::judge::MockJudge>(
      m, "MockJudge",
      "Deterministic offline judge: generation echoes the query and references "
      "under a seed tag; scoring counts shared reference lines")
      .def(py::init<long long>(), py::arg("seed"))
      .def(
          "generate",
          [](rreval::judge::MockJudge& judge, const std::string& query,
             const std::vector<std::string>& references) {
            return judge.generate(query, references);
          },
          py::arg("query"), py::arg("references"))
      .def(
          "score",
          [](rreval::judge::MockJudge& judge, const std::string& query,
             const std::string& response, const std::string& ideal) {
            return judge.score(query, response, ideal).value();
          },
          py::arg("query"), py::arg("response"), py::arg("ideal"));

  // --- analysis -------------------------------------------------------------

  m.def(
      "correlate",
      [](const std::string& method, const std::vector<double>& x,
         const std::vector<double>& y) {
        return rreval::analysis::correlate(parse_method_or_throw(method), x, y);
      },
      py::arg("method"), py::arg("x"), py::arg("y"),
      "Correlation coefficient: spearman, pearson, kendall-b, or kendall-c");
  m.def(
      "ratio_bucket",
      [](int k, int np, const std::string& rounding) {
        return rreval::analysis::ratio_bucket(k, np, parse_rounding(rounding)).value();
      },
      py::arg("k"), py::arg("total_positives"), py::arg("rounding") = "decimal",
      "Bucketed K/Np ratio under \"decimal\" or \"significant\" rounding");
  m.def(
      "ratio_bucket_label",
      [](int k, int np, const std::string& rounding) {
        return rreval::analysis::ratio_bucket(k, np, parse_rounding(rounding)).label();
      },
      py::arg("k"), py::arg("total_positives"), py::arg("rounding") = "decimal",
      "Display label of the bucketed K/Np ratio");
  m.def("default_alpha_grid", &rreval::cli::default_alpha_grid,
        "The default alpha sweep: 0.05 to 0.95 in steps of 0.05");

  // --- dataset validation ---------------------------------------------------

  m.def(
      "validate_dataset",
      [](std::optional<std::string> query_texts, std::optional<std::string> ranked,
         std::optional<std::string> graded) {
        rreval::cli::ValidateOptions options;
        options.query_texts = std::move(query_texts);
        options.ranked = std::move(ranked);
        options.graded = std::move(graded);
        return rreval::cli::run_validation(options).dump();
      },
      py::arg("query_texts") = py::none(), py::arg("ranked") = py::none(),
      py::arg("graded") = py::none(),
      "Validate the given dataset files and return the report as a JSON string");
}
