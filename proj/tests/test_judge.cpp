#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "rreval/errors.hpp"
#include "rreval/judge.hpp"
#include "support/local_server.hpp"

using rreval::DeliveryError;
using rreval::GradeParseError;
using rreval::InvalidInput;
using rreval::IoError;
using rreval::JudgeError;
using namespace rreval::judge;

namespace {

JudgeConfig local_config(const std::string& url) {
  JudgeConfig config;
  config.endpoint_url = url;
  config.model_name = "test-judge";
  config.max_attempts = 3;
  config.backoff_base = std::chrono::milliseconds(1);
  return config;
}

// Serves a fixed completion text through the chat-completions shape.
nlohmann::json completion_body(const std::string& content) {
  return {{"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}}};
}

}  // namespace

TEST_SUITE("judge") {

TEST_CASE("generation prompt lists the numbered references") {
  const std::vector<std::string> refs{"first doc", "second doc"};
  const Prompt prompt = build_generation_prompt("what is up?", refs);
  CHECK(prompt.system ==
        "You are an AI assistant that uses reference documents to respond to a given query.");
  CHECK(prompt.user ==
        "Please respond to the following query according to the information provided in the "
        "reference documents. Be sure to only use what is in the reference documents to respond "
        "to the query and nothing else.\n\nQuery:\nwhat is up?\n\nReference documents:\n"
        "[1] first doc\n[2] second doc");
  CHECK_THROWS_AS(build_generation_prompt("q", std::vector<std::string>{}), InvalidInput);
}

TEST_CASE("scoring prompt carries the rubric and the three texts") {
  const Prompt prompt = build_scoring_prompt("the query", "a response", "the ideal");
  CHECK(prompt.system ==
        "You are an AI assistant who compares a response to its ideal response. Given a query, "
        "a response, and an ideal response, determine how close the response is to the ideal "
        "response. Return only a single digit (1, 2, 3, 4, or 5) with no explanations.");
  CHECK(prompt.user ==
        "RUBRIC\n"
        "1 – The response includes substantially less of the relevant information than the "
        "ideal response.\n"
        "2 – The response includes about half of the relevant information present in the ideal "
        "response.\n"
        "3 – The response includes most of the relevant information present in the ideal "
        "response.\n"
        "4 – The response includes nearly all relevant information present in the ideal "
        "response.\n"
        "5 – The response includes all relevant information present in the ideal response."
        "\n\nQuery: the query\nResponse: a response\nIdeal Response: the ideal");
}

TEST_CASE("grade replies parse strictly") {
  CHECK(parse_grade_reply("3").value() == 3);
  CHECK(parse_grade_reply(" 5 \n").value() == 5);
  CHECK(parse_grade_reply("1.").value() == 1);
  CHECK(parse_grade_reply("\t4.\n").value() == 4);
  for (const char* bad : {"", "0", "6", "33", "4 stars", "grade: 2", "2,", ".3"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_grade_reply(bad), GradeParseError);
  }
  try {
    parse_grade_reply("4 stars");
    FAIL("expected GradeParseError");
  } catch (const GradeParseError& e) {
    CHECK(e.raw_reply() == "4 stars");
  }
}

TEST_CASE("grade values reject out-of-range input") {
  CHECK(GradeValue(1).value() == 1);
  CHECK(GradeValue(5).value() == 5);
  CHECK_THROWS_AS(GradeValue(0), InvalidInput);
  CHECK_THROWS_AS(GradeValue(6), InvalidInput);
}

TEST_CASE("config check rejects unusable settings") {
  JudgeConfig config = local_config("http://127.0.0.1:1/v1");
  CHECK_NOTHROW(config.check());
  config.model_name.clear();
  CHECK_THROWS_AS(config.check(), InvalidInput);
  config = local_config("");
  CHECK_THROWS_AS(config.check(), InvalidInput);
  config = local_config("http://127.0.0.1:1/v1");
  config.max_attempts = 0;
  CHECK_THROWS_AS(config.check(), InvalidInput);
  config = local_config("http://127.0.0.1:1/v1");
  config.temperature = -1.0;
  CHECK_THROWS_AS(config.check(), InvalidInput);
}

TEST_CASE("mock generation is deterministic and numbered") {
  MockJudge judge(7);
  const std::vector<std::string> refs{"doc a", "doc b"};
  const std::string answer = judge.generate("the query", refs);
  CHECK(answer == "[mock:7] the query\n[1] doc a\n[2] doc b");
  CHECK(judge.generate("the query", refs) == answer);
  CHECK(MockJudge(7).generate("the query", refs) == answer);
  CHECK(MockJudge(8).generate("the query", refs) ==
        "[mock:8] the query\n[1] doc a\n[2] doc b");
  CHECK_THROWS_AS(judge.generate("q", std::vector<std::string>{}), InvalidInput);
}

TEST_CASE("mock scoring counts shared reference lines") {
  MockJudge judge(7);
  const std::string ideal = "[mock:7] q\n[1] a\n[2] b\n[3] c\n[4] d";
  // 4 of 4 shared -> 5; 2 of 4 -> 3; 0 of 4 -> 1.
  CHECK(judge.score("q", ideal, ideal).value() == 5);
  CHECK(judge.score("q", "[mock:7] q\n[1] a\n[2] b", ideal).value() == 3);
  CHECK(judge.score("q", "[mock:7] q\n[1] x\n[2] y", ideal).value() == 1);
  // 1 of 4 -> 1 + round(1) = 2; 3 of 4 -> 1 + round(3) = 4.
  CHECK(judge.score("q", "[1] a", ideal).value() == 2);
  CHECK(judge.score("q", "[1] a\n[2] b\n[3] c", ideal).value() == 4);
  // Duplicate lines in the response cannot double-count an ideal line.
  CHECK(judge.score("q", "[1] a\n[2] a\n[3] a", ideal).value() == 2);
  // Renumbering does not matter; only the texts do.
  CHECK(judge.score("q", "[9] a\n[8] b\n[7] c\n[6] d", ideal).value() == 5);
  CHECK_THROWS_AS(judge.score("q", "[1] a", "no reference lines"), InvalidInput);
}

TEST_CASE("mock judge factory returns a working judge") {
  auto judge = mock_judge(3);
  const std::string answer = judge->generate("q", std::vector<std::string>{"only"});
  CHECK(answer == "[mock:3] q\n[1] only");
  CHECK(judge->score("q", answer, answer).value() == 5);
}

TEST_CASE("llm judge round trip with bearer auth") {
  std::atomic<int> calls{0};
  testsupport::LocalServer server(
      "/v1/chat/completions", [&calls](const httplib::Request& req, httplib::Response& res) {
        calls.fetch_add(1);
        CHECK(req.get_header_value("Authorization") == "Bearer judge-key");
        const auto body = nlohmann::json::parse(req.body);
        CHECK(body.at("model") == "test-judge");
        CHECK(body.at("temperature") == 0.0);
        REQUIRE(body.at("messages").size() == 2);
        CHECK(body.at("messages")[0].at("role") == "system");
        CHECK(body.at("messages")[1].at("role") == "user");
        const std::string user = body.at("messages")[1].at("content");
        if (user.rfind("RUBRIC", 0) == 0) {
          res.set_content(completion_body("4").dump(), "application/json");
        } else {
          res.set_content(completion_body("a fine answer").dump(), "application/json");
        }
      });

  setenv("RREVAL_TEST_JUDGE_KEY", "judge-key", 1);
  JudgeConfig config = local_config(server.url("/v1/chat/completions"));
  config.api_key_env = "RREVAL_TEST_JUDGE_KEY";
  LlmJudge judge(config);
  CHECK(judge.generate("q", std::vector<std::string>{"ref"}) == "a fine answer");
  CHECK(judge.score("q", "resp", "ideal").value() == 4);
  CHECK(calls.load() == 2);
}

TEST_CASE("llm judge retries transport and status failures") {
  std::atomic<int> calls{0};
  testsupport::LocalServer server("/c", [&calls](const httplib::Request&,
                                                 httplib::Response& res) {
    if (calls.fetch_add(1) < 2) {
      res.status = 503;
      return;
    }
    res.set_content(completion_body("2").dump(), "application/json");
  });
  LlmJudge judge(local_config(server.url("/c")));
  CHECK(judge.score("q", "r", "i").value() == 2);
  CHECK(calls.load() == 3);
}

TEST_CASE("llm judge gives up after max attempts") {
  JudgeConfig config = local_config("http://127.0.0.1:1/c");
  config.max_attempts = 2;
  LlmJudge judge(config);
  CHECK_THROWS_AS(judge.score("q", "r", "i"), DeliveryError);
}

TEST_CASE("content failures are not retried") {
  std::atomic<int> calls{0};
  testsupport::LocalServer server("/c",
                                  [&calls](const httplib::Request&, httplib::Response& res) {
                                    calls.fetch_add(1);
                                    res.set_content(completion_body("maybe a 3?").dump(),
                                                    "application/json");
                                  });
  LlmJudge judge(local_config(server.url("/c")));
  CHECK_THROWS_AS(judge.score("q", "r", "i"), GradeParseError);
  CHECK(calls.load() == 1);

  calls = 0;
  testsupport::LocalServer empty("/c",
                                 [&calls](const httplib::Request&, httplib::Response& res) {
                                   calls.fetch_add(1);
                                   res.set_content(completion_body("  \n").dump(),
                                                   "application/json");
                                 });
  LlmJudge generator(local_config(empty.url("/c")));
  CHECK_THROWS_AS(generator.generate("q", std::vector<std::string>{"ref"}), JudgeError);
  CHECK(calls.load() == 1);
}

TEST_CASE("malformed completion bodies raise judge errors") {
  testsupport::LocalServer not_json("/c",
                                    [](const httplib::Request&, httplib::Response& res) {
                                      res.set_content("no json here", "text/plain");
                                    });
  CHECK_THROWS_AS(LlmJudge(local_config(not_json.url("/c"))).score("q", "r", "i"),
                  JudgeError);

  testsupport::LocalServer no_choices("/c",
                                      [](const httplib::Request&, httplib::Response& res) {
                                        res.set_content("{\"noise\": true}",
                                                        "application/json");
                                      });
  CHECK_THROWS_AS(LlmJudge(local_config(no_choices.url("/c"))).score("q", "r", "i"),
                  JudgeError);
}

TEST_CASE("missing key variable fails at construction") {
  JudgeConfig config = local_config("http://127.0.0.1:1/c");
  config.api_key_env = "RREVAL_TEST_UNSET_JUDGE_KEY";
  unsetenv("RREVAL_TEST_UNSET_JUDGE_KEY");
  CHECK_THROWS_AS(LlmJudge{config}, JudgeError);
}

TEST_CASE("audit log records every attempt") {
  const auto dir = std::filesystem::temp_directory_path() / "rreval_judge_audit";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto log_path = (dir / "audit.jsonl").string();

  std::atomic<int> calls{0};
  testsupport::LocalServer server("/c", [&calls](const httplib::Request&,
                                                 httplib::Response& res) {
    if (calls.fetch_add(1) == 0) {
      res.status = 500;
      return;
    }
    res.set_content(completion_body("5").dump(), "application/json");
  });
  JudgeConfig config = local_config(server.url("/c"));
  config.audit_log_path = log_path;
  LlmJudge judge(config);
  CHECK(judge.score("q", "r", "i").value() == 5);

  std::ifstream in(log_path);
  std::vector<nlohmann::json> entries;
  std::string line;
  while (std::getline(in, line)) entries.push_back(nlohmann::json::parse(line));
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].at("attempt") == 1);
  CHECK(entries[0].at("status") == 500);
  CHECK(entries[1].at("attempt") == 2);
  CHECK(entries[1].at("status") == 200);
  CHECK(entries[1].at("model") == "test-judge");
  CHECK(entries[1].at("user").get<std::string>().rfind("RUBRIC", 0) == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("unwritable audit log fails at construction") {
  JudgeConfig config = local_config("http://127.0.0.1:1/c");
  config.audit_log_path = "/nonexistent-dir/audit.jsonl";
  CHECK_THROWS_AS(LlmJudge{config}, IoError);
}

TEST_CASE("one-shot helpers run a full exchange") {
  testsupport::LocalServer server("/c", [](const httplib::Request& req,
                                           httplib::Response& res) {
    const auto body = nlohmann::json::parse(req.body);
    const std::string user = body.at("messages")[1].at("content");
    res.set_content(
        completion_body(user.rfind("RUBRIC", 0) == 0 ? "3" : "generated").dump(),
        "application/json");
  });
  const JudgeConfig config = local_config(server.url("/c"));
  CHECK(generate_response(config, "q", std::vector<std::string>{"ref"}) == "generated");
  CHECK(score_response(config, "q", "r", "i").value() == 3);
}

}  // TEST_SUITE
