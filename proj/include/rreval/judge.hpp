#pragma once

#include <chrono>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

// Answer generation and answer grading through a chat-completions endpoint,
// plus an offline mock with identical interfaces for deterministic runs.
namespace rreval::judge {

struct JudgeConfig {
  std::string endpoint_url;
  std::string model_name;
  std::string api_key_env;  // name of the env var holding the bearer token
  double temperature = 0.0;
  int max_attempts = 3;
  std::chrono::milliseconds backoff_base{250};
  std::string audit_log_path;  // JSON Lines audit of every exchange; empty = off

  void check() const;
};

// A grade in 1..5; construction rejects anything else.
class GradeValue {
 public:
  explicit GradeValue(int value);

  int value() const { return value_; }

 private:
  int value_;
};

struct Prompt {
  std::string system;
  std::string user;
};

// Prompt asking the model to answer the query from the numbered reference
// documents and nothing else. Throws InvalidInput on an empty reference list.
Prompt build_generation_prompt(const std::string& query, std::span<const std::string> references);

// Prompt asking the model to grade how close a response comes to the ideal
// response, answering with a single digit.
Prompt build_scoring_prompt(const std::string& query, const std::string& response,
                            const std::string& ideal);

// Accepts exactly one digit 1-5, optionally followed by a period, after
// trimming surrounding whitespace. Anything else raises GradeParseError
// carrying the raw reply.
GradeValue parse_grade_reply(const std::string& raw);

class Judge {
 public:
  virtual ~Judge() = default;

  virtual std::string generate(const std::string& query,
                               std::span<const std::string> references) = 0;
  virtual GradeValue score(const std::string& query, const std::string& response,
                           const std::string& ideal) = 0;
};

// Judge backed by a chat-completions endpoint. Transport failures and non-200
// statuses are retried with exponential backoff up to max_attempts; content
// problems (empty completion, unparseable grade) are not retried.
class LlmJudge : public Judge {
 public:
  explicit LlmJudge(JudgeConfig config);

  std::string generate(const std::string& query,
                       std::span<const std::string> references) override;
  GradeValue score(const std::string& query, const std::string& response,
                   const std::string& ideal) override;

 private:
  std::string complete(const Prompt& prompt);
  void audit(const Prompt& prompt, int attempt, int status, const std::string& reply,
             const std::string& error);

  JudgeConfig config_;
  std::string api_key_;
  std::mutex audit_mutex_;
};

// Deterministic stand-in: generation echoes the query under a seed tag and
// lists the references as numbered lines; scoring counts how many reference
// lines the response shares with the ideal and maps the fraction onto 1..5.
class MockJudge : public Judge {
 public:
  explicit MockJudge(long long seed);

  std::string generate(const std::string& query,
                       std::span<const std::string> references) override;
  GradeValue score(const std::string& query, const std::string& response,
                   const std::string& ideal) override;

 private:
  long long seed_;
};

std::unique_ptr<Judge> mock_judge(long long seed);

// One-shot conveniences over a temporary LlmJudge.
std::string generate_response(const JudgeConfig& config, const std::string& query,
                              std::span<const std::string> references);
GradeValue score_response(const JudgeConfig& config, const std::string& query,
                          const std::string& response, const std::string& ideal);

}  // namespace rreval::judge
