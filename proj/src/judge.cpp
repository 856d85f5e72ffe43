#include "rreval/judge.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <thread>

#include "json.hpp"
#include "rreval/errors.hpp"
#include "rreval/http.hpp"

namespace rreval::judge {

namespace {

constexpr const char* kGenerationSystem =
    "You are an AI assistant that uses reference documents to respond to a given query.";

constexpr const char* kScoringSystem =
    "You are an AI assistant who compares a response to its ideal response. Given a query, a "
    "response, and an ideal response, determine how close the response is to the ideal response. "
    "Return only a single digit (1, 2, 3, 4, or 5) with no explanations.";

constexpr const char* kRubric =
    "RUBRIC\n"
    "1 – The response includes substantially less of the relevant information than the ideal "
    "response.\n"
    "2 – The response includes about half of the relevant information present in the ideal "
    "response.\n"
    "3 – The response includes most of the relevant information present in the ideal "
    "response.\n"
    "4 – The response includes nearly all relevant information present in the ideal "
    "response.\n"
    "5 – The response includes all relevant information present in the ideal response.";

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

// Joins references as "[1] text" lines, one per reference.
std::string numbered_references(std::span<const std::string> references) {
  std::string block;
  for (std::size_t i = 0; i < references.size(); ++i) {
    if (i > 0) block += '\n';
    block += "[" + std::to_string(i + 1) + "] " + references[i];
  }
  return block;
}

// Texts of the "[n] text" lines in a mock answer, in order.
std::vector<std::string> reference_lines(const std::string& answer) {
  std::vector<std::string> refs;
  std::size_t pos = 0;
  while (pos <= answer.size()) {
    std::size_t eol = answer.find('\n', pos);
    if (eol == std::string::npos) eol = answer.size();
    const std::string line = answer.substr(pos, eol - pos);
    if (line.size() >= 3 && line[0] == '[') {
      std::size_t digit_end = 1;
      while (digit_end < line.size() &&
             std::isdigit(static_cast<unsigned char>(line[digit_end]))) {
        ++digit_end;
      }
      if (digit_end > 1 && digit_end + 1 < line.size() && line[digit_end] == ']' &&
          line[digit_end + 1] == ' ') {
        refs.push_back(line.substr(digit_end + 2));
      }
    }
    if (eol == answer.size()) break;
    pos = eol + 1;
  }
  return refs;
}

}  // namespace

void JudgeConfig::check() const {
  if (endpoint_url.empty()) throw InvalidInput("judge endpoint URL is empty");
  if (model_name.empty()) throw InvalidInput("judge model name is empty");
  if (max_attempts < 1) throw InvalidInput("judge needs max_attempts >= 1");
  if (!(temperature >= 0.0)) throw InvalidInput("judge temperature must be nonnegative");
}

GradeValue::GradeValue(int value) : value_(value) {
  if (value < 1 || value > 5) {
    throw InvalidInput("grade must lie in 1..5, got " + std::to_string(value));
  }
}

Prompt build_generation_prompt(const std::string& query,
                               std::span<const std::string> references) {
  if (references.empty()) throw InvalidInput("generation prompt needs at least one reference");
  Prompt prompt;
  prompt.system = kGenerationSystem;
  prompt.user =
      "Please respond to the following query according to the information provided in the "
      "reference documents. Be sure to only use what is in the reference documents to respond to "
      "the query and nothing else.\n\nQuery:\n" +
      query + "\n\nReference documents:\n" + numbered_references(references);
  return prompt;
}

Prompt build_scoring_prompt(const std::string& query, const std::string& response,
                            const std::string& ideal) {
  Prompt prompt;
  prompt.system = kScoringSystem;
  prompt.user = std::string(kRubric) + "\n\nQuery: " + query + "\nResponse: " + response +
                "\nIdeal Response: " + ideal;
  return prompt;
}

GradeValue parse_grade_reply(const std::string& raw) {
  const std::string t = trim(raw);
  if (t.empty()) throw GradeParseError(raw);
  if (t[0] < '1' || t[0] > '5') throw GradeParseError(raw);
  if (t.size() == 1 || (t.size() == 2 && t[1] == '.')) {
    return GradeValue(t[0] - '0');
  }
  throw GradeParseError(raw);
}

LlmJudge::LlmJudge(JudgeConfig config) : config_(std::move(config)) {
  config_.check();
  if (!config_.api_key_env.empty()) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (key == nullptr) {
      throw JudgeError("environment variable \"" + config_.api_key_env +
                       "\" named for the judge key is not set");
    }
    api_key_ = key;
  }
  if (!config_.audit_log_path.empty()) {
    // Fail now rather than after the first completed request.
    std::ofstream probe(config_.audit_log_path, std::ios::app);
    if (!probe) throw IoError("cannot open audit log \"" + config_.audit_log_path + "\"");
  }
}

void LlmJudge::audit(const Prompt& prompt, int attempt, int status, const std::string& reply,
                     const std::string& error) {
  if (config_.audit_log_path.empty()) return;
  nlohmann::json entry = {{"endpoint", config_.endpoint_url}, {"model", config_.model_name},
                          {"attempt", attempt},               {"system", prompt.system},
                          {"user", prompt.user}};
  if (status > 0) entry["status"] = status;
  if (!reply.empty()) entry["reply"] = reply;
  if (!error.empty()) entry["error"] = error;
  std::lock_guard<std::mutex> lock(audit_mutex_);
  std::ofstream out(config_.audit_log_path, std::ios::app);
  out << entry.dump() << '\n';
}

std::string LlmJudge::complete(const Prompt& prompt) {
  const nlohmann::json request = {
      {"model", config_.model_name},
      {"temperature", config_.temperature},
      {"messages",
       {{{"role", "system"}, {"content", prompt.system}},
        {{"role", "user"}, {"content", prompt.user}}}}};
  std::vector<std::pair<std::string, std::string>> headers;
  if (!api_key_.empty()) headers.emplace_back("Authorization", "Bearer " + api_key_);

  std::string last_error;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(config_.backoff_base * (1LL << (attempt - 2)));
    }
    http::Response resp;
    try {
      resp = http::post_json(config_.endpoint_url, request.dump(), headers);
    } catch (const DeliveryError& e) {
      last_error = e.what();
      audit(prompt, attempt, 0, "", last_error);
      continue;
    }
    audit(prompt, attempt, resp.status, resp.body, "");
    if (resp.status != 200) {
      last_error = "HTTP " + std::to_string(resp.status);
      continue;
    }
    nlohmann::json body = nlohmann::json::parse(resp.body, nullptr, false);
    if (body.is_discarded()) throw JudgeError("completion reply is not JSON");
    try {
      return body.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception&) {
      throw JudgeError("completion reply has no choices[0].message.content string");
    }
  }
  throw DeliveryError("no completion after " + std::to_string(config_.max_attempts) +
                      " attempts: " + last_error);
}

std::string LlmJudge::generate(const std::string& query,
                               std::span<const std::string> references) {
  const std::string reply = complete(build_generation_prompt(query, references));
  if (trim(reply).empty()) throw JudgeError("empty completion");
  return reply;
}

GradeValue LlmJudge::score(const std::string& query, const std::string& response,
                           const std::string& ideal) {
  return parse_grade_reply(complete(build_scoring_prompt(query, response, ideal)));
}

MockJudge::MockJudge(long long seed) : seed_(seed) {}

std::string MockJudge::generate(const std::string& query,
                                std::span<const std::string> references) {
  if (references.empty()) throw InvalidInput("generation needs at least one reference");
  std::string answer = "[mock:" + std::to_string(seed_) + "] " + query;
  for (std::size_t i = 0; i < references.size(); ++i) {
    answer += "\n[" + std::to_string(i + 1) + "] " + references[i];
  }
  return answer;
}

GradeValue MockJudge::score(const std::string&, const std::string& response,
                            const std::string& ideal) {
  const std::vector<std::string> ideal_refs = reference_lines(ideal);
  if (ideal_refs.empty()) {
    throw InvalidInput("mock scoring needs an ideal response with reference lines");
  }
  std::map<std::string, int> budget;
  for (const std::string& ref : ideal_refs) ++budget[ref];
  std::size_t shared = 0;
  for (const std::string& ref : reference_lines(response)) {
    auto it = budget.find(ref);
    if (it != budget.end() && it->second > 0) {
      --it->second;
      ++shared;
    }
  }
  const long grade =
      1 + std::lround(4.0 * static_cast<double>(shared) / ideal_refs.size());
  return GradeValue(static_cast<int>(std::clamp(grade, 1L, 5L)));
}

std::unique_ptr<Judge> mock_judge(long long seed) {
  return std::make_unique<MockJudge>(seed);
}

std::string generate_response(const JudgeConfig& config, const std::string& query,
                              std::span<const std::string> references) {
  return LlmJudge(config).generate(query, references);
}

GradeValue score_response(const JudgeConfig& config, const std::string& query,
                          const std::string& response, const std::string& ideal) {
  return LlmJudge(config).score(query, response, ideal);
}

}  // namespace rreval::judge
