#pragma once

#include <stdexcept>
#include <string>

namespace rreval {

// Precondition or domain violation in a pure computation (bad cutoff, empty
// label list, zero-norm vector, ...). Derives from std::invalid_argument so
// language bindings surface it as an argument error.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// A JSON Lines stream contained a line that is not a JSON object.
// Carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A record is missing a required key or holds a value of the wrong type.
// Carries the key name and the 1-based line number.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::size_t line, std::string key, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": key \"" + key + "\": " + what),
        line_(line),
        key_(std::move(key)) {}

  std::size_t line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  std::size_t line_;
  std::string key_;
};

// Two records that must describe the same sample do not match (unknown id,
// diverging (id, E, Nc, Np) tuples, vector pools larger than the text pools).
class CrossLinkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two result sets that must cover identical segments do not.
class AlignmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A correlation coefficient does not exist for the given series
// (constant input, degenerate grid).
class UndefinedCorrelation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An HTTP request could not be delivered after the configured retries.
class DeliveryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The judge endpoint misbehaved in a non-transport way (empty completion,
// malformed response body, unusable configuration).
class JudgeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The judge's scoring reply was not a bare grade digit. Carries the raw reply.
class GradeParseError : public JudgeError {
 public:
  explicit GradeParseError(std::string raw)
      : JudgeError("reply is not a single grade digit: \"" + raw + "\""), raw_(std::move(raw)) {}

  const std::string& raw_reply() const { return raw_; }

 private:
  std::string raw_;
};

// A file could not be opened, read, or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rreval
