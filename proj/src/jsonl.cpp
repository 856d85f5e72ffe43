#include "rreval/jsonl.hpp"

#include <algorithm>

namespace rreval::jsonl {

namespace {

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

void for_each_object(std::istream& in, const std::function<void(std::size_t, json&&)>& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded()) throw ParseError(line_no, "malformed JSON");
    if (!obj.is_object()) throw ParseError(line_no, "line is not a JSON object");
    fn(line_no, std::move(obj));
  }
}

const json& require_key(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(line, key, "missing");
  return *it;
}

std::string get_string(const json& obj, const char* key, std::size_t line) {
  const json& v = require_key(obj, key, line);
  if (!v.is_string()) throw SchemaError(line, key, "expected a string");
  return v.get<std::string>();
}

int get_int(const json& obj, const char* key, std::size_t line) {
  const json& v = require_key(obj, key, line);
  if (!v.is_number_integer()) throw SchemaError(line, key, "expected an integer");
  return v.get<int>();
}

std::vector<std::string> get_string_array(const json& obj, const char* key, std::size_t line) {
  const json& v = require_key(obj, key, line);
  if (!v.is_array()) throw SchemaError(line, key, "expected an array of strings");
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_string()) throw SchemaError(line, key, "expected an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<int> get_int_array(const json& obj, const char* key, std::size_t line) {
  const json& v = require_key(obj, key, line);
  if (!v.is_array()) throw SchemaError(line, key, "expected an array of integers");
  std::vector<int> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number_integer()) throw SchemaError(line, key, "expected an array of integers");
    out.push_back(e.get<int>());
  }
  return out;
}

std::vector<double> get_number_array(const json& obj, const char* key, std::size_t line) {
  const json& v = require_key(obj, key, line);
  if (!v.is_array()) throw SchemaError(line, key, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number()) throw SchemaError(line, key, "expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<std::vector<double>> get_number_matrix(const json& obj, const char* key,
                                                   std::size_t line) {
  const json& v = require_key(obj, key, line);
  if (!v.is_array()) throw SchemaError(line, key, "expected an array of number arrays");
  std::vector<std::vector<double>> out;
  out.reserve(v.size());
  for (const auto& row : v) {
    if (!row.is_array()) throw SchemaError(line, key, "expected an array of number arrays");
    std::vector<double> r;
    r.reserve(row.size());
    for (const auto& e : row) {
      if (!e.is_number()) throw SchemaError(line, key, "expected an array of number arrays");
      r.push_back(e.get<double>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::optional<std::string> get_optional_string(const json& obj, const char* key,
                                               std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw SchemaError(line, key, "expected a string");
  return it->get<std::string>();
}

}  // namespace rreval::jsonl
