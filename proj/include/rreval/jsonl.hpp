#pragma once

#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rreval/errors.hpp"

// Small helpers for reading JSON Lines streams with line-accurate errors.
namespace rreval::jsonl {

using json = nlohmann::json;

// Calls fn(line_number, object) for every non-blank line; line numbers are
// 1-based. Throws ParseError when a line is not a JSON object.
void for_each_object(std::istream& in, const std::function<void(std::size_t, json&&)>& fn);

// Field accessors; each throws SchemaError naming the key when it is missing
// or of the wrong type.
const json& require_key(const json& obj, const char* key, std::size_t line);
std::string get_string(const json& obj, const char* key, std::size_t line);
int get_int(const json& obj, const char* key, std::size_t line);
std::vector<std::string> get_string_array(const json& obj, const char* key, std::size_t line);
std::vector<int> get_int_array(const json& obj, const char* key, std::size_t line);
std::vector<double> get_number_array(const json& obj, const char* key, std::size_t line);
std::vector<std::vector<double>> get_number_matrix(const json& obj, const char* key,
                                                   std::size_t line);
std::optional<std::string> get_optional_string(const json& obj, const char* key,
                                               std::size_t line);

}  // namespace rreval::jsonl
