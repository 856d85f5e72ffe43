#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

// Thin wrapper around the bundled HTTP client so only one translation unit
// pays for its header.
namespace rreval::http {

struct Response {
  int status = 0;
  std::string body;
};

// "http://host:port/path" -> {"http://host:port", "/path"}.
// Throws InvalidInput when the URL has no scheme.
struct UrlParts {
  std::string base;
  std::string path;
};
UrlParts split_url(const std::string& url);

// POSTs a JSON body; extra headers ride along verbatim.
// Throws DeliveryError when no response arrives at all.
Response post_json(const std::string& url, const std::string& body,
                   const std::vector<std::pair<std::string, std::string>>& headers = {},
                   std::chrono::seconds timeout = std::chrono::seconds(120));

}  // namespace rreval::http
