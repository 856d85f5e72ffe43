#include "rreval/http.hpp"

#include "httplib.h"
#include "rreval/errors.hpp"

namespace rreval::http {

UrlParts split_url(const std::string& url) {
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw InvalidInput("URL \"" + url + "\" has no scheme");
  }
  const std::size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

Response post_json(const std::string& url, const std::string& body,
                   const std::vector<std::pair<std::string, std::string>>& headers,
                   std::chrono::seconds timeout) {
  const UrlParts parts = split_url(url);
  httplib::Client client(parts.base);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  httplib::Headers hdrs;
  for (const auto& [name, value] : headers) hdrs.emplace(name, value);
  auto result = client.Post(parts.path, hdrs, body, "application/json");
  if (!result) {
    throw DeliveryError("POST " + url + " failed: " + httplib::to_string(result.error()));
  }
  return {result->status, result->body};
}

}  // namespace rreval::http
