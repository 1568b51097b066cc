#pragma once

#include <string>

#include "landsketch/error.hpp"

namespace landsketch::internal {

struct UrlParts {
  std::string origin;  // scheme://host[:port]
  std::string path;    // without trailing slash
};

inline UrlParts split_url(const std::string& url, ErrorCode code) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw Error(code, "URL without scheme: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  UrlParts parts;
  parts.origin = url.substr(0, path_start);
  parts.path = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!parts.path.empty() && parts.path.back() == '/') parts.path.pop_back();
  return parts;
}

}  // namespace landsketch::internal
