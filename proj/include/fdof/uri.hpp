#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace fdof {

// Components of an absolute URI (RFC 3986 `URI` production).
struct UriParts {
  std::string scheme;
  std::optional<std::string> authority;
  std::string path;
  std::optional<std::string> query;
  std::optional<std::string> fragment;

  bool operator==(const UriParts&) const = default;
};

struct UriRejection {
  std::size_t position;  // 0-based byte offset of the first offending char
  std::string reason;

  bool operator==(const UriRejection&) const = default;
};

using UriCheck = std::variant<UriParts, UriRejection>;

// Accepts exactly the strings matching RFC 3986 `URI`:
//   scheme ":" hier-part [ "?" query ] [ "#" fragment ]
UriCheck check_uri_syntax(std::string_view value);

inline bool uri_accepted(const UriCheck& check) {
  return std::holds_alternative<UriParts>(check);
}

}  // namespace fdof
