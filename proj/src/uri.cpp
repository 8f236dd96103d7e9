#include "fdof/uri.hpp"

#include <vector>

namespace fdof {
namespace {

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_hex(char c) {
  return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}
bool is_unreserved(char c) {
  return is_alpha(c) || is_digit(c) || c == '-' || c == '.' || c == '_' ||
         c == '~';
}
bool is_sub_delim(char c) {
  switch (c) {
    case '!': case '$': case '&': case '\'': case '(': case ')':
    case '*': case '+': case ',': case ';': case '=':
      return true;
    default:
      return false;
  }
}
bool is_scheme_char(char c) {
  return is_alpha(c) || is_digit(c) || c == '+' || c == '-' || c == '.';
}

enum CharSet : unsigned {
  kUnreservedSub = 1,  // unreserved / sub-delims
  kColon = 2,
  kAt = 4,
  kSlash = 8,
  kQuestion = 16,
};

constexpr unsigned kRegName = kUnreservedSub;
constexpr unsigned kUserinfo = kUnreservedSub | kColon;
constexpr unsigned kPchar = kUnreservedSub | kColon | kAt;
constexpr unsigned kPath = kPchar | kSlash;
constexpr unsigned kQuery = kPchar | kSlash | kQuestion;

bool in_set(char c, unsigned set) {
  if ((set & kUnreservedSub) && (is_unreserved(c) || is_sub_delim(c))) return true;
  if ((set & kColon) && c == ':') return true;
  if ((set & kAt) && c == '@') return true;
  if ((set & kSlash) && c == '/') return true;
  if ((set & kQuestion) && c == '?') return true;
  return false;
}

struct Scanner {
  std::string_view s;
  std::optional<UriRejection> error;

  // Checks s[begin, end) against `set`, allowing pct-encoded triplets.
  bool span(std::size_t begin, std::size_t end, unsigned set,
            const char* what) {
    for (std::size_t i = begin; i < end; ++i) {
      if (s[i] == '%') {
        if (i + 2 >= end || !is_hex(s[i + 1]) || !is_hex(s[i + 2])) {
          return reject(i, "malformed percent-encoding");
        }
        i += 2;
        continue;
      }
      if (!in_set(s[i], set)) {
        return reject(i, std::string("character not allowed in ") + what);
      }
    }
    return true;
  }

  bool reject(std::size_t pos, std::string reason) {
    error = UriRejection{pos, std::move(reason)};
    return false;
  }
};

bool valid_dec_octet(std::string_view v) {
  if (v.empty() || v.size() > 3) return false;
  for (char c : v) {
    if (!is_digit(c)) return false;
  }
  if (v.size() > 1 && v[0] == '0') return false;
  int n = 0;
  for (char c : v) n = n * 10 + (c - '0');
  return n <= 255;
}

bool valid_ipv4(std::string_view v) {
  int parts = 0;
  std::size_t start = 0;
  while (true) {
    const auto dot = v.find('.', start);
    const auto piece = v.substr(start, dot == std::string_view::npos
                                           ? std::string_view::npos
                                           : dot - start);
    if (!valid_dec_octet(piece)) return false;
    ++parts;
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return parts == 4;
}

bool valid_h16(std::string_view v) {
  if (v.empty() || v.size() > 4) return false;
  for (char c : v) {
    if (!is_hex(c)) return false;
  }
  return true;
}

std::vector<std::string_view> split_colons(std::string_view v) {
  std::vector<std::string_view> out;
  if (v.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto colon = v.find(':', start);
    if (colon == std::string_view::npos) {
      out.push_back(v.substr(start));
      return out;
    }
    out.push_back(v.substr(start, colon - start));
    start = colon + 1;
  }
}

// Counts 16-bit pieces; an IPv4 tail (allowed only as the final piece)
// counts as two. Returns -1 when a piece is malformed.
int count_pieces(const std::vector<std::string_view>& pieces, bool tail) {
  int count = 0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (valid_h16(pieces[i])) {
      count += 1;
    } else if (tail && i + 1 == pieces.size() && valid_ipv4(pieces[i])) {
      count += 2;
    } else {
      return -1;
    }
  }
  return count;
}

bool valid_ipv6(std::string_view v) {
  const auto gap = v.find("::");
  if (gap == std::string_view::npos) {
    return count_pieces(split_colons(v), true) == 8;
  }
  const auto left = v.substr(0, gap);
  const auto right = v.substr(gap + 2);
  if (right.find("::") != std::string_view::npos) return false;
  const int l = count_pieces(split_colons(left), false);
  const int r = count_pieces(split_colons(right), true);
  return l >= 0 && r >= 0 && l + r <= 7;
}

bool valid_ipvfuture(std::string_view v) {
  if (v.size() < 4 || (v[0] != 'v' && v[0] != 'V')) return false;
  std::size_t i = 1;
  while (i < v.size() && is_hex(v[i])) ++i;
  if (i == 1 || i >= v.size() || v[i] != '.') return false;
  ++i;
  if (i == v.size()) return false;
  for (; i < v.size(); ++i) {
    if (!(is_unreserved(v[i]) || is_sub_delim(v[i]) || v[i] == ':')) return false;
  }
  return true;
}

bool check_port(Scanner& sc, std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) {
    if (!is_digit(sc.s[i])) return sc.reject(i, "non-digit in port");
  }
  return true;
}

bool check_authority(Scanner& sc, std::size_t begin, std::size_t end) {
  const auto& s = sc.s;
  std::size_t host = begin;
  const auto at = s.substr(begin, end - begin).find('@');
  if (at != std::string_view::npos) {
    if (!sc.span(begin, begin + at, kUserinfo, "userinfo")) return false;
    host = begin + at + 1;
  }
  if (host < end && s[host] == '[') {
    const auto close = s.substr(host, end - host).find(']');
    if (close == std::string_view::npos) {
      return sc.reject(end, "unterminated IP literal");
    }
    const auto literal = s.substr(host + 1, close - 1);
    if (!valid_ipv6(literal) && !valid_ipvfuture(literal)) {
      return sc.reject(host, "malformed IP literal");
    }
    const std::size_t after = host + close + 1;
    if (after == end) return true;
    if (s[after] != ':') return sc.reject(after, "expected ':' after IP literal");
    return check_port(sc, after + 1, end);
  }
  std::size_t host_end = end;
  const auto colon = s.substr(host, end - host).find(':');
  if (colon != std::string_view::npos) host_end = host + colon;
  if (!sc.span(host, host_end, kRegName, "host")) return false;
  if (host_end < end) return check_port(sc, host_end + 1, end);
  return true;
}

std::size_t find_from(std::string_view s, std::size_t from,
                      std::string_view stops) {
  const auto p = s.find_first_of(stops, from);
  return p == std::string_view::npos ? s.size() : p;
}

}  // namespace

UriCheck check_uri_syntax(std::string_view s) {
  if (s.empty()) return UriRejection{0, "empty string"};
  if (!is_alpha(s[0])) return UriRejection{0, "scheme must start with a letter"};
  std::size_t i = 1;
  while (i < s.size() && is_scheme_char(s[i])) ++i;
  if (i == s.size() || s[i] != ':') {
    return UriRejection{i, "expected ':' after scheme"};
  }

  UriParts parts;
  parts.scheme = std::string(s.substr(0, i));
  ++i;
  Scanner sc{s, std::nullopt};

  if (s.substr(i, 2) == "//") {
    const std::size_t begin = i + 2;
    const std::size_t end = find_from(s, begin, "/?#");
    if (!check_authority(sc, begin, end)) return *sc.error;
    parts.authority = std::string(s.substr(begin, end - begin));
    i = end;
  }

  const std::size_t path_end = find_from(s, i, "?#");
  if (!sc.span(i, path_end, kPath, "path")) return *sc.error;
  parts.path = std::string(s.substr(i, path_end - i));
  i = path_end;

  if (i < s.size() && s[i] == '?') {
    const std::size_t end = find_from(s, i + 1, "#");
    if (!sc.span(i + 1, end, kQuery, "query")) return *sc.error;
    parts.query = std::string(s.substr(i + 1, end - i - 1));
    i = end;
  }
  if (i < s.size() && s[i] == '#') {
    if (!sc.span(i + 1, s.size(), kQuery, "fragment")) return *sc.error;
    parts.fragment = std::string(s.substr(i + 1));
  }
  return parts;
}

}  // namespace fdof
