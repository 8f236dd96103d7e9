#pragma once

#include <random>
#include <string>
#include <string_view>

namespace fdof::testing {

// Reference matcher for the RFC 3986 `URI` production, transcribed rule by
// rule from the ABNF of Appendix A. Each rule maps a set of start offsets to
// the set of offsets where a match can end, so ambiguity is explored in full.
bool rfc3986_uri(std::string_view text);

// A random string derived from the same ABNF (always a member of `URI`).
std::string sample_rfc3986_uri(std::mt19937_64& rng);

}  // namespace fdof::testing
