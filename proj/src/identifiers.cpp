#include "fdof/identifiers.hpp"

#include <cstdio>
#include <ctime>
#include <mutex>
#include <random>

#include "fdof/uri.hpp"

namespace fdof {

const IdentificationSpace& IdentificationSpace::uri() {
  static const IdentificationSpace space(
      "uri", [](std::string_view v) { return uri_accepted(check_uri_syntax(v)); });
  return space;
}

bool is_gupri(std::string_view value, const IdentificationSpace& space) {
  return uri_accepted(check_uri_syntax(value)) && space.contains(value);
}

std::string format_utc(std::chrono::system_clock::time_point t) {
  using namespace std::chrono;
  const auto ms = duration_cast<milliseconds>(t.time_since_epoch()).count();
  auto secs = static_cast<std::time_t>(ms / 1000);
  auto millis = ms % 1000;
  if (millis < 0) {
    millis += 1000;
    secs -= 1;
  }
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(millis));
  return out;
}

std::vector<Collision> uniqueness_audit(
    const std::vector<std::pair<std::string, std::string>>& bindings) {
  std::map<std::string, std::set<std::string>> subjects;
  for (const auto& [value, subject] : bindings) subjects[value].insert(subject);
  std::vector<Collision> out;
  for (auto& [value, set] : subjects) {
    if (set.size() >= 2) out.push_back({value, {set.begin(), set.end()}});
  }
  return out;
}

std::string encode_token(const std::array<std::uint8_t, 16>& bytes) {
  static constexpr char kAlphabet[] = "abcdefghijklmnopqrstuvwxyz234567";
  std::string out;
  unsigned buffer = 0;
  int bits = 0;
  for (const auto b : bytes) {
    buffer = (buffer << 8) | b;
    bits += 8;
    while (bits >= 5) {
      out += kAlphabet[(buffer >> (bits - 5)) & 0x1F];
      bits -= 5;
    }
  }
  if (bits > 0) out += kAlphabet[(buffer << (5 - bits)) & 0x1F];
  return out;
}

namespace {

Minter::TokenSource default_tokens() {
  auto engine = std::make_shared<std::mt19937_64>(std::random_device{}());
  return [engine] {
    std::array<std::uint8_t, 16> bytes{};
    for (std::size_t i = 0; i < bytes.size(); i += 8) {
      auto word = (*engine)();
      for (std::size_t j = 0; j < 8; ++j) {
        bytes[i + j] = static_cast<std::uint8_t>(word >> (8 * j));
      }
    }
    return bytes;
  };
}

}  // namespace

Minter::Minter(const IdentificationSpace& space, Clock clock,
               TokenSource tokens)
    : space_(space),
      clock_(clock ? std::move(clock) : Clock(std::chrono::system_clock::now)),
      tokens_(tokens ? std::move(tokens) : default_tokens()) {}

std::pair<Gupri, Identification> Minter::mint(std::string_view tmpl,
                                              std::string_view agent,
                                              std::string_view object) {
  const auto slot = tmpl.find("{}");
  if (slot == std::string_view::npos ||
      tmpl.find("{}", slot + 2) != std::string_view::npos) {
    throw MintError(MintError::Code::BadTemplate,
                    "template must contain exactly one {} slot");
  }
  auto instantiate = [&](const std::string& token) {
    std::string v(tmpl.substr(0, slot));
    v += token;
    v += tmpl.substr(slot + 2);
    return v;
  };

  std::unique_lock lock(mutex_);
  if (by_object_.contains(object)) {
    throw MintError(MintError::Code::DuplicateObject,
                    "object already has a minted identifier: " +
                        std::string(object));
  }
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const std::string value = instantiate(encode_token(tokens_()));
    if (!is_gupri(value, space_)) {
      throw MintError(MintError::Code::NotInSpace,
                      "template yields a value outside the " + space_.name() +
                          " space: " + value);
    }
    if (values_.contains(value)) continue;
    values_.insert(value);
    by_object_.emplace(std::string(object), value);
    Identifier id{value, space_.name()};
    Identification record{id, std::string(object), std::string(agent), clock_()};
    return {Gupri{id, std::nullopt}, std::move(record)};
  }
  throw MintError(MintError::Code::Exhausted,
                  "no fresh value after " + std::to_string(kMaxAttempts) +
                      " attempts");
}

bool Minter::contains_value(std::string_view value) const {
  std::shared_lock lock(mutex_);
  return values_.contains(value);
}

std::optional<std::string> Minter::value_for(std::string_view object) const {
  std::shared_lock lock(mutex_);
  auto it = by_object_.find(object);
  if (it == by_object_.end()) return std::nullopt;
  return it->second;
}

std::size_t Minter::size() const {
  std::shared_lock lock(mutex_);
  return values_.size();
}

}  // namespace fdof
