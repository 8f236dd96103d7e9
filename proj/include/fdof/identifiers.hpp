#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <shared_mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fdof {

// The set of all identifier values of an identification system, given as a
// total membership predicate.
class IdentificationSpace {
 public:
  using Grammar = std::function<bool(std::string_view)>;

  IdentificationSpace(std::string name, Grammar grammar)
      : name_(std::move(name)), grammar_(std::move(grammar)) {}

  const std::string& name() const { return name_; }
  bool contains(std::string_view value) const { return grammar_(value); }

  // The built-in URI space: values accepted by check_uri_syntax.
  static const IdentificationSpace& uri();

 private:
  std::string name_;
  Grammar grammar_;
};

struct Identifier {
  std::string value;
  std::string space;  // IdentificationSpace::name()

  bool operator==(const Identifier&) const = default;
};

struct Gupri {
  Identifier base;
  std::optional<std::string> resolvable_hint;

  const std::string& value() const { return base.value; }
};

using Clock = std::function<std::chrono::system_clock::time_point()>;

// Provenance of one identifier assignment.
struct Identification {
  Identifier identifier;
  std::string object;  // IRI of the identified object
  std::string agent;   // IRI of the assigning agent
  std::chrono::system_clock::time_point timestamp;
};

// RFC 3339 UTC rendering with millisecond precision, e.g.
// 2026-10-18T09:30:00.000Z.
std::string format_utc(std::chrono::system_clock::time_point t);

bool is_gupri(std::string_view value, const IdentificationSpace& space);

struct Collision {
  std::string value;
  std::vector<std::string> subjects;  // sorted, distinct

  bool operator==(const Collision&) const = default;
};

// Values bound to two or more distinct subjects, sorted by value.
std::vector<Collision> uniqueness_audit(
    const std::vector<std::pair<std::string, std::string>>& bindings);

class MintError : public std::runtime_error {
 public:
  enum class Code { BadTemplate, NotInSpace, DuplicateObject, Exhausted };

  MintError(Code code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

// 128 random bits rendered as 26 characters of lowercase base-32
// (RFC 4648 alphabet, no padding).
std::string encode_token(const std::array<std::uint8_t, 16>& bytes);

// Mints identifiers from a template holding a single "{}" slot. Every value
// handed out is recorded in the ledger and never rebound; minting is
// serialized, ledger reads may run concurrently with each other.
class Minter {
 public:
  using TokenSource = std::function<std::array<std::uint8_t, 16>()>;

  static constexpr int kMaxAttempts = 8;

  explicit Minter(const IdentificationSpace& space, Clock clock = {},
                  TokenSource tokens = {});

  std::pair<Gupri, Identification> mint(std::string_view tmpl,
                                        std::string_view agent,
                                        std::string_view object);

  bool contains_value(std::string_view value) const;
  std::optional<std::string> value_for(std::string_view object) const;
  std::size_t size() const;

 private:
  const IdentificationSpace& space_;
  Clock clock_;
  TokenSource tokens_;
  mutable std::shared_mutex mutex_;
  std::set<std::string, std::less<>> values_;
  std::map<std::string, std::string, std::less<>> by_object_;
};

}  // namespace fdof
