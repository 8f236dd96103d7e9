#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fdof/dataset.hpp"
#include "fdof/identifiers.hpp"
#include "fdof/model.hpp"
#include "fdof/shapes.hpp"
#include "fdof/validator.hpp"

namespace fdof {

// Canonical form: one N-Quads line per quad, lines sorted bytewise.
std::string canonical_nquads(const Dataset& ds);

// Lowercase hex SHA-256 of canonical_nquads(ds).
std::string content_etag(const Dataset& ds);

struct DepositEntry {
  std::string gupri;
  Term node;
  std::optional<Term> record_graph;
  Dataset dataset;
  std::chrono::system_clock::time_point deposited_at;
  std::string etag;
  ClassificationSummary classification;
  bool forced = false;  // deposited without validation

  bool operator==(const DepositEntry& o) const {
    return gupri == o.gupri && node == o.node && record_graph == o.record_graph &&
           dataset == o.dataset && deposited_at == o.deposited_at &&
           etag == o.etag && classification == o.classification &&
           forced == o.forced;
  }
};

struct DepositResult {
  std::string gupri;
  std::string etag;

  bool operator==(const DepositResult&) const = default;
};

struct Resolution {
  std::string gupri;
  Term node;
  Dataset dataset;
  std::string etag;
};

class RegistryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DepositRejected : public RegistryError {
 public:
  explicit DepositRejected(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

class DepositConflict : public RegistryError {
 public:
  explicit DepositConflict(std::string gupri);
  const std::string& gupri() const { return gupri_; }

 private:
  std::string gupri_;
};

class NotFound : public RegistryError {
 public:
  explicit NotFound(std::string_view gupri);
};

class Unprocessable : public RegistryError {
 public:
  using RegistryError::RegistryError;
};

class JournalError : public RegistryError {
 public:
  using RegistryError::RegistryError;
};

// Append-only deposit log. Each record is
//   u32 payload length | u64 timestamp (ms since epoch) | u8 flags | payload
// with little-endian integers; the payload is the deposited TriG document and
// flag bit 0 marks a forced deposit. A truncated final record is discarded.
struct JournalRecord {
  std::chrono::system_clock::time_point timestamp;
  bool forced = false;
  std::string trig;
};

class Journal {
 public:
  // Opens or creates the file; a truncated tail is cut off.
  explicit Journal(std::filesystem::path path);

  const std::vector<JournalRecord>& records() const { return records_; }
  void append(const JournalRecord& record);
  const std::filesystem::path& path() const { return path_; }

  static std::vector<JournalRecord> read(const std::filesystem::path& path,
                                         std::uint64_t* valid_bytes = nullptr);

 private:
  std::filesystem::path path_;
  std::vector<JournalRecord> records_;
  std::ofstream out_;
};

struct RegistryOptions {
  ShapeRegistry shapes;
  ValidateOptions validate;
  std::optional<std::filesystem::path> journal;
  Clock clock;  // defaults to the system clock
};

class Registry {
 public:
  // Replays the journal when one is configured.
  explicit Registry(RegistryOptions options = {});

  // One entry per identified FDO node. Throws DepositRejected when the
  // dataset has violations (unless forced) and DepositConflict when a GUPRI
  // is already bound to different content. All-or-nothing.
  std::vector<DepositResult> deposit(const Dataset& ds, bool force = false);

  Resolution resolve(std::string_view gupri) const;
  ClassificationSummary describe_type(std::string_view gupri) const;

  std::optional<DepositEntry> entry(std::string_view gupri) const;
  std::map<std::string, DepositEntry, std::less<>> entries() const;
  std::size_t size() const;

 private:
  std::vector<DepositEntry> plan(const Dataset& ds,
                                 std::chrono::system_clock::time_point at,
                                 bool forced) const;
  std::vector<DepositResult> apply(std::vector<DepositEntry> planned,
                                   const JournalRecord* record);

  RegistryOptions options_;
  std::optional<Journal> journal_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, DepositEntry, std::less<>> entries_;
};

}  // namespace fdof
