#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fdof/model.hpp"
#include "fdof/shapes.hpp"

namespace fdof {

// Rule identifiers of the constraint catalog.
//   C1  every FDO carries a GUPRI or an fdof:Identifier node
//   C2  a GUPRI value identifies at most one node
//   C3  every FDO that is not a metadata record is described by one
//   C4  a metadata record is the named graph holding its isMetadataOf
//       statements, and every target is identifiable
//   C5  every information object is materialized by a media object
//   C6  every media object has exactly one encoding format
//   C7  fdof:FAIRDigitalObject is abstract
//   C8  every information object has an information object type
//   C9  conformance to the registered type shapes
//   C10 GUPRI values are URIs
enum class Rule { C1 = 1, C2, C3, C4, C5, C6, C7, C8, C9, C10 };

std::string rule_name(Rule rule);
Rule parse_rule(std::string_view name);

enum class Severity { Violation, Warning };

std::string severity_name(Severity s);

struct Finding {
  Rule rule;
  Severity severity;
  Term focus;
  std::string message;
  std::vector<Quad> evidence;

  bool operator==(const Finding&) const = default;
};

struct ValidateOptions {
  // C5 as a warning, for corpora that only carry metadata.
  bool materialization_as_warning = false;
  // Warn on information object types without a registered shape (C9).
  bool warn_unregistered_types = true;
  // Every warning becomes a violation.
  bool strict = false;
};

struct CorpusSummary {
  std::size_t objects = 0;
  std::size_t fdos = 0;
  std::size_t information_objects = 0;
  std::size_t media_objects = 0;
  std::size_t metadata_records = 0;

  bool operator==(const CorpusSummary&) const = default;
};

struct ValidationReport {
  std::vector<Finding> findings;  // ordered by (rule, focus, message)
  std::map<std::string, std::size_t> violations_per_rule;
  std::map<std::string, std::size_t> warnings_per_rule;
  CorpusSummary summary;

  bool conforms() const;
  std::size_t violation_count() const;
  std::size_t warning_count() const;
};

ValidationReport validate(const FdofModel& model, const ShapeRegistry& registry,
                          const ValidateOptions& options = {});

// Focus nodes of C3 violations, computed by scanning raw quads without the
// model. Used as a differential oracle; refuses datasets above
// kBruteForceQuadLimit quads.
inline constexpr std::size_t kBruteForceQuadLimit = 1000;

class OracleBoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::set<Term> brute_force_c3(const Dataset& ds);

enum class ReportFormat { Text, Json };

std::string render_report(const ValidationReport& report, ReportFormat format);

// Reads the findings back from a rendered json report.
std::vector<Finding> parse_report_findings(std::string_view json_text);

}  // namespace fdof
