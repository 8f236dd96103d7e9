#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fdof/dataset.hpp"

namespace fdof {

enum class ObjectKind : std::uint8_t {
  InformationObject = 1,
  MediaObject = 2,
  MetadataRecord = 4,
};

class KindSet {
 public:
  constexpr KindSet() = default;
  constexpr bool has(ObjectKind k) const {
    return (bits_ & static_cast<std::uint8_t>(k)) != 0;
  }
  constexpr void add(ObjectKind k) { bits_ |= static_cast<std::uint8_t>(k); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool operator==(const KindSet&) const = default;

  // e.g. "InformationObject, MetadataRecord"
  std::vector<std::string> names() const;

 private:
  std::uint8_t bits_ = 0;
};

std::string kind_name(ObjectKind k);

// A node of the dataset that the FDOF vocabulary says something about.
struct FdofObject {
  Term node;
  KindSet kinds;
  bool declared_fdo = false;         // rdf:type fdof:FAIRDigitalObject
  bool declared_identifier = false;  // rdf:type fdof:Identifier
  std::vector<std::string> gupris;
  std::vector<Term> identifier_nodes;
  std::vector<Term> info_types;
  std::vector<Term> materialized_by;
  std::vector<Term> encoding_formats;
  std::vector<Term> described_by;  // record nodes of FmrRecords targeting this
  // Domain statements: every (predicate, object) with this node as subject
  // except rdf:type and the FDOF structural properties.
  std::vector<std::pair<Term, Term>> attributions;

  // Any FDO classification, including a direct fdof:FAIRDigitalObject type.
  bool is_fdo() const { return declared_fdo || !kinds.empty(); }
};

// A metadata record realized as the named graph carrying its own name.
struct FmrRecord {
  Term record_node;
  Term graph;
  std::vector<Term> targets;
  Dataset statements;
};

struct FdofModel {
  std::map<Term, FdofObject> objects;
  std::map<Term, FmrRecord> records;
  Dataset source;

  const FdofObject* find(const Term& node) const;
};

// Lifts a dataset into the FDOF view. Total: malformed structures are kept
// and left for the validator to report.
FdofModel extract_model(const Dataset& ds);

struct ClassificationSummary {
  Term node;
  KindSet kinds;
  std::vector<Term> info_types;
  std::vector<Term> encoding_formats;

  bool operator==(const ClassificationSummary&) const = default;
};

class UnknownNode : public std::runtime_error {
 public:
  explicit UnknownNode(const Term& node)
      : std::runtime_error("unknown node " + node.to_ntriples()) {}
};

// The "what type of object is this" answer for a node of the model.
ClassificationSummary classify(const FdofModel& model, const Term& node);

// Nodes whose fdof:gupri values include `value`, in node order.
std::vector<Term> lookup_by_gupri(const FdofModel& model,
                                  std::string_view value);

}  // namespace fdof
