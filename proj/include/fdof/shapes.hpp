#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fdof/model.hpp"

namespace fdof {

// Constraint on the values of a property.
struct ValueKind {
  enum class Tag { Any, Iri, Literal, Datatype };
  Tag tag = Tag::Any;
  std::string datatype;  // Tag::Datatype only

  static ValueKind any() { return {}; }
  static ValueKind iri() { return {Tag::Iri, {}}; }
  static ValueKind literal() { return {Tag::Literal, {}}; }
  static ValueKind of_datatype(std::string dt) { return {Tag::Datatype, std::move(dt)}; }

  bool admits(const Term& value) const;
  std::string describe() const;
  bool operator==(const ValueKind&) const = default;
};

struct PropertyRequirement {
  std::string property;
  std::size_t min_count = 1;
  ValueKind value_kind;
};

struct TypeShape {
  std::string type_iri;
  std::string label;
  std::vector<PropertyRequirement> mandatory;
  std::vector<PropertyRequirement> optional;
  std::optional<std::string> parent;
};

// A requirement after folding in every ancestor shape. A value counts
// towards min_count only when it satisfies all collected value kinds.
struct EffectiveRequirement {
  std::string property;
  bool mandatory = false;
  std::size_t min_count = 0;
  std::vector<ValueKind> value_kinds;
};

class ShapeError : public std::runtime_error {
 public:
  ShapeError(std::string message, std::size_t line = 0, std::size_t column = 0);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class ShapeRegistry {
 public:
  ShapeRegistry() = default;

  // Validates parent references, the acyclicity of parent chains and the
  // mandatory/optional disjointness of every shape.
  static ShapeRegistry from_shapes(std::vector<TypeShape> shapes);

  const TypeShape* find(std::string_view type_iri) const;
  const std::map<std::string, TypeShape, std::less<>>& shapes() const {
    return shapes_;
  }
  std::size_t size() const { return shapes_.size(); }
  bool empty() const { return shapes_.empty(); }

  // Own requirements plus those inherited along the parent chain, sorted by
  // property. For the same property the larger min_count wins and the
  // requirement is mandatory if any declaration is.
  std::vector<EffectiveRequirement> effective(std::string_view type_iri) const;

 private:
  std::map<std::string, TypeShape, std::less<>> shapes_;
};

// Reads the JSON shape configuration (see README "Shape configuration").
ShapeRegistry load_shapes(std::string_view config);

struct RequirementFinding {
  enum class Reason { Missing, TooFew, WrongValueKind };
  std::string property;
  Reason reason;
  std::size_t count = 0;           // values satisfying the value kinds
  std::size_t total = 0;           // all values of the property
  std::size_t min_count = 0;
  std::string message;
};

// One finding per unmet mandatory requirement. Values are counted across
// every graph of the source dataset.
std::vector<RequirementFinding> conformance(const FdofModel& model,
                                            const Term& node,
                                            const ShapeRegistry& registry,
                                            std::string_view type_iri);

// Same check against the shape's own requirements, ignoring any parent.
std::vector<RequirementFinding> conformance(const FdofModel& model,
                                            const Term& node,
                                            const TypeShape& shape);

}  // namespace fdof
