#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace fdof {

inline constexpr std::string_view kXsdString =
    "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view kRdfLangString =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

enum class TermKind : std::uint8_t { Iri, BlankNode, Literal };

// An RDF term. Literals always carry an explicit datatype: plain literals
// get xsd:string, language-tagged literals get rdf:langString with the tag
// lowercased.
class Term {
 public:
  Term() = default;

  static Term iri(std::string value);
  static Term blank(std::string label);
  static Term literal(std::string lexical, std::string datatype = {},
                      std::string language = {});

  TermKind kind() const { return kind_; }
  bool is_iri() const { return kind_ == TermKind::Iri; }
  bool is_blank() const { return kind_ == TermKind::BlankNode; }
  bool is_literal() const { return kind_ == TermKind::Literal; }

  // IRI string, blank-node label (without "_:"), or literal lexical form.
  const std::string& value() const { return value_; }
  const std::string& datatype() const { return datatype_; }
  const std::string& language() const { return language_; }

  // N-Triples rendering: <iri>, _:label, "lexical"@lang, "lexical"^^<dt>.
  // xsd:string literals are rendered without a datatype.
  std::string to_ntriples() const;

  auto operator<=>(const Term&) const = default;
  bool operator==(const Term&) const = default;

 private:
  Term(TermKind kind, std::string value, std::string datatype,
       std::string language)
      : kind_(kind),
        value_(std::move(value)),
        datatype_(std::move(datatype)),
        language_(std::move(language)) {}

  TermKind kind_ = TermKind::Iri;
  std::string value_;
  std::string datatype_;
  std::string language_;
};

// True when `iri` starts with a scheme followed by ':'.
bool has_absolute_form(std::string_view iri);

// Graph component of a quad; std::nullopt is the default graph.
using GraphName = std::optional<Term>;

struct Quad {
  Term subject;
  Term predicate;
  Term object;
  GraphName graph;

  auto operator<=>(const Quad&) const = default;
  bool operator==(const Quad&) const = default;

  // N-Quads line without the trailing newline.
  std::string to_nquads() const;
};

std::string graph_to_string(const GraphName& graph);

}  // namespace fdof
