#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fdof/dataset.hpp"

namespace fdof {

// Raised for malformed TriG input. Line and column are 1-based; columns
// count UTF-8 code points.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

// Parses the supported TriG subset:
//   @prefix / PREFIX declarations, default-graph triples, `{ ... }` default
//   graph blocks, `name { ... }` and `GRAPH name { ... }` blocks, predicate
//   lists (;), object lists (,), the `a` keyword, IRIs, prefixed names,
//   string literals (short and long forms) with ^^datatype or @lang, and
//   labelled blank nodes.
// Collections, [ ] property lists, quoted triples, @base and numeric/boolean
// shorthand literals are rejected with a ParseError.
Dataset parse_trig(std::string_view text);

// Emits a document that parse_trig reads back to the same quad set.
// Blank-node labels and graph names are written verbatim.
std::string serialize_trig(const Dataset& ds);

// Parses a single term in N-Triples syntax (<iri>, _:label or a literal
// with full IRIs).
Term parse_term(std::string_view text);

}  // namespace fdof
