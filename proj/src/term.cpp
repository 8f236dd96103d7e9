#include "fdof/term.hpp"

#include <cctype>
#include <cstdio>

namespace fdof {

Term Term::iri(std::string value) {
  return Term(TermKind::Iri, std::move(value), {}, {});
}

Term Term::blank(std::string label) {
  return Term(TermKind::BlankNode, std::move(label), {}, {});
}

Term Term::literal(std::string lexical, std::string datatype,
                   std::string language) {
  if (!language.empty()) {
    for (auto& c : language) {
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return Term(TermKind::Literal, std::move(lexical),
                std::string(kRdfLangString), std::move(language));
  }
  if (datatype.empty()) datatype = std::string(kXsdString);
  return Term(TermKind::Literal, std::move(lexical), std::move(datatype), {});
}

bool has_absolute_form(std::string_view iri) {
  if (iri.empty() || !std::isalpha(static_cast<unsigned char>(iri[0]))) {
    return false;
  }
  for (std::size_t i = 1; i < iri.size(); ++i) {
    const auto c = static_cast<unsigned char>(iri[i]);
    if (c == ':') return true;
    if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  return false;
}

namespace {

void append_escaped(std::string& out, std::string_view text, bool iri) {
  for (const char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (!iri) {
      switch (c) {
        case '"': out += "\\\""; continue;
        case '\\': out += "\\\\"; continue;
        case '\n': out += "\\n"; continue;
        case '\r': out += "\\r"; continue;
        case '\t': out += "\\t"; continue;
        default: break;
      }
    }
    const bool needs_escape =
        c < 0x20 || c == 0x7f ||
        (iri && (c == ' ' || c == '<' || c == '>' || c == '"' || c == '{' ||
                 c == '}' || c == '|' || c == '^' || c == '`' || c == '\\'));
    if (needs_escape) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04X", c);
      out += buf;
    } else {
      out += ch;
    }
  }
}

}  // namespace

std::string Term::to_ntriples() const {
  std::string out;
  switch (kind_) {
    case TermKind::Iri:
      out += '<';
      append_escaped(out, value_, true);
      out += '>';
      break;
    case TermKind::BlankNode:
      out += "_:";
      out += value_;
      break;
    case TermKind::Literal:
      out += '"';
      append_escaped(out, value_, false);
      out += '"';
      if (!language_.empty()) {
        out += '@';
        out += language_;
      } else if (datatype_ != kXsdString) {
        out += "^^<";
        append_escaped(out, datatype_, true);
        out += '>';
      }
      break;
  }
  return out;
}

std::string graph_to_string(const GraphName& graph) {
  return graph ? graph->to_ntriples() : std::string("(default)");
}

std::string Quad::to_nquads() const {
  std::string out = subject.to_ntriples();
  out += ' ';
  out += predicate.to_ntriples();
  out += ' ';
  out += object.to_ntriples();
  if (graph) {
    out += ' ';
    out += graph->to_ntriples();
  }
  out += " .";
  return out;
}

}  // namespace fdof
