#include <cctype>
#include <cstdint>
#include <optional>
#include <string>

#include "fdof/trig.hpp"
#include "fdof/vocabulary.hpp"

namespace fdof {

ParseError::ParseError(std::size_t line, std::size_t column,
                       std::string message)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      detail_(std::move(message)) {}

namespace {

bool is_alpha(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0;
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_hex(char c) {
  return std::isxdigit(static_cast<unsigned char>(c)) != 0;
}
bool is_high(char c) { return static_cast<unsigned char>(c) >= 0x80; }

// PN_CHARS_BASE, approximated for non-ASCII input by accepting any byte of a
// multi-byte sequence.
bool is_name_start(char c) { return is_alpha(c) || is_high(c); }
bool is_name_start_u(char c) { return is_name_start(c) || c == '_'; }
bool is_name_char(char c) {
  return is_name_start_u(c) || c == '-' || is_digit(c);
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Dataset document() {
    while (true) {
      skip_ws();
      if (at_end()) break;
      statement();
    }
    return std::move(ds_);
  }

  Term single_term() {
    skip_ws();
    Term t = object();
    skip_ws();
    if (!at_end()) fail("end of input");
    return t;
  }

 private:
  // ---- cursor -------------------------------------------------------------

  struct Cursor {
    std::size_t pos;
    std::size_t line;
    std::size_t column;
  };
  Cursor cursor() const { return {pos_, line_, column_}; }
  void restore(const Cursor& c) {
    pos_ = c.pos;
    line_ = c.line;
    column_ = c.column;
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  bool looking_at(std::string_view s) const {
    return src_.substr(pos_, s.size()) == s;
  }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_) {
      const char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        column_ = 1;
      } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
        ++column_;
      }
    }
  }

  [[noreturn]] void fail(const std::string& expected) const {
    std::string found;
    if (at_end()) {
      found = "end of input";
    } else {
      const char c = src_[pos_];
      if (static_cast<unsigned char>(c) < 0x20) {
        found = "control character";
      } else {
        found = "'";
        found += c;
        found += "'";
      }
    }
    throw ParseError(line_, column_, "expected " + expected + ", found " + found);
  }

  [[noreturn]] void fail_at(std::size_t line, std::size_t column,
                            const std::string& message) const {
    throw ParseError(line, column, message);
  }

  void skip_ws() {
    while (!at_end()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  void expect(char c, const char* what) {
    skip_ws();
    if (peek() != c || at_end()) fail(what);
    advance();
  }

  bool keyword(std::string_view kw) const {
    if (src_.size() - pos_ < kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      if (std::toupper(static_cast<unsigned char>(src_[pos_ + i])) != kw[i]) {
        return false;
      }
    }
    const char next = peek(kw.size());
    return !(is_name_char(next) || next == ':' || next == '.');
  }

  // ---- statements ---------------------------------------------------------

  void statement() {
    if (looking_at("@prefix")) {
      advance(7);
      prefix_directive(true);
      return;
    }
    if (looking_at("@base") || keyword("BASE")) {
      fail("a statement (base declarations are not supported)");
    }
    if (peek() == '@') fail("'@prefix'");
    if (keyword("PREFIX")) {
      advance(6);
      prefix_directive(false);
      return;
    }
    if (peek() == '{') {
      block(std::nullopt);
      return;
    }
    if (keyword("GRAPH")) {
      advance(5);
      skip_ws();
      Term name = graph_label();
      skip_ws();
      if (peek() != '{') fail("'{'");
      block(name);
      return;
    }
    Term head = subject();
    skip_ws();
    if (peek() == '{') {
      block(head);
      return;
    }
    predicate_object_list(head, std::nullopt);
    expect('.', "'.'");
  }

  void prefix_directive(bool at_form) {
    skip_ws();
    std::string label;
    if (peek() != ':') {
      if (!is_name_start(peek())) fail("a prefix label");
      label = pn_prefix();
    }
    if (peek() != ':') fail("':'");
    advance();
    skip_ws();
    if (peek() != '<') fail("an IRI in angle brackets");
    std::string ns = iriref();
    prefixes_[label] = ns;
    ds_.add_prefix(label, ns);
    if (at_form) expect('.', "'.'");
  }

  void block(GraphName graph) {
    advance();  // '{'
    while (true) {
      skip_ws();
      if (at_end()) fail("'}'");
      if (peek() == '}') {
        advance();
        return;
      }
      Term s = subject();
      predicate_object_list(s, graph);
      skip_ws();
      if (peek() == '.') {
        advance();
        continue;
      }
      if (peek() == '}') {
        advance();
        return;
      }
      fail("'.' or '}'");
    }
  }

  void predicate_object_list(const Term& s, const GraphName& graph) {
    skip_ws();
    Term p = verb();
    object_list(s, p, graph);
    while (true) {
      skip_ws();
      if (peek() != ';') return;
      while (peek() == ';') {
        advance();
        skip_ws();
      }
      if (at_end() || peek() == '.' || peek() == '}') return;
      p = verb();
      object_list(s, p, graph);
    }
  }

  void object_list(const Term& s, const Term& p, const GraphName& graph) {
    while (true) {
      skip_ws();
      Term o = object();
      ds_.add(Quad{s, p, std::move(o), graph});
      skip_ws();
      if (peek() != ',') return;
      advance();
    }
  }

  // ---- terms --------------------------------------------------------------

  Term verb() {
    if (peek() == 'a') {
      const char next = peek(1);
      if (!(is_name_char(next) || next == ':' || next == '.')) {
        advance();
        return Term::iri(std::string(vocab::kRdfType));
      }
    }
    if (peek() == '_' || peek() == '"' || peek() == '\'') {
      fail("a predicate IRI");
    }
    return iri_term("a predicate IRI");
  }

  Term subject() {
    skip_ws();
    if (peek() == '_' && peek(1) == ':') return blank();
    if (peek() == '"' || peek() == '\'') fail("a subject IRI or blank node");
    check_unsupported();
    return iri_term("a subject IRI or blank node");
  }

  Term graph_label() {
    if (peek() == '_' && peek(1) == ':') return blank();
    return iri_term("a graph name");
  }

  Term object() {
    if (peek() == '_' && peek(1) == ':') return blank();
    if (peek() == '"' || peek() == '\'') return literal();
    check_unsupported();
    return iri_term("an object term");
  }

  void check_unsupported() const {
    const char c = peek();
    if (c == '[') fail("a term (blank-node property lists are not supported)");
    if (c == '(') fail("a term (collections are not supported)");
    if (c == '<' && peek(1) == '<') {
      fail("a term (quoted triples are not supported)");
    }
    if (is_digit(c) || c == '+' || c == '-' ||
        (c == '.' && is_digit(peek(1)))) {
      fail("a term (numeric shorthand literals are not supported)");
    }
    if (keyword("TRUE") || keyword("FALSE")) {
      if (looking_at("true") || looking_at("false")) {
        fail("a term (boolean shorthand literals are not supported)");
      }
    }
  }

  Term iri_term(const char* what) {
    if (peek() == '<') return Term::iri(iriref());
    if (peek() == ':' || is_name_start(peek())) return prefixed_name();
    fail(what);
  }

  std::string iriref() {
    const auto line = line_;
    const auto column = column_;
    advance();  // '<'
    std::string out;
    while (true) {
      if (at_end()) fail("'>'");
      const char c = peek();
      if (c == '>') {
        advance();
        break;
      }
      const auto u = static_cast<unsigned char>(c);
      if (u <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' ||
          c == '|' || c == '^' || c == '`') {
        fail("an IRI character or '>'");
      }
      if (c == '\\') {
        advance();
        if (peek() == 'u') {
          append_utf8(out, unicode_escape(4));
        } else if (peek() == 'U') {
          append_utf8(out, unicode_escape(8));
        } else {
          fail("'u' or 'U' after '\\' in IRI");
        }
        continue;
      }
      out += c;
      advance();
    }
    if (!has_absolute_form(out)) {
      fail_at(line, column,
              "relative IRI <" + out + "> where an absolute IRI is required");
    }
    return out;
  }

  // At the 'u'/'U' of an escape; consumes it and the hex digits.
  std::uint32_t unicode_escape(int digits) {
    const auto line = line_;
    const auto column = column_;
    advance();
    std::uint32_t cp = 0;
    for (int i = 0; i < digits; ++i) {
      if (!is_hex(peek()) || at_end()) fail("a hexadecimal digit");
      const char h = peek();
      cp = cp * 16 + static_cast<std::uint32_t>(
                         is_digit(h) ? h - '0'
                                     : std::tolower(static_cast<unsigned char>(h)) - 'a' + 10);
      advance();
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      fail_at(line, column, "escape does not denote a Unicode scalar value");
    }
    return cp;
  }

  std::string pn_prefix() {
    std::string label;
    label += peek();
    advance();
    while (is_name_char(peek()) || peek() == '.') {
      label += peek();
      advance();
    }
    if (label.back() == '.') fail("':' after prefix label");
    return label;
  }

  Term prefixed_name() {
    const auto line = line_;
    const auto column = column_;
    std::string label;
    if (peek() != ':') label = pn_prefix();
    if (peek() != ':') fail("':' in prefixed name");
    advance();
    const auto it = prefixes_.find(label);
    if (it == prefixes_.end()) {
      fail_at(line, column, "undefined prefix '" + label + ":'");
    }
    return Term::iri(it->second + pn_local());
  }

  // Trailing dots are not part of a local name or blank-node label; they
  // are handed back to terminate the statement.
  std::string pn_local() {
    std::string out;
    Cursor end = cursor();
    std::size_t end_len = 0;
    bool first = true;
    while (!at_end()) {
      const char c = peek();
      bool dot = false;
      if (c == '%') {
        if (!is_hex(peek(1)) || !is_hex(peek(2))) {
          fail("two hex digits after '%'");
        }
        out.append(src_.substr(pos_, 3));
        advance(3);
      } else if (c == '\\') {
        const char e = peek(1);
        static constexpr std::string_view kEscapable = "_~.-!$&'()*+,;=/?#@%";
        if (e == '\0' || kEscapable.find(e) == std::string_view::npos) {
          fail("an escapable character after '\\'");
        }
        out += e;
        advance(2);
      } else if (c == '.' && !first) {
        out += c;
        advance();
        dot = true;
      } else if (c == ':' || (is_name_char(c) && !(first && c == '-'))) {
        out += c;
        advance();
      } else {
        break;
      }
      first = false;
      if (!dot) {
        end = cursor();
        end_len = out.size();
      }
    }
    restore(end);
    out.resize(end_len);
    return out;
  }

  Term blank() {
    advance(2);  // "_:"
    const char c = peek();
    if (!(is_name_start_u(c) || is_digit(c))) fail("a blank node label");
    std::string label;
    Cursor end = cursor();
    std::size_t end_len = 0;
    while (is_name_char(peek()) || peek() == '.') {
      const char ch = peek();
      label += ch;
      advance();
      if (ch != '.') {
        end = cursor();
        end_len = label.size();
      }
    }
    restore(end);
    label.resize(end_len);
    return Term::blank(std::move(label));
  }

  Term literal() {
    const char quote = peek();
    const bool long_form = peek(1) == quote && peek(2) == quote;
    std::string lexical;
    if (long_form) {
      advance(3);
      while (true) {
        if (at_end()) fail(std::string("closing ") + quote + quote + quote);
        if (peek() == quote && peek(1) == quote && peek(2) == quote) {
          // A run of more than three quotes ends with the last three.
          while (peek(3) == quote) {
            lexical += quote;
            advance();
          }
          advance(3);
          break;
        }
        if (peek() == '\\') {
          string_escape(lexical);
        } else {
          lexical += peek();
          advance();
        }
      }
    } else {
      advance();
      while (true) {
        if (at_end()) fail(std::string("closing ") + quote);
        const char c = peek();
        if (c == quote) {
          advance();
          break;
        }
        if (c == '\n' || c == '\r') fail(std::string("closing ") + quote);
        if (c == '\\') {
          string_escape(lexical);
        } else {
          lexical += c;
          advance();
        }
      }
    }
    if (peek() == '@') {
      advance();
      std::string lang;
      if (!is_alpha(peek())) fail("a language tag");
      while (is_alpha(peek())) {
        lang += peek();
        advance();
      }
      while (peek() == '-') {
        lang += '-';
        advance();
        if (!(is_alpha(peek()) || is_digit(peek()))) fail("a language subtag");
        while (is_alpha(peek()) || is_digit(peek())) {
          lang += peek();
          advance();
        }
      }
      return Term::literal(std::move(lexical), {}, std::move(lang));
    }
    if (peek() == '^' && peek(1) == '^') {
      advance(2);
      Term dt = iri_term("a datatype IRI");
      return Term::literal(std::move(lexical), dt.value());
    }
    return Term::literal(std::move(lexical));
  }

  void string_escape(std::string& out) {
    advance();  // '\'
    const char e = peek();
    switch (e) {
      case 't': out += '\t'; break;
      case 'b': out += '\b'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      case 'f': out += '\f'; break;
      case '"': out += '"'; break;
      case '\'': out += '\''; break;
      case '\\': out += '\\'; break;
      case 'u': append_utf8(out, unicode_escape(4)); return;
      case 'U': append_utf8(out, unicode_escape(8)); return;
      default: fail("a valid escape sequence");
    }
    advance();
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  Dataset ds_;
  PrefixMap prefixes_;
};

}  // namespace

Dataset parse_trig(std::string_view text) { return Parser(text).document(); }

Term parse_term(std::string_view text) { return Parser(text).single_term(); }

}  // namespace fdof
