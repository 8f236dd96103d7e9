#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fdof/trig.hpp"
#include "fdof/vocabulary.hpp"

namespace fdof {
namespace {

bool valid_prefix_label(std::string_view label) {
  if (label.empty()) return true;
  if (!std::isalpha(static_cast<unsigned char>(label.front()))) return false;
  if (label.back() == '.') return false;
  for (const char c : label) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' &&
        c != '.') {
      return false;
    }
  }
  return true;
}

// Local parts emitted in prefixed form; everything else is written as a
// full IRI.
bool safe_local(std::string_view local) {
  if (local.empty()) return true;
  const auto first = static_cast<unsigned char>(local.front());
  if (!std::isalnum(first) && first != '_') return false;
  for (const char c : local) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
      return false;
    }
  }
  return true;
}

class Writer {
 public:
  explicit Writer(const Dataset& ds) {
    for (const auto& [label, ns] : ds.prefixes()) {
      if (valid_prefix_label(label) && has_absolute_form(ns)) {
        prefixes_.emplace_back(label, ns);
      }
    }
  }

  std::string iri(const std::string& value) const {
    if (value == vocab::kRdfType) return "a";
    return compact(value);
  }

  std::string compact(const std::string& value) const {
    const std::pair<std::string, std::string>* best = nullptr;
    for (const auto& p : prefixes_) {
      if (value.size() >= p.second.size() &&
          value.compare(0, p.second.size(), p.second) == 0 &&
          safe_local(std::string_view(value).substr(p.second.size())) &&
          (best == nullptr || p.second.size() > best->second.size())) {
        best = &p;
      }
    }
    if (best != nullptr) {
      return best->first + ":" + value.substr(best->second.size());
    }
    return Term::iri(value).to_ntriples();
  }

  std::string term(const Term& t) const {
    if (t.is_iri()) return compact(t.value());
    if (t.is_literal() && t.language().empty() && t.datatype() != kXsdString) {
      std::string lexical = Term::literal(t.value()).to_ntriples();
      return lexical + "^^" + compact(t.datatype());
    }
    return t.to_ntriples();
  }

  void header(std::string& out) const {
    for (const auto& [label, ns] : prefixes_) {
      out += "@prefix " + label + ": " + Term::iri(ns).to_ntriples() + " .\n";
    }
    if (!prefixes_.empty()) out += '\n';
  }

  // Writes triples grouped by subject, then predicate, in first-appearance
  // order.
  void triples(std::string& out, const std::vector<const Quad*>& quads,
               const std::string& indent) const {
    std::vector<Term> subjects;
    std::map<Term, std::vector<std::pair<Term, std::vector<Term>>>> by_subject;
    for (const Quad* q : quads) {
      auto [it, fresh] = by_subject.try_emplace(q->subject);
      if (fresh) subjects.push_back(q->subject);
      auto& preds = it->second;
      auto pit = std::find_if(preds.begin(), preds.end(), [&](const auto& e) {
        return e.first == q->predicate;
      });
      if (pit == preds.end()) {
        preds.emplace_back(q->predicate, std::vector<Term>{q->object});
      } else {
        pit->second.push_back(q->object);
      }
    }
    for (const auto& s : subjects) {
      out += indent + term(s);
      const auto& preds = by_subject.at(s);
      for (std::size_t i = 0; i < preds.size(); ++i) {
        if (i > 0) out += " ;\n" + indent + "   ";
        out += ' ' + iri(preds[i].first.value()) + ' ';
        for (std::size_t j = 0; j < preds[i].second.size(); ++j) {
          if (j > 0) out += ", ";
          out += term(preds[i].second[j]);
        }
      }
      out += " .\n";
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> prefixes_;
};

}  // namespace

std::string serialize_trig(const Dataset& ds) {
  Writer w(ds);
  std::string out;
  w.header(out);

  std::vector<const Quad*> default_graph;
  std::vector<Term> graph_order;
  std::map<Term, std::vector<const Quad*>> named;
  for (const auto& q : ds.quads()) {
    if (!q.graph) {
      default_graph.push_back(&q);
      continue;
    }
    auto [it, fresh] = named.try_emplace(*q.graph);
    if (fresh) graph_order.push_back(*q.graph);
    it->second.push_back(&q);
  }

  w.triples(out, default_graph, "");
  for (const auto& g : graph_order) {
    if (!out.empty() && !out.ends_with("\n\n")) out += '\n';
    out += w.term(g) + " {\n";
    w.triples(out, named.at(g), "  ");
    out += "}\n";
  }
  return out;
}

}  // namespace fdof
