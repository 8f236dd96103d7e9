#include "fdof/validator.hpp"

#include <algorithm>
#include <tuple>

#include "fdof/identifiers.hpp"
#include "fdof/vocabulary.hpp"

namespace fdof {

std::string rule_name(Rule rule) {
  return "C" + std::to_string(static_cast<int>(rule));
}

Rule parse_rule(std::string_view name) {
  if (name.size() >= 2 && name[0] == 'C') {
    int n = 0;
    for (char c : name.substr(1)) {
      if (c < '0' || c > '9') throw std::invalid_argument("bad rule id");
      n = n * 10 + (c - '0');
    }
    if (n >= 1 && n <= 10) return static_cast<Rule>(n);
  }
  throw std::invalid_argument("unknown rule id: " + std::string(name));
}

std::string severity_name(Severity s) {
  return s == Severity::Violation ? "violation" : "warning";
}

bool ValidationReport::conforms() const { return violation_count() == 0; }

std::size_t ValidationReport::violation_count() const {
  return static_cast<std::size_t>(
      std::count_if(findings.begin(), findings.end(), [](const Finding& f) {
        return f.severity == Severity::Violation;
      }));
}

std::size_t ValidationReport::warning_count() const {
  return findings.size() - violation_count();
}

namespace {

bool is(const Term& t, std::string_view iri) {
  return t.is_iri() && t.value() == iri;
}

class Engine {
 public:
  Engine(const FdofModel& model, const ShapeRegistry& registry,
         const ValidateOptions& options)
      : model_(model), registry_(registry), options_(options) {}

  ValidationReport run() {
    identification();
    uniqueness();
    description();
    records();
    materialization();
    encoding();
    abstract_fdo();
    typing();
    identifier_syntax();
    return finish();
  }

 private:
  // C1
  void identification() {
    for (const auto& [node, obj] : model_.objects) {
      if (!obj.is_fdo()) continue;
      if (node.is_blank()) {
        add(Rule::C1, Severity::Violation, node,
            "blank node cannot carry a globally unique identifier");
      } else if (!identifiable(obj)) {
        add(Rule::C1, Severity::Violation, node,
            "no fdof:gupri value and no fdof:isIdentifiedBy link to an "
            "fdof:Identifier");
      }
    }
  }

  // C2
  void uniqueness() {
    std::vector<std::pair<std::string, std::string>> bindings;
    std::map<std::string, Term> by_key;
    for (const auto& [node, obj] : model_.objects) {
      const auto key = node.to_ntriples();
      by_key.emplace(key, node);
      for (const auto& g : obj.gupris) bindings.emplace_back(g, key);
    }
    for (const auto& c : uniqueness_audit(bindings)) {
      std::string all;
      for (const auto& s : c.subjects) all += (all.empty() ? "" : ", ") + s;
      for (const auto& s : c.subjects) {
        const Term& node = by_key.at(s);
        add(Rule::C2, Severity::Violation, node,
            "GUPRI \"" + c.value + "\" is shared by " + all,
            gupri_quads(node, c.value));
      }
    }
  }

  // C3
  void description() {
    for (const auto& [node, obj] : model_.objects) {
      if (!obj.is_fdo() || obj.kinds.has(ObjectKind::MetadataRecord)) continue;
      if (obj.described_by.empty()) {
        add(Rule::C3, Severity::Violation, node,
            "not described by any FAIR metadata record");
      }
    }
  }

  // C4
  void records() {
    for (const auto& [node, obj] : model_.objects) {
      if (!obj.kinds.has(ObjectKind::MetadataRecord)) continue;
      const GraphName own(node);
      std::vector<Quad> stray;
      bool graph_exists = false;
      for (const auto& q : model_.source.quads()) {
        if (q.graph == own) graph_exists = true;
        if (q.subject == node && is(q.predicate, vocab::kIsMetadataOf) &&
            q.graph != own) {
          stray.push_back(q);
        }
      }
      if (!stray.empty()) {
        add(Rule::C4, Severity::Warning, node,
            "isMetadataOf statements outside the record's own named graph",
            stray);
      }
      auto rec = model_.records.find(node);
      if (rec == model_.records.end()) {
        add(Rule::C4, Severity::Violation, node,
            graph_exists ? "named graph " + node.to_ntriples() +
                               " holds no isMetadataOf statement of the record"
                         : "no named graph " + node.to_ntriples() +
                               " realizes this metadata record");
        continue;
      }
      for (const auto& target : rec->second.targets) {
        const FdofObject* t = model_.find(target);
        if (target.is_blank() || t == nullptr || !identifiable(*t)) {
          add(Rule::C4, Severity::Violation, node,
              "described object " + target.to_ntriples() +
                  " carries no identifier");
          continue;
        }
        const bool stated = std::any_of(
            rec->second.statements.quads().begin(),
            rec->second.statements.quads().end(), [&](const Quad& q) {
              return q.subject == target && (is(q.predicate, vocab::kGupri) ||
                                             is(q.predicate, vocab::kIsIdentifiedBy));
            });
        if (!stated) {
          add(Rule::C4, Severity::Warning, node,
              "record does not state the identifier of " + target.to_ntriples());
        }
      }
    }
  }

  // C5
  void materialization() {
    const auto severity = options_.materialization_as_warning
                              ? Severity::Warning
                              : Severity::Violation;
    for (const auto& [node, obj] : model_.objects) {
      if (!obj.kinds.has(ObjectKind::InformationObject)) continue;
      const bool ok = std::any_of(
          obj.materialized_by.begin(), obj.materialized_by.end(),
          [&](const Term& m) {
            const FdofObject* media = model_.find(m);
            return media != nullptr && media->kinds.has(ObjectKind::MediaObject);
          });
      if (!ok) {
        add(Rule::C5, severity, node,
            "not materialized by any FAIR digital media object");
      }
    }
  }

  // C6
  void encoding() {
    for (const auto& [node, obj] : model_.objects) {
      if (!obj.kinds.has(ObjectKind::MediaObject)) continue;
      if (obj.encoding_formats.empty()) {
        add(Rule::C6, Severity::Violation, node, "no encoding format");
      } else if (obj.encoding_formats.size() > 1) {
        add(Rule::C6, Severity::Warning, node,
            std::to_string(obj.encoding_formats.size()) + " encoding formats",
            matching(node, vocab::kHasEncodingFormat));
      }
    }
  }

  // C7
  void abstract_fdo() {
    for (const auto& [node, obj] : model_.objects) {
      if (!obj.declared_fdo) continue;
      if (obj.kinds.has(ObjectKind::InformationObject) ||
          obj.kinds.has(ObjectKind::MediaObject)) {
        continue;
      }
      std::vector<Quad> evidence;
      for (const auto& q : matching(node, vocab::kRdfType)) {
        if (is(q.object, vocab::kFairDigitalObject)) evidence.push_back(q);
      }
      add(Rule::C7, Severity::Violation, node,
          "typed as the abstract FAIRDigitalObject without being an "
          "information or media object",
          evidence);
    }
  }

  // C8, C9
  void typing() {
    for (const auto& [node, obj] : model_.objects) {
      if (obj.kinds.has(ObjectKind::InformationObject) && obj.info_types.empty()) {
        add(Rule::C8, Severity::Warning, node, "no information object type");
      }
      for (const auto& type : obj.info_types) {
        if (type.is_iri() && registry_.find(type.value()) != nullptr) {
          for (const auto& f : conformance(model_, node, registry_, type.value())) {
            add(Rule::C9, Severity::Violation, node,
                "type " + type.to_ntriples() + ": " + f.message);
          }
        } else if (options_.warn_unregistered_types) {
          add(Rule::C9, Severity::Warning, node,
              "no shape registered for type " + type.to_ntriples());
        }
      }
    }
  }

  // C10
  void identifier_syntax() {
    for (const auto& [node, obj] : model_.objects) {
      for (const auto& g : obj.gupris) {
        if (!is_gupri(g, IdentificationSpace::uri())) {
          add(Rule::C10, Severity::Violation, node,
              "GUPRI \"" + g + "\" is not a URI", gupri_quads(node, g));
        }
      }
    }
  }

  bool identifiable(const FdofObject& obj) const {
    if (obj.node.is_blank()) return false;
    if (!obj.gupris.empty()) return true;
    return std::any_of(obj.identifier_nodes.begin(), obj.identifier_nodes.end(),
                       [&](const Term& id) {
                         const FdofObject* o = model_.find(id);
                         return o != nullptr && o->declared_identifier;
                       });
  }

  std::vector<Quad> matching(const Term& subject, std::string_view predicate) const {
    std::vector<Quad> out;
    for (const auto& q : model_.source.quads()) {
      if (q.subject == subject && is(q.predicate, predicate)) out.push_back(q);
    }
    return out;
  }

  std::vector<Quad> gupri_quads(const Term& node, const std::string& value) const {
    std::vector<Quad> out;
    for (const auto& q : matching(node, vocab::kGupri)) {
      if (q.object.value() == value) out.push_back(q);
    }
    return out;
  }

  void add(Rule rule, Severity severity, const Term& focus, std::string message,
           std::vector<Quad> evidence = {}) {
    if (options_.strict) severity = Severity::Violation;
    findings_.push_back(
        Finding{rule, severity, focus, std::move(message), std::move(evidence)});
  }

  ValidationReport finish() {
    ValidationReport report;
    std::vector<std::pair<std::string, Finding>> keyed;
    keyed.reserve(findings_.size());
    for (auto& f : findings_) keyed.emplace_back(f.focus.to_ntriples(), std::move(f));
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
      return std::tie(a.second.rule, a.first, a.second.message) <
             std::tie(b.second.rule, b.first, b.second.message);
    });
    for (auto& [_, f] : keyed) {
      auto& counts = f.severity == Severity::Violation ? report.violations_per_rule
                                                       : report.warnings_per_rule;
      ++counts[rule_name(f.rule)];
      report.findings.push_back(std::move(f));
    }
    auto& s = report.summary;
    for (const auto& [node, obj] : model_.objects) {
      ++s.objects;
      if (obj.is_fdo()) ++s.fdos;
      if (obj.kinds.has(ObjectKind::InformationObject)) ++s.information_objects;
      if (obj.kinds.has(ObjectKind::MediaObject)) ++s.media_objects;
      if (obj.kinds.has(ObjectKind::MetadataRecord)) ++s.metadata_records;
    }
    return report;
  }

  const FdofModel& model_;
  const ShapeRegistry& registry_;
  const ValidateOptions& options_;
  std::vector<Finding> findings_;
};

}  // namespace

ValidationReport validate(const FdofModel& model, const ShapeRegistry& registry,
                          const ValidateOptions& options) {
  return Engine(model, registry, options).run();
}

std::set<Term> brute_force_c3(const Dataset& ds) {
  if (ds.size() > kBruteForceQuadLimit) {
    throw OracleBoundExceeded("brute-force C3 oracle is limited to " +
                              std::to_string(kBruteForceQuadLimit) + " quads");
  }
  const auto quads = ds.quads();
  auto info_subclass = [&](const Term& cls) {
    for (const auto& q : quads) {
      if (q.subject == cls && is(q.predicate, vocab::kRdfsSubClassOf) &&
          is(q.object, vocab::kFairDigitalInformationObject)) {
        return true;
      }
    }
    return false;
  };
  auto is_fdo = [&](const Term& x) {
    for (const auto& q : quads) {
      if (q.subject != x) continue;
      if (is(q.predicate, vocab::kRdfType) &&
          (is(q.object, vocab::kFairDigitalObject) ||
           is(q.object, vocab::kFairDigitalInformationObject) ||
           is(q.object, vocab::kFairDigitalMediaObject) ||
           is(q.object, vocab::kFairMetadataRecord) || info_subclass(q.object))) {
        return true;
      }
      if (is(q.predicate, vocab::kHasInformationObjectType) &&
          (is(q.object, vocab::kFairDigitalInformationObject) ||
           info_subclass(q.object))) {
        return true;
      }
    }
    return false;
  };
  auto is_fmr = [&](const Term& y) {
    for (const auto& q : quads) {
      if (q.subject == y && is(q.predicate, vocab::kRdfType) &&
          is(q.object, vocab::kFairMetadataRecord)) {
        return true;
      }
    }
    return false;
  };
  auto described = [&](const Term& x) {
    for (const auto& q : quads) {
      if (q.object == x && is(q.predicate, vocab::kIsMetadataOf) && q.graph &&
          *q.graph == q.subject && is_fmr(q.subject)) {
        return true;
      }
    }
    return false;
  };

  std::set<Term> out;
  for (const auto& q : quads) {
    const Term& x = q.subject;
    if (out.contains(x)) continue;
    if (is_fdo(x) && !is_fmr(x) && !described(x)) out.insert(x);
  }
  return out;
}

}  // namespace fdof
