#include "fdof/shapes.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"

namespace fdof {

using json = nlohmann::json;

bool ValueKind::admits(const Term& value) const {
  switch (tag) {
    case Tag::Any: return true;
    case Tag::Iri: return value.is_iri();
    case Tag::Literal: return value.is_literal();
    case Tag::Datatype: return value.is_literal() && value.datatype() == datatype;
  }
  return false;
}

std::string ValueKind::describe() const {
  switch (tag) {
    case Tag::Any: return "any";
    case Tag::Iri: return "iri";
    case Tag::Literal: return "literal";
    case Tag::Datatype: return "literal of datatype <" + datatype + ">";
  }
  return "?";
}

ShapeError::ShapeError(std::string message, std::size_t line,
                       std::size_t column)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) +
                                        ", column " + std::to_string(column) +
                                        ": " + message
                                  : message),
      line_(line),
      column_(column) {}

ShapeRegistry ShapeRegistry::from_shapes(std::vector<TypeShape> shapes) {
  ShapeRegistry reg;
  for (auto& shape : shapes) {
    std::set<std::string> mandatory;
    for (const auto& r : shape.mandatory) {
      if (r.min_count < 1) {
        throw ShapeError("mandatory requirement on <" + r.property +
                         "> in shape <" + shape.type_iri +
                         "> must have min_count >= 1");
      }
      mandatory.insert(r.property);
    }
    for (const auto& r : shape.optional) {
      if (mandatory.contains(r.property)) {
        throw ShapeError("property <" + r.property +
                         "> is both mandatory and optional in shape <" +
                         shape.type_iri + ">");
      }
    }
    const std::string key = shape.type_iri;
    if (!reg.shapes_.emplace(key, std::move(shape)).second) {
      throw ShapeError("duplicate shape for type <" + key + ">");
    }
  }
  for (const auto& [type, shape] : reg.shapes_) {
    std::set<std::string> seen{type};
    const TypeShape* cur = &shape;
    while (cur->parent) {
      const TypeShape* parent = reg.find(*cur->parent);
      if (parent == nullptr) {
        throw ShapeError("shape <" + cur->type_iri + "> names unknown parent <" +
                         *cur->parent + ">");
      }
      if (!seen.insert(parent->type_iri).second) {
        throw ShapeError("inheritance cycle through shape <" + type + ">");
      }
      cur = parent;
    }
  }
  return reg;
}

const TypeShape* ShapeRegistry::find(std::string_view type_iri) const {
  auto it = shapes_.find(type_iri);
  return it == shapes_.end() ? nullptr : &it->second;
}

namespace {

void fold(std::map<std::string, EffectiveRequirement>& acc,
          const PropertyRequirement& r, bool mandatory) {
  auto [it, fresh] = acc.try_emplace(r.property);
  auto& e = it->second;
  if (fresh) e.property = r.property;
  e.mandatory = e.mandatory || mandatory;
  e.min_count = std::max(e.min_count, r.min_count);
  if (r.value_kind.tag != ValueKind::Tag::Any &&
      std::find(e.value_kinds.begin(), e.value_kinds.end(), r.value_kind) ==
          e.value_kinds.end()) {
    e.value_kinds.push_back(r.value_kind);
  }
}

std::vector<EffectiveRequirement> own_requirements(const TypeShape& shape) {
  std::map<std::string, EffectiveRequirement> acc;
  for (const auto& r : shape.mandatory) fold(acc, r, true);
  for (const auto& r : shape.optional) fold(acc, r, false);
  std::vector<EffectiveRequirement> out;
  for (auto& [_, e] : acc) out.push_back(std::move(e));
  return out;
}

}  // namespace

std::vector<EffectiveRequirement> ShapeRegistry::effective(
    std::string_view type_iri) const {
  std::map<std::string, EffectiveRequirement> acc;
  for (const TypeShape* cur = find(type_iri); cur != nullptr;
       cur = cur->parent ? find(*cur->parent) : nullptr) {
    for (const auto& r : cur->mandatory) fold(acc, r, true);
    for (const auto& r : cur->optional) fold(acc, r, false);
  }
  std::vector<EffectiveRequirement> out;
  for (auto& [_, e] : acc) out.push_back(std::move(e));
  return out;
}

// ---- configuration ----------------------------------------------------------

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text,
                                                std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
      ++column;
    }
  }
  return {line, column};
}

class ConfigReader {
 public:
  TypeShape shape(const json& j, const std::string& at) {
    require_object(j, at);
    check_keys(j, at, {"type", "label", "parent", "mandatory", "optional"});
    TypeShape s;
    s.type_iri = iri(field(j, "type", at), at + "/type");
    if (j.contains("label")) s.label = string(j["label"], at + "/label");
    if (j.contains("parent")) s.parent = iri(j["parent"], at + "/parent");
    if (j.contains("mandatory")) {
      s.mandatory = requirements(j["mandatory"], at + "/mandatory");
    }
    if (j.contains("optional")) {
      s.optional = requirements(j["optional"], at + "/optional");
    }
    return s;
  }

  void prefixes(const json& j) {
    require_object(j, "/prefixes");
    for (const auto& [label, ns] : j.items()) {
      prefixes_[label] = string(ns, "/prefixes/" + label);
    }
  }

  static void require_object(const json& j, const std::string& at) {
    if (!j.is_object()) throw ShapeError("expected an object at " + pointer(at));
  }

  static std::string pointer(const std::string& at) {
    return at.empty() ? std::string("/") : at;
  }

 private:
  std::vector<PropertyRequirement> requirements(const json& j,
                                                const std::string& at) {
    if (!j.is_array()) throw ShapeError("expected a list at " + pointer(at));
    std::vector<PropertyRequirement> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string here = at + "/" + std::to_string(i);
      require_object(j[i], here);
      check_keys(j[i], here, {"property", "min_count", "value_kind"});
      PropertyRequirement r;
      r.property = iri(field(j[i], "property", here), here + "/property");
      if (j[i].contains("min_count")) {
        const auto& m = j[i]["min_count"];
        if (!m.is_number_integer() || m.get<long long>() < 0) {
          throw ShapeError("min_count must be a non-negative integer at " +
                           here + "/min_count");
        }
        r.min_count = m.get<std::size_t>();
      }
      if (j[i].contains("value_kind")) {
        r.value_kind = value_kind(j[i]["value_kind"], here + "/value_kind");
      }
      out.push_back(std::move(r));
    }
    return out;
  }

  ValueKind value_kind(const json& j, const std::string& at) {
    const std::string v = string(j, at);
    if (v == "any") return ValueKind::any();
    if (v == "iri") return ValueKind::iri();
    if (v == "literal") return ValueKind::literal();
    return ValueKind::of_datatype(iri(j, at));
  }

  static const json& field(const json& j, const char* key,
                           const std::string& at) {
    if (!j.contains(key)) {
      throw ShapeError(std::string("missing key \"") + key + "\" at " +
                       pointer(at));
    }
    return j[key];
  }

  static std::string string(const json& j, const std::string& at) {
    if (!j.is_string()) throw ShapeError("expected a string at " + at);
    return j.get<std::string>();
  }

  static void check_keys(const json& j, const std::string& at,
                         std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, _] : j.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw ShapeError("unknown key \"" + key + "\" at " + pointer(at));
      }
    }
  }

  std::string iri(const json& j, const std::string& at) {
    std::string v = string(j, at);
    const auto colon = v.find(':');
    if (colon != std::string::npos) {
      auto it = prefixes_.find(v.substr(0, colon));
      if (it != prefixes_.end()) v = it->second + v.substr(colon + 1);
    }
    if (!has_absolute_form(v)) {
      throw ShapeError("\"" + v + "\" is not an absolute IRI or known prefixed "
                       "name at " + at);
    }
    return v;
  }

  std::map<std::string, std::string> prefixes_;
};

}  // namespace

ShapeRegistry load_shapes(std::string_view config) {
  if (config.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    return {};
  }
  json doc;
  try {
    doc = json::parse(config);
  } catch (const json::parse_error& e) {
    const auto [line, column] =
        line_column(config, e.byte > 0 ? e.byte - 1 : 0);
    std::string what = e.what();
    const auto cut = what.find("parse error");
    throw ShapeError(cut == std::string::npos ? what : what.substr(cut), line,
                     column);
  }

  ConfigReader reader;
  const json* list = &doc;
  if (doc.is_object()) {
    for (const auto& [key, _] : doc.items()) {
      if (key != "prefixes" && key != "shapes") {
        throw ShapeError("unknown key \"" + key + "\" at /");
      }
    }
    if (doc.contains("prefixes")) reader.prefixes(doc["prefixes"]);
    if (!doc.contains("shapes")) return {};
    list = &doc["shapes"];
  }
  if (!list->is_array()) {
    throw ShapeError("expected a list of shapes (or an object with \"shapes\")");
  }
  std::vector<TypeShape> shapes;
  const std::string base = doc.is_object() ? "/shapes" : "";
  for (std::size_t i = 0; i < list->size(); ++i) {
    shapes.push_back(reader.shape((*list)[i], base + "/" + std::to_string(i)));
  }
  return ShapeRegistry::from_shapes(std::move(shapes));
}

// ---- conformance ------------------------------------------------------------

namespace {

std::vector<RequirementFinding> check(
    const FdofModel& model, const Term& node,
    const std::vector<EffectiveRequirement>& requirements) {
  if (model.find(node) == nullptr) throw UnknownNode(node);
  std::vector<RequirementFinding> out;
  for (const auto& req : requirements) {
    if (!req.mandatory) continue;
    std::set<Term> values;
    for (const auto& q : model.source.quads()) {
      if (q.subject == node && q.predicate.is_iri() &&
          q.predicate.value() == req.property) {
        values.insert(q.object);
      }
    }
    std::size_t ok = 0;
    for (const auto& v : values) {
      if (std::all_of(req.value_kinds.begin(), req.value_kinds.end(),
                      [&](const ValueKind& k) { return k.admits(v); })) {
        ++ok;
      }
    }
    if (ok >= req.min_count) continue;
    RequirementFinding f;
    f.property = req.property;
    f.count = ok;
    f.total = values.size();
    f.min_count = req.min_count;
    if (values.empty()) {
      f.reason = RequirementFinding::Reason::Missing;
      f.message = "missing mandatory property <" + req.property + ">";
    } else if (ok < values.size()) {
      f.reason = RequirementFinding::Reason::WrongValueKind;
      std::string kinds;
      for (const auto& k : req.value_kinds) {
        if (!kinds.empty()) kinds += " and ";
        kinds += k.describe();
      }
      f.message = "property <" + req.property + "> has " + std::to_string(ok) +
                  " value(s) of kind " + kinds + ", needs " +
                  std::to_string(req.min_count);
    } else {
      f.reason = RequirementFinding::Reason::TooFew;
      f.message = "property <" + req.property + "> has " + std::to_string(ok) +
                  " value(s), needs at least " + std::to_string(req.min_count);
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

std::vector<RequirementFinding> conformance(const FdofModel& model,
                                            const Term& node,
                                            const ShapeRegistry& registry,
                                            std::string_view type_iri) {
  return check(model, node, registry.effective(type_iri));
}

std::vector<RequirementFinding> conformance(const FdofModel& model,
                                            const Term& node,
                                            const TypeShape& shape) {
  return check(model, node, own_requirements(shape));
}

}  // namespace fdof
