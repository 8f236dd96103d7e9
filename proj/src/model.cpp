#include "fdof/model.hpp"

#include <algorithm>
#include <set>

#include "fdof/vocabulary.hpp"

namespace fdof {

std::string kind_name(ObjectKind k) {
  switch (k) {
    case ObjectKind::InformationObject: return "InformationObject";
    case ObjectKind::MediaObject: return "MediaObject";
    case ObjectKind::MetadataRecord: return "MetadataRecord";
  }
  return "?";
}

std::vector<std::string> KindSet::names() const {
  std::vector<std::string> out;
  for (auto k : {ObjectKind::InformationObject, ObjectKind::MediaObject,
                 ObjectKind::MetadataRecord}) {
    if (has(k)) out.push_back(kind_name(k));
  }
  return out;
}

const FdofObject* FdofModel::find(const Term& node) const {
  auto it = objects.find(node);
  return it == objects.end() ? nullptr : &it->second;
}

namespace {

template <typename T>
void push_unique(std::vector<T>& v, const T& value) {
  if (std::find(v.begin(), v.end(), value) == v.end()) v.push_back(value);
}

bool is(const Term& t, std::string_view iri) {
  return t.is_iri() && t.value() == iri;
}

}  // namespace

FdofModel extract_model(const Dataset& ds) {
  FdofModel model;
  model.source = ds;

  // Information object types: direct subclasses of the FDIO class.
  std::set<Term> info_classes;
  for (const auto& q : ds.quads()) {
    if (is(q.predicate, vocab::kRdfsSubClassOf) &&
        is(q.object, vocab::kFairDigitalInformationObject)) {
      info_classes.insert(q.subject);
    }
  }
  auto is_info_class = [&](const Term& t) {
    return is(t, vocab::kFairDigitalInformationObject) || info_classes.contains(t);
  };

  auto object_for = [&](const Term& node) -> FdofObject& {
    auto [it, fresh] = model.objects.try_emplace(node);
    if (fresh) it->second.node = node;
    return it->second;
  };

  for (const auto& q : ds.quads()) {
    const auto& p = q.predicate.value();
    if (p == vocab::kRdfType) {
      const auto& o = q.object;
      if (is(o, vocab::kFairDigitalInformationObject)) {
        object_for(q.subject).kinds.add(ObjectKind::InformationObject);
      } else if (is(o, vocab::kFairDigitalMediaObject)) {
        object_for(q.subject).kinds.add(ObjectKind::MediaObject);
      } else if (is(o, vocab::kFairMetadataRecord)) {
        auto& obj = object_for(q.subject);
        obj.kinds.add(ObjectKind::MetadataRecord);
        obj.kinds.add(ObjectKind::InformationObject);
      } else if (is(o, vocab::kFairDigitalObject)) {
        object_for(q.subject).declared_fdo = true;
      } else if (is(o, vocab::kIdentifier)) {
        object_for(q.subject).declared_identifier = true;
      } else if (info_classes.contains(o)) {
        object_for(q.subject).kinds.add(ObjectKind::InformationObject);
      }
    } else if (p == vocab::kHasInformationObjectType) {
      auto& obj = object_for(q.subject);
      push_unique(obj.info_types, q.object);
      if (is_info_class(q.object)) obj.kinds.add(ObjectKind::InformationObject);
    } else if (p == vocab::kGupri) {
      if (!q.object.is_blank()) {
        push_unique(object_for(q.subject).gupris, q.object.value());
      } else {
        object_for(q.subject);
      }
    } else if (p == vocab::kIsIdentifiedBy) {
      push_unique(object_for(q.subject).identifier_nodes, q.object);
    } else if (p == vocab::kIsMaterializedBy) {
      push_unique(object_for(q.subject).materialized_by, q.object);
    } else if (p == vocab::kHasEncodingFormat) {
      push_unique(object_for(q.subject).encoding_formats, q.object);
    } else if (p == vocab::kIsMetadataOf) {
      object_for(q.subject);
    }
  }

  for (const auto& q : ds.quads()) {
    if (q.predicate.value() == vocab::kRdfType ||
        vocab::is_fdof_property(q.predicate.value())) {
      continue;
    }
    auto it = model.objects.find(q.subject);
    if (it != model.objects.end()) {
      push_unique(it->second.attributions, std::pair{q.predicate, q.object});
    }
  }

  // Records: a metadata record is the named graph carrying the record's own
  // name and containing its isMetadataOf statements.
  for (auto& [node, obj] : model.objects) {
    if (!obj.kinds.has(ObjectKind::MetadataRecord)) continue;
    FmrRecord record{node, node, {}, {}};
    for (const auto& q : ds.quads()) {
      if (q.graph == GraphName(node) && q.subject == node &&
          is(q.predicate, vocab::kIsMetadataOf)) {
        push_unique(record.targets, q.object);
      }
    }
    if (record.targets.empty()) continue;
    record.statements = graph_slice(ds, node);
    model.records.emplace(node, std::move(record));
  }
  for (const auto& [node, record] : model.records) {
    for (const auto& target : record.targets) {
      auto it = model.objects.find(target);
      if (it != model.objects.end()) push_unique(it->second.described_by, node);
    }
  }
  return model;
}

ClassificationSummary classify(const FdofModel& model, const Term& node) {
  const FdofObject* obj = model.find(node);
  if (obj == nullptr) throw UnknownNode(node);
  return {obj->node, obj->kinds, obj->info_types, obj->encoding_formats};
}

std::vector<Term> lookup_by_gupri(const FdofModel& model,
                                  std::string_view value) {
  std::vector<Term> out;
  for (const auto& [node, obj] : model.objects) {
    if (std::find(obj.gupris.begin(), obj.gupris.end(), value) !=
        obj.gupris.end()) {
      out.push_back(node);
    }
  }
  return out;
}

}  // namespace fdof
