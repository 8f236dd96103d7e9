#include "fdof/dataset.hpp"

#include <algorithm>

namespace fdof {

bool Dataset::add(Quad quad) {
  if (!index_.insert(quad).second) return false;
  quads_.push_back(std::move(quad));
  return true;
}

void Dataset::add_prefix(std::string label, std::string ns) {
  prefixes_[std::move(label)] = std::move(ns);
}

std::vector<Term> Dataset::graph_names() const {
  std::vector<Term> names;
  std::set<Term> seen;
  for (const auto& q : quads_) {
    if (q.graph && seen.insert(*q.graph).second) names.push_back(*q.graph);
  }
  return names;
}

Dataset Dataset::filter(const std::function<bool(const Quad&)>& keep) const {
  Dataset out;
  out.prefixes_ = prefixes_;
  for (const auto& q : quads_) {
    if (keep(q)) out.add(q);
  }
  return out;
}

void Dataset::merge(const Dataset& other) {
  for (const auto& [label, ns] : other.prefixes_) prefixes_.try_emplace(label, ns);
  for (const auto& q : other.quads_) add(q);
}

Dataset graph_slice(const Dataset& ds, const GraphName& graph) {
  return ds.filter([&](const Quad& q) { return q.graph == graph; });
}

Dataset rename_blank_nodes(const Dataset& ds, const std::string& prefix) {
  auto rename = [&](const Term& t) {
    return t.is_blank() ? Term::blank(prefix + t.value()) : t;
  };
  Dataset out;
  for (const auto& [label, ns] : ds.prefixes()) out.add_prefix(label, ns);
  for (const auto& q : ds.quads()) {
    GraphName g;
    if (q.graph) g = rename(*q.graph);
    out.add(Quad{rename(q.subject), q.predicate, rename(q.object), g});
  }
  return out;
}

}  // namespace fdof
