#pragma once

#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "fdof/term.hpp"

namespace fdof {

using PrefixMap = std::map<std::string, std::string>;

// An RDF dataset: a duplicate-free collection of quads that remembers
// insertion order, plus the prefix declarations seen while parsing.
class Dataset {
 public:
  Dataset() = default;

  // Returns false when the quad was already present.
  bool add(Quad quad);
  void add_prefix(std::string label, std::string ns);

  bool contains(const Quad& quad) const { return index_.contains(quad); }
  std::span<const Quad> quads() const { return quads_; }
  std::size_t size() const { return quads_.size(); }
  bool empty() const { return quads_.empty(); }
  const PrefixMap& prefixes() const { return prefixes_; }

  // Named graphs in order of first appearance.
  std::vector<Term> graph_names() const;
  const std::set<Quad>& quad_set() const { return index_; }

  // Copy keeping only the quads for which `keep` returns true. Prefixes are
  // carried over.
  Dataset filter(const std::function<bool(const Quad&)>& keep) const;

  // Appends every quad of `other` and adopts prefixes not declared here.
  void merge(const Dataset& other);

  bool operator==(const Dataset& other) const {
    return index_ == other.index_;
  }

 private:
  std::vector<Quad> quads_;
  std::set<Quad> index_;
  PrefixMap prefixes_;
};

// Quads whose graph equals `graph` (std::nullopt selects the default graph).
Dataset graph_slice(const Dataset& ds, const GraphName& graph);

// Renames every blank-node label `x` to `prefix + x`.
Dataset rename_blank_nodes(const Dataset& ds, const std::string& prefix);

}  // namespace fdof
