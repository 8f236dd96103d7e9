#include "fdof/isomorphism.hpp"

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace fdof {

IsomorphismBoundExceeded::IsomorphismBoundExceeded(std::size_t count,
                                                   std::size_t bound)
    : std::runtime_error("isomorphism undecided at configured bound: " +
                         std::to_string(count) + " blank nodes exceed " +
                         std::to_string(bound)) {}

namespace {

bool has_blank(const Quad& q) {
  return q.subject.is_blank() || q.object.is_blank() ||
         (q.graph && q.graph->is_blank());
}

std::vector<Term> blank_nodes(const Dataset& ds) {
  std::set<Term> seen;
  for (const auto& q : ds.quads()) {
    if (q.subject.is_blank()) seen.insert(q.subject);
    if (q.object.is_blank()) seen.insert(q.object);
    if (q.graph && q.graph->is_blank()) seen.insert(*q.graph);
  }
  return {seen.begin(), seen.end()};
}

// Occurrence counts per position; a bijection can only pair blank nodes with
// identical signatures.
using Signature = std::array<std::size_t, 3>;

std::map<Term, Signature> signatures(const Dataset& ds) {
  std::map<Term, Signature> sig;
  for (const auto& q : ds.quads()) {
    if (q.subject.is_blank()) ++sig[q.subject][0];
    if (q.object.is_blank()) ++sig[q.object][1];
    if (q.graph && q.graph->is_blank()) ++sig[*q.graph][2];
  }
  return sig;
}

class Matcher {
 public:
  Matcher(const Dataset& a, const Dataset& b) : a_(a), b_(b) {
    for (const auto& q : a.quads()) {
      if (has_blank(q)) blank_quads_.push_back(&q);
    }
    from_ = blank_nodes(a);
    to_ = blank_nodes(b);
    sig_a_ = signatures(a);
    sig_b_ = signatures(b);
  }

  bool run() {
    if (from_.size() != to_.size()) return false;
    used_.assign(to_.size(), false);
    return assign(0);
  }

 private:
  Term map(const Term& t) const {
    if (!t.is_blank()) return t;
    auto it = mapping_.find(t);
    return it->second;
  }

  bool mapped(const Term& t) const {
    return !t.is_blank() || mapping_.contains(t);
  }

  // Every blank-bearing quad of `a` whose blank nodes are all assigned must
  // map onto a quad of `b`.
  bool consistent() const {
    for (const Quad* q : blank_quads_) {
      if (!mapped(q->subject) || !mapped(q->object) ||
          (q->graph && !mapped(*q->graph))) {
        continue;
      }
      GraphName g;
      if (q->graph) g = map(*q->graph);
      if (!b_.contains(Quad{map(q->subject), q->predicate, map(q->object), g})) {
        return false;
      }
    }
    return true;
  }

  bool assign(std::size_t i) {
    if (i == from_.size()) return true;
    const auto& sig = sig_a_.at(from_[i]);
    for (std::size_t j = 0; j < to_.size(); ++j) {
      if (used_[j] || sig_b_.at(to_[j]) != sig) continue;
      used_[j] = true;
      mapping_[from_[i]] = to_[j];
      if (consistent() && assign(i + 1)) return true;
      mapping_.erase(from_[i]);
      used_[j] = false;
    }
    return false;
  }

  const Dataset& a_;
  const Dataset& b_;
  std::vector<const Quad*> blank_quads_;
  std::vector<Term> from_;
  std::vector<Term> to_;
  std::map<Term, Signature> sig_a_;
  std::map<Term, Signature> sig_b_;
  std::map<Term, Term> mapping_;
  std::vector<bool> used_;
};

}  // namespace

bool isomorphic(const Dataset& a, const Dataset& b, std::size_t bound) {
  const auto count = blank_nodes(a).size() + blank_nodes(b).size();
  if (count > bound) throw IsomorphismBoundExceeded(count, bound);
  if (a.size() != b.size()) return false;

  for (const auto& q : a.quads()) {
    if (!has_blank(q) && !b.contains(q)) return false;
  }
  for (const auto& q : b.quads()) {
    if (!has_blank(q) && !a.contains(q)) return false;
  }
  // With equal sizes and equal ground parts, an injective mapping of the
  // blank-bearing quads of `a` into `b` is a bijection of the quad sets.
  return Matcher(a, b).run();
}

}  // namespace fdof
