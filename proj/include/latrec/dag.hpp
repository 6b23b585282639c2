#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "latrec/bits.hpp"
#include "latrec/errors.hpp"

namespace latrec {

using Edge = std::pair<int, int>;

// Immutable DAG over dense 0-based node ids. Construction validates range,
// self-loops, duplicates and acyclicity.
class Dag {
 public:
  Dag(int node_count, std::vector<Edge> edges) : n_(node_count), edges_(std::move(edges)) {
    if (n_ <= 0 || n_ > kMaxNodes) throw InputError("Dag: node_count must be in [1, 64]");
    parents_.assign(static_cast<std::size_t>(n_), 0);
    children_.assign(static_cast<std::size_t>(n_), 0);
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto [a, b] = edges_[i];
      if (a < 0 || a >= n_ || b < 0 || b >= n_) throw InputError("Dag: edge endpoint out of range");
      if (a == b) throw InputError("Dag: self-loop " + std::to_string(a));
      if (i > 0 && edges_[i] == edges_[i - 1]) throw InputError("Dag: duplicate edge");
      children_[static_cast<std::size_t>(a)] |= bit(b);
      parents_[static_cast<std::size_t>(b)] |= bit(a);
    }
    topological_order();
    if (topo_failed_) throw InputError("Dag: edge set contains a cycle");
  }

  int node_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  NodeSet all_nodes() const { return full_set(n_); }
  NodeSet parents(int v) const { return parents_[static_cast<std::size_t>(v)]; }
  NodeSet children(int v) const { return children_[static_cast<std::size_t>(v)]; }
  bool has_edge(int a, int b) const { return contains(children_[static_cast<std::size_t>(a)], b); }
  bool adjacent(int a, int b) const { return has_edge(a, b) || has_edge(b, a); }

  // Kahn's algorithm; sets topo_failed_ and returns {} on a cycle.
  std::vector<int> topological_order() const {
    std::vector<int> indeg(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) indeg[static_cast<std::size_t>(v)] = set_size(parents(v));
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n_));
    std::vector<int> queue;
    for (int v = 0; v < n_; ++v)
      if (indeg[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
    while (!queue.empty()) {
      const int v = queue.back();
      queue.pop_back();
      order.push_back(v);
      for_each_node(children(v), [&](int c) {
        if (--indeg[static_cast<std::size_t>(c)] == 0) queue.push_back(c);
      });
    }
    topo_failed_ = static_cast<int>(order.size()) != n_;
    if (topo_failed_) return {};
    return order;
  }

  bool operator==(const Dag& o) const { return n_ == o.n_ && edges_ == o.edges_; }

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<NodeSet> parents_, children_;
  mutable bool topo_failed_ = false;
};

enum class Relation { Parents, Children, Ancestors, Descendants };

// Ancestors/descendants exclude the node itself unless include_self is set
// (the closure variants).
inline NodeSet relatives(const Dag& g, int node, Relation rel, bool include_self = false) {
  if (node < 0 || node >= g.node_count()) throw InputError("relatives: node out of range");
  NodeSet out = 0;
  switch (rel) {
    case Relation::Parents:
      out = g.parents(node);
      break;
    case Relation::Children:
      out = g.children(node);
      break;
    case Relation::Ancestors:
    case Relation::Descendants: {
      const bool up = rel == Relation::Ancestors;
      NodeSet frontier = up ? g.parents(node) : g.children(node);
      while (frontier != 0) {
        out |= frontier;
        NodeSet next = 0;
        for_each_node(frontier, [&](int v) { next |= up ? g.parents(v) : g.children(v); });
        frontier = next & ~out;
      }
      break;
    }
  }
  if (include_self) out |= bit(node);
  return out;
}

// Hard intervention: all edges into the target are removed. An empty target
// returns the graph unchanged.
inline Dag intervene(const Dag& g, const std::optional<int>& target) {
  if (!target.has_value()) return g;
  const int t = *target;
  if (t < 0 || t >= g.node_count()) throw InputError("intervene: target out of range");
  std::vector<Edge> kept;
  kept.reserve(g.edges().size());
  for (const auto& e : g.edges())
    if (e.second != t) kept.push_back(e);
  return Dag(g.node_count(), std::move(kept));
}

// d-separation by reachability over (node, direction) states. Arriving "down"
// at a node means the trail entered through a parent edge; such a node can
// only be left upward when it is in C or has a descendant in C (collider).
inline bool d_separated(const Dag& g, NodeSet a, NodeSet b, NodeSet c) {
  if (a == 0 || b == 0) throw InputError("d_separated: A and B must be nonempty");
  if ((a & b) != 0 || (a & c) != 0 || (b & c) != 0)
    throw InputError("d_separated: A, B, C must be pairwise disjoint");
  if (!subset_of(a | b | c, g.all_nodes())) throw InputError("d_separated: node out of range");

  // Ancestors of C, including C itself.
  NodeSet anc = c;
  {
    NodeSet frontier = c;
    while (frontier != 0) {
      NodeSet next = 0;
      for_each_node(frontier, [&](int v) { next |= g.parents(v); });
      frontier = next & ~anc;
      anc |= next;
    }
  }

  NodeSet seen_up = 0, seen_down = 0;
  std::vector<std::pair<int, bool>> stack;  // (node, arrived_down)
  for_each_node(a, [&](int v) { stack.emplace_back(v, false); });
  while (!stack.empty()) {
    const auto [v, down] = stack.back();
    stack.pop_back();
    NodeSet& seen = down ? seen_down : seen_up;
    if (contains(seen, v)) continue;
    seen |= bit(v);
    if (!contains(c, v) && contains(b, v)) return false;
    if (!down) {
      if (contains(c, v)) continue;
      for_each_node(g.parents(v), [&](int p) { stack.emplace_back(p, false); });
      for_each_node(g.children(v), [&](int ch) { stack.emplace_back(ch, true); });
    } else {
      if (!contains(c, v))
        for_each_node(g.children(v), [&](int ch) { stack.emplace_back(ch, true); });
      if (contains(anc, v))
        for_each_node(g.parents(v), [&](int p) { stack.emplace_back(p, false); });
    }
  }
  return true;
}

enum class EdgeClass { Normal, Covered, Isolated };

// Isolated implies covered; isolated wins in the report.
inline EdgeClass edge_class(const Dag& g, int a, int b) {
  if (a < 0 || a >= g.node_count() || b < 0 || b >= g.node_count())
    throw InputError("edge_class: node out of range");
  if (!g.has_edge(a, b)) throw InputError("edge_class: edge absent");
  if (g.parents(a) == 0 && g.parents(b) == bit(a)) return EdgeClass::Isolated;
  if ((g.parents(a) | bit(a)) == g.parents(b)) return EdgeClass::Covered;
  return EdgeClass::Normal;
}

// Family of d-separation statements with singleton A and B, canonically
// ordered. Marginal mode keeps only C = {} entries.
struct DsepFamily {
  NodeSet universe = 0;
  bool marginal_only = true;
  std::vector<std::tuple<int, int, NodeSet>> entries;  // (a < b, conditioning set)

  bool operator==(const DsepFamily& o) const {
    return universe == o.universe && marginal_only == o.marginal_only && entries == o.entries;
  }
  bool operator<(const DsepFamily& o) const { return entries < o.entries; }
};

inline constexpr int kDsepFamilyFullModeMaxNodes = 8;

inline DsepFamily dsep_family(const Dag& g, NodeSet universe, bool marginal_only) {
  if (!subset_of(universe, g.all_nodes())) throw InputError("dsep_family: universe out of range");
  if (!marginal_only && set_size(universe) > kDsepFamilyFullModeMaxNodes)
    throw GuardError("dsep_family: universe too large for exhaustive full mode");
  DsepFamily fam;
  fam.universe = universe;
  fam.marginal_only = marginal_only;
  const std::vector<int> nodes = set_to_vector(universe);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const int a = nodes[i], b = nodes[j];
      if (marginal_only) {
        if (d_separated(g, bit(a), bit(b), 0)) fam.entries.emplace_back(a, b, NodeSet{0});
        continue;
      }
      const NodeSet rest = universe & ~(bit(a) | bit(b));
      // Iterate all subsets of rest.
      NodeSet c = 0;
      while (true) {
        if (d_separated(g, bit(a), bit(b), c)) fam.entries.emplace_back(a, b, c);
        if (c == rest) break;
        c = (c - rest) & rest;  // next subset
      }
    }
  }
  std::sort(fam.entries.begin(), fam.entries.end());
  return fam;
}

}  // namespace latrec
