#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "latrec/measurement_model.hpp"

namespace latrec {

// Undirected dependency graph over observed variables.
class Udg {
 public:
  explicit Udg(int num_observed, std::vector<Edge> edges = {})
      : n_(num_observed), adj_(static_cast<std::size_t>(num_observed), 0) {
    if (n_ <= 0 || n_ > kMaxNodes) throw InputError("Udg: node count must be in [1, 64]");
    for (auto& [a, b] : edges) {
      if (a > b) std::swap(a, b);
      add_edge(a, b);
    }
  }

  int num_observed() const { return n_; }
  bool has_edge(int a, int b) const { return contains(adj_[static_cast<std::size_t>(a)], b); }
  NodeSet neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }

  void add_edge(int a, int b) {
    if (a < 0 || a >= n_ || b < 0 || b >= n_) throw InputError("Udg: edge endpoint out of range");
    if (a == b) throw InputError("Udg: self-loop");
    adj_[static_cast<std::size_t>(a)] |= bit(b);
    adj_[static_cast<std::size_t>(b)] |= bit(a);
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (int a = 0; a < n_; ++a)
      for_each_node(neighbors(a), [&](int b) {
        if (a < b) out.emplace_back(a, b);
      });
    return out;
  }

  bool operator==(const Udg& o) const { return n_ == o.n_ && adj_ == o.adj_; }
  bool operator<(const Udg& o) const { return adj_ < o.adj_; }

 private:
  int n_;
  std::vector<NodeSet> adj_;
};

namespace detail {

inline void bron_kerbosch(const Udg& g, NodeSet r, NodeSet p, NodeSet x,
                          std::vector<NodeSet>& out) {
  if (p == 0 && x == 0) {
    out.push_back(r);
    return;
  }
  // Pivot: the candidate with the most neighbors in P.
  int pivot = -1, best = -1;
  for_each_node(p | x, [&](int u) {
    const int deg = set_size(g.neighbors(u) & p);
    if (deg > best) {
      best = deg;
      pivot = u;
    }
  });
  NodeSet candidates = p & ~g.neighbors(pivot);
  for_each_node(candidates, [&](int v) {
    bron_kerbosch(g, r | bit(v), p & g.neighbors(v), x & g.neighbors(v), out);
    p &= ~bit(v);
    x |= bit(v);
  });
}

}  // namespace detail

// All maximal cliques, in member-lexicographic order. Isolated vertices count
// as singleton cliques.
inline std::vector<NodeSet> maximal_cliques(const Udg& g) {
  std::vector<NodeSet> out;
  detail::bron_kerbosch(g, 0, full_set(g.num_observed()), 0, out);
  std::sort(out.begin(), out.end(), set_less);
  return out;
}

// UDG of the intervened graph: an edge iff the observed pair is marginally
// d-connected in G^(I).
inline Udg udg_from_graph(const MeasurementModel& g, const Target& target) {
  if (target.has_value() && (*target < 0 || *target >= g.num_latents()))
    throw InputError("udg_from_graph: target out of range");
  const Dag gi = intervene(g.full_dag(), target);
  Udg u(g.num_observed());
  for (int i = 0; i < g.num_observed(); ++i)
    for (int j = i + 1; j < g.num_observed(); ++j)
      if (!d_separated(gi, bit(g.observed_node(i)), bit(g.observed_node(j)), 0)) u.add_edge(i, j);
  return u;
}

// One entry per distinct interventional distribution, plus the union Omega of
// all maximal cliques across entries.
struct CliqueFamily {
  int num_observed = 0;
  std::vector<Udg> udgs;                     // deduplicated, input order of first occurrence
  std::vector<std::vector<NodeSet>> cliques;  // per udg, canonical order
  std::vector<NodeSet> omega;                 // deduplicated union, canonical order
};

inline CliqueFamily clique_family(const std::vector<Udg>& udgs) {
  if (udgs.empty()) throw InputError("clique_family: no distributions");
  CliqueFamily fam;
  fam.num_observed = udgs.front().num_observed();
  for (const Udg& u : udgs) {
    if (u.num_observed() != fam.num_observed)
      throw InputError("clique_family: mismatched observed counts");
    if (std::find(fam.udgs.begin(), fam.udgs.end(), u) != fam.udgs.end()) continue;
    fam.udgs.push_back(u);
    fam.cliques.push_back(maximal_cliques(u));
    for (NodeSet c : fam.cliques.back()) fam.omega.push_back(c);
  }
  std::sort(fam.omega.begin(), fam.omega.end(), set_less);
  fam.omega.erase(std::unique(fam.omega.begin(), fam.omega.end()), fam.omega.end());
  return fam;
}

// Oracle front end: UDGs of the complete target family, duplicates collapsed.
inline std::vector<Udg> oracle_udgs(const MeasurementModel& g) {
  std::vector<Udg> out;
  for (const Target& t : complete_targets(g)) {
    Udg u = udg_from_graph(g, t);
    if (std::find(out.begin(), out.end(), u) == out.end()) out.push_back(std::move(u));
  }
  return out;
}

}  // namespace latrec
