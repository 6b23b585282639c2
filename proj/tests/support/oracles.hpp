#pragma once

// Independent brute-force oracles used only by tests. They stay deliberately
// naive: exhaustive path enumeration, exhaustive subset scans. The library
// must agree with these, never the other way around.

#include <vector>

#include "latrec/dag.hpp"
#include "latrec/rng.hpp"
#include "latrec/subsets.hpp"

namespace latrec::oracles {

namespace detail {

// DFS over all simple undirected paths a..b, remembering step directions.
// A path is active given C when every collider (or a descendant of it) is in
// C and no non-collider interior node is in C.
inline bool path_active(const Dag& g, const std::vector<int>& nodes,
                        const std::vector<bool>& step_forward, NodeSet c) {
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    const bool collider = step_forward[i - 1] && !step_forward[i];
    const int v = nodes[i];
    if (collider) {
      if ((relatives(g, v, Relation::Descendants, true) & c) == 0) return false;
    } else {
      if (contains(c, v)) return false;
    }
  }
  return true;
}

inline bool search_paths(const Dag& g, int current, int goal, NodeSet visited,
                         std::vector<int>& nodes, std::vector<bool>& steps, NodeSet c) {
  if (current == goal) return path_active(g, nodes, steps, c);
  NodeSet next = (g.children(current) | g.parents(current)) & ~visited;
  bool found = false;
  for_each_node(next, [&](int v) {
    if (found) return;
    nodes.push_back(v);
    steps.push_back(g.has_edge(current, v));
    if (search_paths(g, v, goal, visited | bit(v), nodes, steps, c)) found = true;
    nodes.pop_back();
    steps.pop_back();
  });
  return found;
}

}  // namespace detail

inline bool d_separated_by_paths(const Dag& g, int a, int b, NodeSet c) {
  std::vector<int> nodes{a};
  std::vector<bool> steps;
  return !detail::search_paths(g, a, b, bit(a), nodes, steps, c);
}

// Definition-literal maximal valid subsets: scan all nonempty subsets.
inline std::vector<NodeSet> maximal_valid_subsets_bruteforce(const CliqueFamily& fam) {
  const int n = fam.num_observed;
  std::vector<NodeSet> valid;
  for (NodeSet s = 1; s <= full_set(n); ++s)
    if (is_valid(s, fam)) valid.push_back(s);
  std::vector<NodeSet> out;
  for (NodeSet s : valid) {
    bool maximal = true;
    for (NodeSet t : valid) {
      if (t == s || !subset_of(s, t)) continue;
      bool fits_all = true;
      for (NodeSet cl : fam.omega)
        if (subset_of(s, cl) && !subset_of(t, cl)) {
          fits_all = false;
          break;
        }
      if (fits_all) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), set_less);
  return out;
}

inline Dag random_dag(Rng& rng, int max_nodes, double density) {
  const int n = 2 + rng.uniform_int(max_nodes - 1);
  const std::vector<int> order = rng.permutation(n);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(density))
        edges.emplace_back(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  return Dag(n, std::move(edges));
}

// Unconstrained random measurement model; no identifiability guarantees.
inline MeasurementModel random_mm(Rng& rng, int m, int n, double latent_density,
                                  double bipartite_density) {
  const std::vector<int> order = rng.permutation(m);
  std::vector<Edge> latent;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (rng.bernoulli(latent_density))
        latent.emplace_back(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  std::vector<Edge> bipartite;
  for (int x = 0; x < n; ++x) {
    bool any = false;
    for (int h = 0; h < m; ++h)
      if (rng.bernoulli(bipartite_density)) {
        bipartite.emplace_back(h, x);
        any = true;
      }
    if (!any) bipartite.emplace_back(rng.uniform_int(m), x);
  }
  return MeasurementModel(m, n, std::move(latent), std::move(bipartite));
}

}  // namespace latrec::oracles
