#pragma once

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "latrec/udg.hpp"

namespace latrec {

namespace detail {

// V-structures a -> c <- b with a, b non-adjacent; stored (a < b, c).
inline std::vector<std::tuple<int, int, int>> v_structures(const Dag& g) {
  std::vector<std::tuple<int, int, int>> out;
  for (int c = 0; c < g.node_count(); ++c) {
    const std::vector<int> ps = set_to_vector(g.parents(c));
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j)
        if (!g.adjacent(ps[i], ps[j])) out.emplace_back(ps[i], ps[j], c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Edge> skeleton_edges(const Dag& g) {
  std::vector<Edge> out;
  for (auto [a, b] : g.edges()) out.emplace_back(std::min(a, b), std::max(a, b));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Verma-Pearl criterion: same skeleton and same v-structures.
inline bool markov_equivalent(const Dag& g1, const Dag& g2) {
  if (g1.node_count() != g2.node_count())
    throw InputError("markov_equivalent: node counts differ");
  return detail::skeleton_edges(g1) == detail::skeleton_edges(g2) &&
         detail::v_structures(g1) == detail::v_structures(g2);
}

inline std::vector<Edge> isolated_edges(const Dag& g) {
  std::vector<Edge> out;
  for (auto [a, b] : g.edges())
    if (edge_class(g, a, b) == EdgeClass::Isolated) out.emplace_back(a, b);
  return out;
}

inline Dag reverse_edge(const Dag& g, const Edge& e) {
  std::vector<Edge> edges;
  edges.reserve(g.edges().size());
  for (const auto& cur : g.edges()) edges.push_back(cur == e ? Edge{e.second, e.first} : cur);
  return Dag(g.node_count(), std::move(edges));
}

// Everything reachable from g by sequences of isolated-edge reversals.
inline std::vector<Dag> iec_class(const Dag& g) {
  std::set<std::vector<Edge>> seen{g.edges()};
  std::vector<Dag> out{g};
  std::deque<Dag> frontier{g};
  while (!frontier.empty()) {
    const Dag cur = frontier.front();
    frontier.pop_front();
    for (const Edge& e : isolated_edges(cur)) {
      Dag next = reverse_edge(cur, e);
      if (seen.insert(next.edges()).second) {
        out.push_back(next);
        frontier.push_back(next);
      }
    }
  }
  return out;
}

inline bool iec_equivalent(const Dag& g1, const Dag& g2) {
  if (g1.node_count() != g2.node_count()) throw InputError("iec_equivalent: node counts differ");
  for (const Dag& g : iec_class(g1))
    if (g.edges() == g2.edges()) return true;
  return false;
}

// Deduplicated set of per-target d-separation families over the universe;
// the unlabeled object two graphs are compared on.
inline std::vector<DsepFamily> interventional_family_set(const Dag& g,
                                                         const std::vector<Target>& targets,
                                                         NodeSet universe, bool marginal_only) {
  std::vector<DsepFamily> out;
  for (const Target& t : targets) {
    DsepFamily fam = dsep_family(intervene(g, t), universe, marginal_only);
    if (std::find(out.begin(), out.end(), fam) == out.end()) out.push_back(std::move(fam));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Measurement-model form: the set of interventional UDGs, equivalent to the
// set of marginal observed d-separation families.
inline std::vector<Udg> interventional_udg_set(const MeasurementModel& g,
                                               const std::vector<Target>& targets) {
  std::vector<Udg> out;
  for (const Target& t : targets) {
    Udg u = udg_from_graph(g, t);
    if (std::find(out.begin(), out.end(), u) == out.end()) out.push_back(std::move(u));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Reverses an isolated edge and checks that the remapped targets reproduce
// every per-target full d-separation family. The remap swaps the edge's
// endpoints and fixes everything else.
inline bool theorem_remap_check(const Dag& g1, const Edge& iso_edge,
                                const std::vector<Target>& targets) {
  if (!g1.has_edge(iso_edge.first, iso_edge.second))
    throw InputError("theorem_remap_check: edge absent");
  if (edge_class(g1, iso_edge.first, iso_edge.second) != EdgeClass::Isolated)
    throw InputError("theorem_remap_check: edge is not isolated");
  const Dag g2 = reverse_edge(g1, iso_edge);
  const NodeSet universe = g1.all_nodes();
  for (const Target& t : targets) {
    Target mapped = t;
    if (t.has_value()) {
      if (*t == iso_edge.first) mapped = iso_edge.second;
      else if (*t == iso_edge.second) mapped = iso_edge.first;
    }
    if (!(dsep_family(intervene(g1, t), universe, false) ==
          dsep_family(intervene(g2, mapped), universe, false)))
      return false;
  }
  return true;
}

// Single-node targets I1 on g1 whose full family matches no single-node (or
// empty) target family of g2. Empty result means indistinguishable this way.
inline std::vector<int> distinguishing_targets(const Dag& g1, const Dag& g2) {
  if (g1.node_count() != g2.node_count())
    throw InputError("distinguishing_targets: node counts differ");
  const NodeSet universe = g1.all_nodes();
  std::vector<DsepFamily> g2_families;
  g2_families.push_back(dsep_family(g2, universe, false));
  for (int t = 0; t < g2.node_count(); ++t)
    g2_families.push_back(dsep_family(intervene(g2, t), universe, false));
  std::vector<int> out;
  for (int t = 0; t < g1.node_count(); ++t) {
    const DsepFamily fam = dsep_family(intervene(g1, t), universe, false);
    if (std::find(g2_families.begin(), g2_families.end(), fam) == g2_families.end())
      out.push_back(t);
  }
  return out;
}

struct MaximalityReport {
  bool maximal = true;
  enum class EdgeKind { None, Bipartite, Latent } kind = EdgeKind::None;
  Edge edge{-1, -1};  // first addable edge preserving the family set
};

// Single-edge maximality test: the model is flagged non-maximal when some
// absent bipartite or latent edge can be added without changing the set of
// interventional observed UDGs. Bipartite additions are tried first.
inline MaximalityReport maximality_check(const MeasurementModel& g,
                                         const std::vector<Target>& targets) {
  const std::vector<Udg> base = interventional_udg_set(g, targets);
  MaximalityReport rep;

  const auto same_family_set = [&](const MeasurementModel& candidate) {
    return interventional_udg_set(candidate, targets) == base;
  };

  for (int h = 0; h < g.num_latents(); ++h)
    for (int x = 0; x < g.num_observed(); ++x) {
      if (contains(g.cover(h), x)) continue;
      std::vector<Edge> bip = g.bipartite_edges();
      bip.emplace_back(h, x);
      MeasurementModel candidate(g.num_latents(), g.num_observed(), g.latent_edges(), std::move(bip));
      if (same_family_set(candidate)) {
        rep.maximal = false;
        rep.kind = MaximalityReport::EdgeKind::Bipartite;
        rep.edge = {h, x};
        return rep;
      }
    }

  const Dag lat_dag = g.latent_dag();
  for (int a = 0; a < g.num_latents(); ++a)
    for (int b = 0; b < g.num_latents(); ++b) {
      if (a == b || lat_dag.adjacent(a, b)) continue;
      std::vector<Edge> lat = g.latent_edges();
      lat.emplace_back(a, b);
      try {
        MeasurementModel candidate(g.num_latents(), g.num_observed(), std::move(lat),
                                   g.bipartite_edges());
        if (same_family_set(candidate)) {
          rep.maximal = false;
          rep.kind = MaximalityReport::EdgeKind::Latent;
          rep.edge = {a, b};
          return rep;
        }
      } catch (const InputError&) {
        continue;  // addition would create a latent cycle
      }
    }
  return rep;
}

}  // namespace latrec
