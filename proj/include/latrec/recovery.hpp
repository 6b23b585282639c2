#pragma once

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "latrec/subsets.hpp"

namespace latrec {

enum class Route { NoImaginary, PureChild };

// Covers are the non-replaceable maximal valid subsets. Correct whenever the
// family has no non-replaceable imaginary subsets; garbage in is tolerated.
inline std::vector<NodeSet> recover_bipartite_no_imaginary(const CliqueFamily& fam) {
  const std::vector<NodeSet> maximals = maximal_valid_subsets(fam);
  std::vector<NodeSet> out;
  for (NodeSet s : maximals)
    if (!is_replaceable(s, maximals)) out.push_back(s);
  return out;
}

// Covers are the minimum-cardinality complete collection of maximal valid
// subsets, found by exhaustive search in increasing cardinality.
inline std::vector<NodeSet> recover_bipartite_pure_child(const CliqueFamily& fam,
                                                         int guard = kFracturedGuardDefault) {
  const std::vector<NodeSet> maximals = maximal_valid_subsets(fam);
  const int k = static_cast<int>(maximals.size());
  if (k > guard)
    throw GuardError("recover_bipartite_pure_child: undecided, maximal-valid count exceeds guard");
  for (int size = 1; size <= k; ++size) {
    // Iterate k-choose-size index combinations in lexicographic order.
    std::vector<int> idx(static_cast<std::size_t>(size));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<NodeSet> members;
      members.reserve(idx.size());
      for (int i : idx) members.push_back(maximals[static_cast<std::size_t>(i)]);
      if (is_complete_collection(members, fam)) return members;
      int pos = size - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == k - size + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int p = pos + 1; p < size; ++p)
        idx[static_cast<std::size_t>(p)] = idx[static_cast<std::size_t>(p - 1)] + 1;
    }
  }
  throw GuardError("recover_bipartite_pure_child: no complete collection exists");
}

// Per distinct distribution: the set of marginally separated latent pairs,
// derived from cover unions and cliques. Entries carry set semantics.
struct MarginalLatentFamily {
  int num_latents = 0;
  std::vector<std::vector<Edge>> entries;  // each sorted; pairs stored (i < j)
};

inline MarginalLatentFamily latent_marginal_family(const CliqueFamily& fam,
                                                   const std::vector<NodeSet>& covers) {
  MarginalLatentFamily out;
  out.num_latents = static_cast<int>(covers.size());
  for (const auto& cliques : fam.cliques) {
    std::vector<Edge> pairs;
    for (int i = 0; i < out.num_latents; ++i)
      for (int j = i + 1; j < out.num_latents; ++j) {
        const NodeSet joint = covers[static_cast<std::size_t>(i)] | covers[static_cast<std::size_t>(j)];
        bool together = false;
        for (NodeSet c : cliques)
          if (subset_of(joint, c)) {
            together = true;
            break;
          }
        if (!together) pairs.emplace_back(i, j);
      }
    if (std::find(out.entries.begin(), out.entries.end(), pairs) == out.entries.end())
      out.entries.push_back(std::move(pairs));
  }
  return out;
}

namespace detail {

// Step 1 shared by both algorithms: drop pairs appearing in two or more
// distinct entries, then drop empty entries.
inline std::vector<std::vector<Edge>> prune_repeated_pairs(
    const std::vector<std::vector<Edge>>& entries) {
  std::vector<Edge> all;
  for (const auto& e : entries) all.insert(all.end(), e.begin(), e.end());
  std::sort(all.begin(), all.end());
  std::vector<Edge> repeated;
  for (std::size_t i = 1; i < all.size(); ++i)
    if (all[i] == all[i - 1] && (repeated.empty() || repeated.back() != all[i]))
      repeated.push_back(all[i]);
  std::vector<std::vector<Edge>> out;
  for (const auto& e : entries) {
    std::vector<Edge> kept;
    for (const Edge& p : e)
      if (!std::binary_search(repeated.begin(), repeated.end(), p)) kept.push_back(p);
    if (!kept.empty()) out.push_back(std::move(kept));
  }
  return out;
}

}  // namespace detail

// Skeleton of the latent DAG: with one distinct entry there are no edges;
// otherwise the pairs surviving the repeat prune are exactly the edges.
inline std::vector<Edge> algorithm1_skeleton(const MarginalLatentFamily& mfam) {
  if (mfam.entries.size() <= 1) return {};
  std::vector<Edge> skeleton;
  for (const auto& entry : detail::prune_repeated_pairs(mfam.entries))
    skeleton.insert(skeleton.end(), entry.begin(), entry.end());
  std::sort(skeleton.begin(), skeleton.end());
  return skeleton;
}

// Partially directed latent graph plus the intervention targets inferred
// along the way.
struct LatentPdag {
  int num_latents = 0;
  std::vector<Edge> directed;
  std::vector<Edge> undirected;  // pairs stored (i < j)
  std::vector<int> inferred_targets;

  bool operator==(const LatentPdag& o) const {
    return num_latents == o.num_latents && directed == o.directed && undirected == o.undirected;
  }
};

// Skeleton plus orientation. Entries with several separated pairs share a
// common latent (the target); their edges point into it. Singleton entries
// whose pair touches a known target point into the other endpoint, repeated
// to a fixpoint; whatever remains stays undirected.
inline LatentPdag algorithm2_orient(const MarginalLatentFamily& mfam) {
  LatentPdag out;
  out.num_latents = mfam.num_latents;
  if (mfam.entries.size() <= 1) return out;
  std::vector<std::vector<Edge>> entries = detail::prune_repeated_pairs(mfam.entries);

  NodeSet targets = 0;
  std::vector<std::vector<Edge>> singles;
  for (auto& entry : entries) {
    if (entry.size() == 1) {
      singles.push_back(std::move(entry));
      continue;
    }
    NodeSet common = bit(entry.front().first) | bit(entry.front().second);
    for (const Edge& p : entry) common &= bit(p.first) | bit(p.second);
    if (common == 0)
      throw InputError("algorithm2_orient: multi-pair entry has no common latent");
    const int star = std::countr_zero(common);
    targets |= bit(star);
    for (const Edge& p : entry) {
      const int other = p.first == star ? p.second : p.first;
      out.directed.emplace_back(other, star);
    }
  }

  bool progressed = true;
  while (progressed) {
    progressed = false;
    for (std::size_t i = 0; i < singles.size();) {
      const auto [a, b] = singles[i].front();
      int from = -1, into = -1;
      if (contains(targets, a)) {
        from = a;
        into = b;
      } else if (contains(targets, b)) {
        from = b;
        into = a;
      }
      if (from >= 0) {
        out.directed.emplace_back(from, into);
        targets |= bit(into);
        singles.erase(singles.begin() + static_cast<std::ptrdiff_t>(i));
        progressed = true;
      } else {
        ++i;
      }
    }
  }

  for (const auto& entry : singles) out.undirected.push_back(entry.front());
  std::sort(out.directed.begin(), out.directed.end());
  std::sort(out.undirected.begin(), out.undirected.end());
  out.inferred_targets = set_to_vector(targets);
  return out;
}

struct RecoveredModel {
  int m = 0;
  std::vector<std::vector<int>> covers;  // one per recovered latent, canonical order
  LatentPdag latent_pdag;

  bool operator==(const RecoveredModel& o) const {
    return m == o.m && covers == o.covers && latent_pdag == o.latent_pdag;
  }
};

namespace detail {

// Relabels latents so covers come out in member-lexicographic order.
inline RecoveredModel canonicalize(const std::vector<NodeSet>& covers, LatentPdag pdag) {
  const int m = static_cast<int>(covers.size());
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return set_less(covers[static_cast<std::size_t>(a)], covers[static_cast<std::size_t>(b)]); });
  std::vector<int> relabel(static_cast<std::size_t>(m));
  for (int pos = 0; pos < m; ++pos) relabel[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] = pos;

  RecoveredModel out;
  out.m = m;
  out.covers.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    out.covers[static_cast<std::size_t>(relabel[static_cast<std::size_t>(i)])] =
        set_to_vector(covers[static_cast<std::size_t>(i)]);
  out.latent_pdag.num_latents = m;
  for (auto [a, b] : pdag.directed)
    out.latent_pdag.directed.emplace_back(relabel[static_cast<std::size_t>(a)],
                                          relabel[static_cast<std::size_t>(b)]);
  for (auto [a, b] : pdag.undirected) {
    int x = relabel[static_cast<std::size_t>(a)], y = relabel[static_cast<std::size_t>(b)];
    if (x > y) std::swap(x, y);
    out.latent_pdag.undirected.emplace_back(x, y);
  }
  for (int t : pdag.inferred_targets)
    out.latent_pdag.inferred_targets.push_back(relabel[static_cast<std::size_t>(t)]);
  std::sort(out.latent_pdag.directed.begin(), out.latent_pdag.directed.end());
  std::sort(out.latent_pdag.undirected.begin(), out.latent_pdag.undirected.end());
  std::sort(out.latent_pdag.inferred_targets.begin(), out.latent_pdag.inferred_targets.end());
  return out;
}

}  // namespace detail

// Covers plus latent PDAG in canonical labeling.
inline RecoveredModel assemble_recovered(const std::vector<NodeSet>& covers, LatentPdag pdag) {
  return detail::canonicalize(covers, std::move(pdag));
}

// End-to-end identification from unlabeled distribution UDGs.
inline RecoveredModel full_pipeline(const std::vector<Udg>& udgs, Route route,
                                    int guard = kFracturedGuardDefault) {
  const CliqueFamily fam = clique_family(udgs);
  const std::vector<NodeSet> covers = route == Route::NoImaginary
                                          ? recover_bipartite_no_imaginary(fam)
                                          : recover_bipartite_pure_child(fam, guard);
  const MarginalLatentFamily mfam = latent_marginal_family(fam, covers);
  return detail::canonicalize(covers, algorithm2_orient(mfam));
}

// Latent edges that end up undirected: edges a->b where b has in-degree one
// and a sits on a source chain of in-degree <= 1 nodes. The head of such a
// chain is an isolated edge; the rest are forced along with it.
inline std::vector<Edge> chain_undirected_edges(int num_latents,
                                                const std::vector<Edge>& latent_edges) {
  std::vector<int> indeg(static_cast<std::size_t>(num_latents), 0);
  std::vector<int> only_parent(static_cast<std::size_t>(num_latents), -1);
  for (const auto& [a, b] : latent_edges) {
    ++indeg[static_cast<std::size_t>(b)];
    only_parent[static_cast<std::size_t>(b)] = a;
  }
  const auto pristine = [&](int v) {
    while (true) {
      if (indeg[static_cast<std::size_t>(v)] == 0) return true;
      if (indeg[static_cast<std::size_t>(v)] > 1) return false;
      v = only_parent[static_cast<std::size_t>(v)];
    }
  };
  std::vector<Edge> out;
  for (const auto& [a, b] : latent_edges)
    if (indeg[static_cast<std::size_t>(b)] == 1 && pristine(a)) out.emplace_back(a, b);
  std::sort(out.begin(), out.end());
  return out;
}

// Ground truth expressed in recovered form. With canonicalize_isolated set,
// edges that no pipeline can orient are turned undirected, which is the
// reference the oracle pipeline must reproduce exactly.
inline RecoveredModel recovered_from_truth(const MeasurementModel& g, bool canonicalize_isolated) {
  LatentPdag pdag;
  pdag.num_latents = g.num_latents();
  std::vector<Edge> chain =
      canonicalize_isolated ? chain_undirected_edges(g.num_latents(), g.latent_edges())
                            : std::vector<Edge>{};
  for (const auto& e : g.latent_edges()) {
    if (std::binary_search(chain.begin(), chain.end(), e)) {
      auto [a, b] = e;
      if (a > b) std::swap(a, b);
      pdag.undirected.emplace_back(a, b);
    } else {
      pdag.directed.push_back(e);
    }
  }
  return detail::canonicalize(g.covers(), std::move(pdag));
}

}  // namespace latrec
