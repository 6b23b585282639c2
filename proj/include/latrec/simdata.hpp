#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "latrec/recovery.hpp"
#include "latrec/rng.hpp"
#include "latrec/stats.hpp"

namespace latrec {

enum class Regime { PureChild, SingleSource };

struct GeneratorConfig {
  int m = 2;
  int n = 5;
  Regime regime = Regime::PureChild;
  double latent_edge_density = 0.5;
  double bipartite_extra_density = 0.3;
  std::uint64_t seed = 0;
  // Rejection-sample until the oracle-level identifiability conditions hold:
  // Algorithm-1 skeleton and the regime's cover route both reproduce the
  // truth. Random graphs are otherwise free to be non-maximal, which makes
  // exact recovery impossible for any method.
  bool require_identifiable = true;
  int max_attempts = 20000;
};

struct GeneratedModel {
  MeasurementModel model;
  int attempts = 1;  // 1 means the first draw was accepted
};

namespace detail {

inline MeasurementModel draw_mm(const GeneratorConfig& cfg, Rng& rng) {
  // Latent DAG over a random order; both regimes attach one dedicated pure
  // child per latent, extra observed nodes pick parents by density.
  const std::vector<int> order = rng.permutation(cfg.m);
  std::vector<Edge> latent;
  std::vector<bool> has_parent(static_cast<std::size_t>(cfg.m), false);
  for (int i = 0; i < cfg.m; ++i)
    for (int j = i + 1; j < cfg.m; ++j)
      if (rng.bernoulli(cfg.latent_edge_density)) {
        latent.emplace_back(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
        has_parent[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] = true;
      }
  if (cfg.regime == Regime::SingleSource) {
    // Exactly one parentless latent: the first in the order.
    for (int j = 1; j < cfg.m; ++j) {
      const int node = order[static_cast<std::size_t>(j)];
      if (!has_parent[static_cast<std::size_t>(node)]) {
        const int parent = order[static_cast<std::size_t>(rng.uniform_int(j))];
        latent.emplace_back(parent, node);
        has_parent[static_cast<std::size_t>(node)] = true;
      }
    }
  }

  std::vector<Edge> bipartite;
  for (int h = 0; h < cfg.m; ++h) bipartite.emplace_back(h, h);  // dedicated pure child
  for (int x = cfg.m; x < cfg.n; ++x) {
    bool any = false;
    for (int h = 0; h < cfg.m; ++h)
      if (rng.bernoulli(cfg.bipartite_extra_density)) {
        bipartite.emplace_back(h, x);
        any = true;
      }
    if (!any) bipartite.emplace_back(rng.uniform_int(cfg.m), x);
  }
  return MeasurementModel(cfg.m, cfg.n, std::move(latent), std::move(bipartite));
}

inline bool identifiable_with_oracle(const MeasurementModel& g, Route route) {
  const CliqueFamily fam = clique_family(oracle_udgs(g));
  std::vector<NodeSet> covers;
  try {
    covers = route == Route::NoImaginary ? recover_bipartite_no_imaginary(fam)
                                         : recover_bipartite_pure_child(fam);
  } catch (const GuardError&) {
    return false;
  }
  std::vector<NodeSet> truth = g.covers();
  std::sort(covers.begin(), covers.end());
  std::sort(truth.begin(), truth.end());
  if (covers != truth) return false;

  std::vector<Edge> skeleton =
      algorithm1_skeleton(latent_marginal_family(fam, g.covers()));
  std::vector<Edge> true_skeleton;
  for (auto [a, b] : g.latent_edges()) true_skeleton.emplace_back(std::min(a, b), std::max(a, b));
  std::sort(true_skeleton.begin(), true_skeleton.end());
  return skeleton == true_skeleton;
}

}  // namespace detail

inline Route regime_route(Regime r) {
  return r == Regime::SingleSource ? Route::NoImaginary : Route::PureChild;
}

inline GeneratedModel gen_random_mm(const GeneratorConfig& cfg) {
  if (cfg.m <= 0 || cfg.n < cfg.m)
    throw InputError("gen_random_mm: need n >= m >= 1 (one dedicated pure child per latent)");
  if (cfg.latent_edge_density < 0 || cfg.latent_edge_density > 1 ||
      cfg.bipartite_extra_density < 0 || cfg.bipartite_extra_density > 1)
    throw InputError("gen_random_mm: densities must lie in [0,1]");
  for (int attempt = 1; attempt <= cfg.max_attempts; ++attempt) {
    Rng rng(cfg.seed, {0x67656E6D6DULL, static_cast<std::uint64_t>(attempt)});
    MeasurementModel g = detail::draw_mm(cfg, rng);
    if (!cfg.require_identifiable ||
        detail::identifiable_with_oracle(g, regime_route(cfg.regime)))
      return {std::move(g), attempt};
  }
  throw GuardError("gen_random_mm: no identifiable graph found within attempt budget");
}

// Oracle-level check of the assumption that latent separations leave an
// observable trace: whenever two latents are separated under a target, some
// pair of their children is separated too. Reported, never enforced.
inline bool check_latent_trace_assumption(const MeasurementModel& g) {
  const Dag full = g.full_dag();
  for (const Target& t : complete_targets(g)) {
    const Dag gi = intervene(full, t);
    for (int i = 0; i < g.num_latents(); ++i)
      for (int j = i + 1; j < g.num_latents(); ++j) {
        if (!d_separated(gi, bit(i), bit(j), 0)) continue;
        bool witness = false;
        for_each_node(g.cover(i), [&](int xi) {
          for_each_node(g.cover(j), [&](int xj) {
            if (!witness &&
                d_separated(gi, bit(g.observed_node(xi)), bit(g.observed_node(xj)), 0))
              witness = true;
          });
        });
        if (!witness) return false;
      }
  }
  return true;
}

// Quadratic SEM: V <- sum_{p in pa(V)} c_pV * p^2 + noise. The intervened
// node is drawn from a shifted normal instead, with its incoming mechanisms
// cut (hard intervention).
struct SemSpec {
  MeasurementModel graph;
  std::map<Edge, double> coeffs;  // keyed by full-dag edge
  double noise_scale = 1.0;
  double intervention_mean = 2.0;
  double intervention_scale = 1.0;
};

// Coefficient magnitudes uniform in [0.5, 1.5] with random sign.
inline SemSpec make_sem_spec(const MeasurementModel& g, std::uint64_t seed) {
  SemSpec spec{g, {}, 1.0, 2.0, 1.0};
  Rng rng(seed, {0x73656D63ULL});
  for (const auto& e : g.full_dag().edges()) {
    const double mag = 0.5 + rng.uniform01();
    spec.coeffs[e] = rng.bernoulli(0.5) ? mag : -mag;
  }
  return spec;
}

// Ancestral sampling in topological order. Returns observed columns only
// unless include_latents is set (test hook). Noise is keyed by (seed, node),
// with the row index as counter, so results are order-independent.
inline SampleMatrix sem_sample(const SemSpec& spec, const Target& target, int count,
                               std::uint64_t seed, bool include_latents = false) {
  if (count < 1) throw InputError("sem_sample: count must be positive");
  const MeasurementModel& g = spec.graph;
  if (target.has_value() && (*target < 0 || *target >= g.num_latents()))
    throw InputError("sem_sample: target out of range");
  const Dag gi = intervene(g.full_dag(), target);
  const int total = gi.node_count();
  std::vector<std::vector<double>> values(static_cast<std::size_t>(total));
  for (int v : gi.topological_order()) {
    auto& col = values[static_cast<std::size_t>(v)];
    col.assign(static_cast<std::size_t>(count), 0.0);
    Rng rng(seed, {0x73656D73ULL, static_cast<std::uint64_t>(v)});
    if (target.has_value() && v == *target) {
      for (int r = 0; r < count; ++r)
        col[static_cast<std::size_t>(r)] =
            spec.intervention_mean + spec.intervention_scale * rng.normal();
      continue;
    }
    for (int r = 0; r < count; ++r)
      col[static_cast<std::size_t>(r)] = spec.noise_scale * rng.normal();
    for_each_node(gi.parents(v), [&](int p) {
      const double c = spec.coeffs.at({p, v});
      const auto& pcol = values[static_cast<std::size_t>(p)];
      for (int r = 0; r < count; ++r)
        col[static_cast<std::size_t>(r)] +=
            c * pcol[static_cast<std::size_t>(r)] * pcol[static_cast<std::size_t>(r)];
    });
  }
  SampleMatrix out;
  const int first = include_latents ? 0 : g.num_latents();
  for (int v = first; v < total; ++v) out.cols.push_back(std::move(values[static_cast<std::size_t>(v)]));
  return out;
}

// --- Structural Hamming distance ---

namespace detail {

enum class PairState : unsigned char { None, Undirected, Forward, Backward };

inline std::vector<PairState> pair_states(const LatentPdag& g) {
  const int m = g.num_latents;
  std::vector<PairState> st(static_cast<std::size_t>(m * m), PairState::None);
  const auto at = [m](int a, int b) { return static_cast<std::size_t>(a * m + b); };
  for (auto [a, b] : g.directed) st[at(std::min(a, b), std::max(a, b))] = a < b ? PairState::Forward : PairState::Backward;
  for (auto [a, b] : g.undirected) st[at(std::min(a, b), std::max(a, b))] = PairState::Undirected;
  return st;
}

}  // namespace detail

// Mismatched unordered pairs: insertions, deletions, reversals and
// directed-vs-undirected flips all cost one.
inline int shd(const LatentPdag& a, const LatentPdag& b) {
  if (a.num_latents != b.num_latents) throw InputError("shd: latent counts differ");
  const auto sa = detail::pair_states(a);
  const auto sb = detail::pair_states(b);
  int dist = 0;
  const int m = a.num_latents;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (sa[static_cast<std::size_t>(i * m + j)] != sb[static_cast<std::size_t>(i * m + j)]) ++dist;
  return dist;
}

namespace detail {

inline LatentPdag relabeled(const LatentPdag& g, const std::vector<int>& relabel, int m_out) {
  LatentPdag out;
  out.num_latents = m_out;
  for (auto [a, b] : g.directed)
    out.directed.emplace_back(relabel[static_cast<std::size_t>(a)], relabel[static_cast<std::size_t>(b)]);
  for (auto [a, b] : g.undirected) {
    int x = relabel[static_cast<std::size_t>(a)], y = relabel[static_cast<std::size_t>(b)];
    if (x > y) std::swap(x, y);
    out.undirected.emplace_back(x, y);
  }
  std::sort(out.directed.begin(), out.directed.end());
  std::sort(out.undirected.begin(), out.undirected.end());
  return out;
}

}  // namespace detail

// Whole-graph SHD between two recovered models: latent labels are aligned by
// a minimum-cost matching over cover overlap, unmatched latents pair with
// empty dummies, then bipartite and latent mismatches are counted.
inline int shd(const RecoveredModel& a, const RecoveredModel& b) {
  const int m = std::max(a.m, b.m);
  if (m > 9) throw GuardError("shd: latent matching guard exceeded (m > 9)");
  std::vector<NodeSet> ca(static_cast<std::size_t>(m), 0), cb(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < a.m; ++i) ca[static_cast<std::size_t>(i)] = set_from_vector(a.covers[static_cast<std::size_t>(i)]);
  for (int i = 0; i < b.m; ++i) cb[static_cast<std::size_t>(i)] = set_from_vector(b.covers[static_cast<std::size_t>(i)]);

  // Min symmetric-difference assignment of b's latents onto a's.
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best_perm = perm;
  long long best_cost = -1;
  do {
    long long cost = 0;
    for (int i = 0; i < m; ++i)
      cost += set_size(ca[static_cast<std::size_t>(i)] ^ cb[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]);
    if (best_cost < 0 || cost < best_cost) {
      best_cost = cost;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  // relabel[j] = position of b-latent j on a's side
  std::vector<int> relabel(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) relabel[static_cast<std::size_t>(best_perm[static_cast<std::size_t>(i)])] = i;

  LatentPdag pa = a.latent_pdag;
  pa.num_latents = m;
  const LatentPdag pb = detail::relabeled(b.latent_pdag, relabel, m);
  return static_cast<int>(best_cost) + shd(pa, pb);
}

inline int shd(const MeasurementModel& a, const MeasurementModel& b) {
  return shd(recovered_from_truth(a, false), recovered_from_truth(b, false));
}

struct ExperimentRun {
  std::vector<int> per_run_shd;
  double mean = 0.0;
  double standard_error = 0.0;
};

inline ExperimentRun summarize_runs(std::vector<int> per_run_shd) {
  ExperimentRun out;
  out.per_run_shd = std::move(per_run_shd);
  const double runs = static_cast<double>(out.per_run_shd.size());
  if (runs == 0) return out;
  double sum = 0;
  for (int v : out.per_run_shd) sum += v;
  out.mean = sum / runs;
  if (out.per_run_shd.size() > 1) {
    double ss = 0;
    for (int v : out.per_run_shd) ss += (v - out.mean) * (v - out.mean);
    out.standard_error = std::sqrt(ss / (runs - 1.0)) / std::sqrt(runs);
  }
  return out;
}

}  // namespace latrec
