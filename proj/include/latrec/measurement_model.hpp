#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "latrec/dag.hpp"

namespace latrec {

// Single-node hard intervention target; empty means observational.
using Target = std::optional<int>;

// G = G_B (latent -> observed, bipartite) union G_H (latent DAG). Latents and
// observed each use their own 0-based index range; in the combined DAG the
// latents come first and observed node i maps to m + i.
class MeasurementModel {
 public:
  MeasurementModel(int num_latents, int num_observed, std::vector<Edge> latent_edges,
                   std::vector<Edge> bipartite_edges)
      : m_(num_latents),
        n_(num_observed),
        latent_edges_(std::move(latent_edges)),
        bipartite_edges_(std::move(bipartite_edges)) {
    if (m_ <= 0 || n_ <= 0) throw InputError("MeasurementModel: m and n must be positive");
    if (m_ + n_ > kMaxNodes) throw InputError("MeasurementModel: m + n exceeds 64 nodes");
    covers_.assign(static_cast<std::size_t>(m_), 0);
    for (const auto& [h, x] : bipartite_edges_) {
      if (h < 0 || h >= m_ || x < 0 || x >= n_)
        throw InputError("MeasurementModel: bipartite edge out of range");
      covers_[static_cast<std::size_t>(h)] |= bit(x);
    }
    NodeSet with_parent = 0;
    for (NodeSet c : covers_) with_parent |= c;
    if (with_parent != full_set(n_))
      throw InputError("MeasurementModel: every observed node needs a latent parent");
    std::sort(latent_edges_.begin(), latent_edges_.end());
    std::sort(bipartite_edges_.begin(), bipartite_edges_.end());
    full_dag_.emplace(build_full_dag());  // validates acyclicity and latent ranges
  }

  int num_latents() const { return m_; }
  int num_observed() const { return n_; }
  const std::vector<Edge>& latent_edges() const { return latent_edges_; }
  const std::vector<Edge>& bipartite_edges() const { return bipartite_edges_; }

  // Children of latent h in G_B, as a set over observed indices.
  NodeSet cover(int h) const { return covers_[static_cast<std::size_t>(h)]; }
  std::vector<NodeSet> covers() const { return covers_; }

  int observed_node(int x) const { return m_ + x; }
  NodeSet observed_nodes() const { return full_set(m_ + n_) & ~full_set(m_); }
  NodeSet latent_nodes() const { return full_set(m_); }

  const Dag& full_dag() const { return *full_dag_; }
  Dag latent_dag() const { return Dag(m_, latent_edges_); }

  bool operator==(const MeasurementModel& o) const {
    return m_ == o.m_ && n_ == o.n_ && latent_edges_ == o.latent_edges_ &&
           bipartite_edges_ == o.bipartite_edges_;
  }

 private:
  Dag build_full_dag() const {
    std::vector<Edge> edges = latent_edges_;
    for (const auto& [h, x] : bipartite_edges_) edges.emplace_back(h, m_ + x);
    return Dag(m_ + n_, std::move(edges));
  }

  int m_, n_;
  std::vector<Edge> latent_edges_;
  std::vector<Edge> bipartite_edges_;
  std::vector<NodeSet> covers_;
  std::optional<Dag> full_dag_;
};

// The complete target family {empty, {H_0}, ..., {H_{m-1}}}.
inline std::vector<Target> complete_targets(const MeasurementModel& g) {
  std::vector<Target> out;
  out.reserve(static_cast<std::size_t>(g.num_latents()) + 1);
  out.push_back(std::nullopt);
  for (int h = 0; h < g.num_latents(); ++h) out.push_back(h);
  return out;
}

}  // namespace latrec
