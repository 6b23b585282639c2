#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "latrec/udg.hpp"

namespace latrec {

// A subset is valid when every distribution has a maximal clique containing it.
inline bool is_valid(NodeSet subset, const CliqueFamily& fam) {
  if (subset == 0) throw InputError("is_valid: subset must be nonempty");
  if (!subset_of(subset, full_set(fam.num_observed)))
    throw InputError("is_valid: subset out of range");
  for (const auto& cliques : fam.cliques) {
    bool inside = false;
    for (NodeSet c : cliques)
      if (subset_of(subset, c)) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  return true;
}

namespace detail {

// Intersection of all Omega cliques containing the subset. A valid subset is
// maximal exactly when it equals this hull: the hull itself is a valid
// superset fitting inside every Omega clique that contains the subset, and
// no strictly larger set can.
inline NodeSet omega_hull(NodeSet subset, const CliqueFamily& fam) {
  NodeSet hull = full_set(fam.num_observed);
  for (NodeSet c : fam.omega)
    if (subset_of(subset, c)) hull &= c;
  return hull;
}

}  // namespace detail

inline constexpr std::size_t kSubsetCandidateGuard = 200000;

// All maximal valid subsets. Candidates are intersections of clique families
// that include at least one clique per distribution, closed under pairwise
// intersection; every valid subset is contained in such an intersection, and
// every maximal one is such an intersection.
inline std::vector<NodeSet> maximal_valid_subsets(const CliqueFamily& fam) {
  std::vector<NodeSet> cands = fam.cliques.front();
  for (std::size_t d = 1; d < fam.cliques.size(); ++d) {
    std::vector<NodeSet> next;
    for (NodeSet s : cands)
      for (NodeSet c : fam.cliques[d]) {
        const NodeSet inter = s & c;
        if (inter != 0) next.push_back(inter);
      }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.size() > kSubsetCandidateGuard)
      throw GuardError("maximal_valid_subsets: candidate lattice too large");
    cands = std::move(next);
  }
  // Close under pairwise intersection.
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<NodeSet> found;
    for (std::size_t i = 0; i < cands.size(); ++i)
      for (std::size_t j = i + 1; j < cands.size(); ++j) {
        const NodeSet inter = cands[i] & cands[j];
        if (inter != 0 && !std::binary_search(cands.begin(), cands.end(), inter))
          found.push_back(inter);
      }
    if (!found.empty()) {
      grew = true;
      cands.insert(cands.end(), found.begin(), found.end());
      std::sort(cands.begin(), cands.end());
      cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
      if (cands.size() > kSubsetCandidateGuard)
        throw GuardError("maximal_valid_subsets: candidate lattice too large");
    }
  }
  std::vector<NodeSet> out;
  for (NodeSet s : cands)
    if (detail::omega_hull(s, fam) == s) out.push_back(s);
  std::sort(out.begin(), out.end(), set_less);
  return out;
}

inline bool is_replaceable(NodeSet subset, const std::vector<NodeSet>& maximals) {
  if (std::find(maximals.begin(), maximals.end(), subset) == maximals.end())
    throw InputError("is_replaceable: subset is not a maximal valid subset");
  for (NodeSet m : maximals)
    if (m != subset && subset_of(subset, m)) return true;
  return false;
}

// A clique is shattered when the union of members lying inside it is exactly
// the clique.
inline bool is_shattered(NodeSet clique, const std::vector<NodeSet>& members) {
  NodeSet covered = 0;
  for (NodeSet s : members)
    if (subset_of(s, clique)) covered |= s;
  return covered == clique;
}

inline std::vector<NodeSet> shattered_cliques(const std::vector<NodeSet>& members,
                                              const std::vector<NodeSet>& cliques) {
  std::vector<NodeSet> out;
  for (NodeSet c : cliques)
    if (is_shattered(c, members)) out.push_back(c);
  return out;
}

// Complete collection: per distribution, the shattered maximal cliques cover
// every UDG edge. Members must be valid subsets.
inline bool is_complete_collection(const std::vector<NodeSet>& members, const CliqueFamily& fam) {
  for (NodeSet s : members)
    if (!is_valid(s, fam)) throw InputError("is_complete_collection: member is not a valid subset");
  for (std::size_t d = 0; d < fam.udgs.size(); ++d) {
    const std::vector<NodeSet> shattered = shattered_cliques(members, fam.cliques[d]);
    for (const auto& [a, b] : fam.udgs[d].edges()) {
      bool covered = false;
      for (NodeSet c : shattered)
        if (contains(c, a) && contains(c, b)) {
          covered = true;
          break;
        }
      if (!covered) return false;
    }
  }
  return true;
}

inline constexpr int kFracturedGuardDefault = 20;

struct FracturedReport {
  bool fractured = false;
  std::vector<NodeSet> witness;  // verified complete collection avoiding the subset
};

// Shattering is monotone in the collection, so the subset is fractured iff the
// full collection of maximal valid subsets not contained in it is complete.
// The witness is greedily pruned to a minimal certificate.
inline FracturedReport fractured_report(NodeSet subset, const CliqueFamily& fam,
                                        const std::vector<NodeSet>& maximals,
                                        int guard = kFracturedGuardDefault) {
  if (std::find(maximals.begin(), maximals.end(), subset) == maximals.end())
    throw InputError("fractured_report: subset is not a maximal valid subset");
  if (static_cast<int>(maximals.size()) > guard)
    throw GuardError("fractured_report: undecided, maximal-valid count exceeds guard");
  std::vector<NodeSet> allowed;
  for (NodeSet m : maximals)
    if (!subset_of(m, subset)) allowed.push_back(m);
  FracturedReport rep;
  if (!is_complete_collection(allowed, fam)) return rep;
  rep.fractured = true;
  for (std::size_t i = 0; i < allowed.size();) {
    std::vector<NodeSet> pruned = allowed;
    pruned.erase(pruned.begin() + static_cast<std::ptrdiff_t>(i));
    if (!pruned.empty() && is_complete_collection(pruned, fam))
      allowed = std::move(pruned);
    else
      ++i;
  }
  rep.witness = std::move(allowed);
  return rep;
}

// Ground-truth-assisted check: no latent's child set contains the subset.
inline bool is_imaginary(NodeSet subset, const MeasurementModel& truth) {
  for (int h = 0; h < truth.num_latents(); ++h)
    if (subset_of(subset, truth.cover(h))) return false;
  return true;
}

inline std::optional<int> covering_latent(NodeSet subset, const MeasurementModel& truth) {
  for (int h = 0; h < truth.num_latents(); ++h)
    if (subset_of(subset, truth.cover(h))) return h;
  return std::nullopt;
}

struct SubsetReport {
  NodeSet subset = 0;
  bool valid = false;
  bool maximal_valid = false;
  bool replaceable = false;
  bool fractured = false;
  bool fractured_decided = true;
  std::optional<bool> imaginary;                // only with ground truth
  std::vector<NodeSet> replaceable_witnesses;   // maximal strict supersets
  std::vector<NodeSet> fractured_witness;       // complete collection avoiding the subset
  std::optional<int> covering_latent;           // only with ground truth
};

// One report per maximal valid subset of the family.
inline std::vector<SubsetReport> subset_reports(const CliqueFamily& fam,
                                                const MeasurementModel* truth = nullptr,
                                                int guard = kFracturedGuardDefault) {
  const std::vector<NodeSet> maximals = maximal_valid_subsets(fam);
  std::vector<SubsetReport> out;
  out.reserve(maximals.size());
  for (NodeSet s : maximals) {
    SubsetReport rep;
    rep.subset = s;
    rep.valid = true;
    rep.maximal_valid = true;
    for (NodeSet m : maximals)
      if (m != s && subset_of(s, m)) rep.replaceable_witnesses.push_back(m);
    rep.replaceable = !rep.replaceable_witnesses.empty();
    try {
      FracturedReport fr = fractured_report(s, fam, maximals, guard);
      rep.fractured = fr.fractured;
      rep.fractured_witness = std::move(fr.witness);
    } catch (const GuardError&) {
      rep.fractured_decided = false;
    }
    if (truth != nullptr) {
      rep.imaginary = is_imaginary(s, *truth);
      rep.covering_latent = latrec::covering_latent(s, *truth);
    }
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace latrec
