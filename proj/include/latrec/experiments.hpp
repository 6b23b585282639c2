#pragma once

#include <atomic>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "latrec/simdata.hpp"

namespace latrec {

struct RecoverOptions {
  Route route = Route::PureChild;
  // Fixed UDG threshold for sample mode; when absent, a permutation-calibrated
  // cutoff (199 permutations, level 0.05) on the symmetrized statistic is used.
  std::optional<double> threshold;
  int permutations = 199;
  double level = 0.05;
  std::uint64_t seed = 0;
};

inline double effective_threshold(const RecoverOptions& opts, std::size_t num_samples) {
  if (opts.threshold.has_value()) return *opts.threshold;
  return chatterjee_cutoff(static_cast<int>(num_samples), opts.permutations, opts.level, opts.seed);
}

inline RecoveredModel recover_from_samples(const std::vector<SampleMatrix>& datasets,
                                           const RecoverOptions& opts) {
  if (datasets.empty()) throw InputError("recover_from_samples: no datasets");
  std::vector<Udg> udgs;
  udgs.reserve(datasets.size());
  for (const SampleMatrix& d : datasets)
    udgs.push_back(udg_from_samples(d, effective_threshold(opts, d.num_rows())).udg);
  return full_pipeline(udgs, opts.route);
}

// How far the pipeline got before degrading. Noisy families can defeat the
// strict stages; the experiment harness scores whatever honest partial
// output remains instead of aborting the run.
enum class PipelineStage { Full, SkeletonOnly, Empty };

struct PipelineOutcome {
  RecoveredModel model;
  PipelineStage stage = PipelineStage::Full;
};

inline PipelineOutcome recover_with_fallback(const std::vector<Udg>& udgs, Route route,
                                             int guard = kFracturedGuardDefault) {
  const CliqueFamily fam = clique_family(udgs);
  std::vector<NodeSet> covers;
  try {
    covers = route == Route::NoImaginary ? recover_bipartite_no_imaginary(fam)
                                         : recover_bipartite_pure_child(fam, guard);
  } catch (const GuardError&) {
    return {RecoveredModel{}, PipelineStage::Empty};
  }
  const MarginalLatentFamily mfam = latent_marginal_family(fam, covers);
  try {
    return {assemble_recovered(covers, algorithm2_orient(mfam)), PipelineStage::Full};
  } catch (const InputError&) {
    // Inconsistent collider entry: keep the covers and the unoriented skeleton.
    LatentPdag pdag;
    pdag.num_latents = static_cast<int>(covers.size());
    pdag.undirected = algorithm1_skeleton(mfam);
    return {assemble_recovered(covers, std::move(pdag)), PipelineStage::SkeletonOnly};
  }
}

// --- experiment harness ---

enum class FrontEnd { Oracle, Samples };

struct CellConfig {
  int m = 2;
  int n = 5;
  Regime regime = Regime::PureChild;
};

struct CellResult {
  CellConfig cell;
  ExperimentRun run;
  int failures = 0;  // runs where recovery aborted; scored against an empty model
};

struct TableConfig {
  std::vector<CellConfig> cells;
  int runs = 100;
  int samples = 10000;
  FrontEnd front_end = FrontEnd::Samples;
  std::uint64_t seed = 0;
  double latent_edge_density = 0.5;
  double bipartite_extra_density = 0.3;
  bool require_identifiable = true;
  // Family-wise level of the per-distribution independence screen; the
  // per-pair permutation level is this divided by the number of pairs.
  double familywise_level = 0.05;
  int threads = 0;  // 0 = hardware concurrency
};

// Permutation count giving the corrected level a resolution of ~4 exceedances.
inline int permutations_for_level(double level) {
  const int needed = static_cast<int>(std::ceil(4.0 / level)) - 1;
  return std::max(199, needed);
}

inline std::vector<CellConfig> default_cells() {
  std::vector<CellConfig> cells;
  for (Regime r : {Regime::PureChild, Regime::SingleSource})
    for (auto [m, n] : {Edge{2, 5}, Edge{3, 8}, Edge{4, 7}, Edge{4, 8}})
      cells.push_back({m, n, r});
  return cells;
}

// One simulated recovery; returns the SHD against the isolated-canonicalized
// truth. Aborted recoveries score against an empty model.
inline int single_run_shd(const TableConfig& cfg, std::size_t cell_index, int run_index,
                          bool* failed = nullptr) {
  const CellConfig& cell = cfg.cells[cell_index];
  const std::uint64_t run_seed =
      rng_key(cfg.seed, {0x72756EULL, static_cast<std::uint64_t>(cell_index),
                         static_cast<std::uint64_t>(run_index)});
  GeneratorConfig gen;
  gen.m = cell.m;
  gen.n = cell.n;
  gen.regime = cell.regime;
  gen.latent_edge_density = cfg.latent_edge_density;
  gen.bipartite_extra_density = cfg.bipartite_extra_density;
  gen.seed = run_seed;
  gen.require_identifiable = cfg.require_identifiable;
  const MeasurementModel truth = gen_random_mm(gen).model;
  const RecoveredModel reference = recovered_from_truth(truth, true);

  if (failed != nullptr) *failed = false;
  try {
    RecoveredModel rec;
    if (cfg.front_end == FrontEnd::Oracle) {
      rec = full_pipeline(oracle_udgs(truth), regime_route(cell.regime));
    } else {
      const SemSpec spec = make_sem_spec(truth, run_seed);
      std::vector<SampleMatrix> datasets;
      std::size_t dist_index = 0;
      std::vector<Udg> seen;
      for (const Target& t : complete_targets(truth)) {
        // One dataset per distinct interventional distribution.
        Udg u = udg_from_graph(truth, t);
        if (std::find(seen.begin(), seen.end(), u) != seen.end()) continue;
        seen.push_back(std::move(u));
        datasets.push_back(sem_sample(spec, t, cfg.samples,
                                      rng_key(run_seed, {0x64697374ULL, dist_index})));
        ++dist_index;
      }
      RecoverOptions opts;
      opts.route = regime_route(cell.regime);
      opts.level = cfg.familywise_level / (cell.n * (cell.n - 1) / 2);
      opts.permutations = permutations_for_level(opts.level);
      // Calibration keyed by the master seed so the cutoff is shared by runs.
      opts.seed = rng_key(cfg.seed, {0x63616C6962ULL});
      std::vector<Udg> udgs;
      for (const SampleMatrix& d : datasets)
        udgs.push_back(udg_from_samples(d, effective_threshold(opts, d.num_rows())).udg);
      const PipelineOutcome outcome = recover_with_fallback(udgs, opts.route);
      if (failed != nullptr) *failed = outcome.stage != PipelineStage::Full;
      if (outcome.model.m > 9) throw GuardError("recovered latent count exceeds matching guard");
      return shd(reference, outcome.model);
    }
    if (rec.m > 9) throw GuardError("recovered latent count exceeds matching guard");
    return shd(reference, rec);
  } catch (const GuardError&) {
  } catch (const InputError&) {
  }
  if (failed != nullptr) *failed = true;
  return shd(reference, RecoveredModel{});
}

inline std::vector<CellResult> run_table(const TableConfig& cfg) {
  std::vector<CellResult> results;
  for (std::size_t ci = 0; ci < cfg.cells.size(); ++ci) {
    std::vector<int> shds(static_cast<std::size_t>(cfg.runs), 0);
    std::vector<unsigned char> failed(static_cast<std::size_t>(cfg.runs), 0);
    unsigned threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(cfg.runs));
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&]() {
        while (true) {
          const int r = next.fetch_add(1);
          if (r >= cfg.runs) break;
          bool f = false;
          shds[static_cast<std::size_t>(r)] = single_run_shd(cfg, ci, r, &f);
          failed[static_cast<std::size_t>(r)] = f ? 1 : 0;
        }
      });
    for (auto& th : pool) th.join();
    CellResult res;
    res.cell = cfg.cells[ci];
    res.run = summarize_runs(std::move(shds));
    for (unsigned char f : failed) res.failures += f;
    results.push_back(std::move(res));
  }
  return results;
}

inline std::string regime_name(Regime r) {
  return r == Regime::PureChild ? "pure_child" : "single_source";
}

// Plain-text table mirroring the reported layout: one row per regime, one
// column per (m,n).
inline std::string render_table(const std::vector<CellResult>& results) {
  std::vector<std::pair<int, int>> sizes;
  for (const auto& r : results) {
    const std::pair<int, int> mn{r.cell.m, r.cell.n};
    if (std::find(sizes.begin(), sizes.end(), mn) == sizes.end()) sizes.push_back(mn);
  }
  std::string out = "regime         ";
  char buf[64];
  for (auto [m, n] : sizes) {
    std::snprintf(buf, sizeof(buf), " (%d,%d)          ", m, n);
    out += buf;
  }
  out += "\n";
  for (Regime regime : {Regime::PureChild, Regime::SingleSource}) {
    bool any = false;
    std::string row;
    std::snprintf(buf, sizeof(buf), "%-15s", regime_name(regime).c_str());
    row += buf;
    for (auto [m, n] : sizes) {
      bool found = false;
      for (const auto& r : results)
        if (r.cell.regime == regime && r.cell.m == m && r.cell.n == n) {
          std::snprintf(buf, sizeof(buf), " %5.2f +/- %-5.2f", r.run.mean, r.run.standard_error);
          row += buf;
          found = true;
          any = true;
          break;
        }
      if (!found) row += "      -        ";
    }
    if (any) out += row + "\n";
  }
  return out;
}

}  // namespace latrec
