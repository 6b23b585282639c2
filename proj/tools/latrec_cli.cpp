// Command-line surface: simulate, recover, subsets, table1, equiv.
// JSON-first output; errors go to stderr as a JSON object; exit codes are
// 0 (ok), 1 (input error), 2 (internal error).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "latrec/latrec.hpp"

namespace fs = std::filesystem;
using latrec::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string iso_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Appends one line per invocation; every output file is referenced by exactly
// one manifest entry.
void append_manifest(const fs::path& dir, const std::string& command, const json& config,
                     std::uint64_t seed, const std::string& started,
                     const std::vector<std::string>& outputs) {
  std::ofstream out(dir / "manifest.jsonl", std::ios::app);
  if (!out) throw latrec::InputError("cannot write manifest in " + dir.string());
  json line{{"command", command}, {"config", config},     {"seed", seed},
            {"version", kVersion}, {"started", started},   {"finished", iso_now()},
            {"outputs", outputs}};
  out << line.dump() << "\n";
}

// The config file, when given, overrides flag values of the same name.
json load_config_overrides(const std::string& path) {
  if (path.empty()) return json::object();
  return latrec::read_json_file(path);
}

template <typename T>
void override_from(const json& cfg, const char* key, T& value) {
  if (cfg.contains(key)) value = cfg.at(key).get<T>();
}

latrec::Regime parse_regime(const std::string& s) {
  if (s == "pure_child") return latrec::Regime::PureChild;
  if (s == "single_source") return latrec::Regime::SingleSource;
  throw latrec::InputError("unknown regime '" + s + "' (pure_child|single_source)");
}

latrec::Route parse_route(const std::string& s) {
  if (s == "no_imaginary") return latrec::Route::NoImaginary;
  if (s == "pure_child") return latrec::Route::PureChild;
  throw latrec::InputError("unknown route '" + s + "' (no_imaginary|pure_child)");
}

std::vector<fs::path> sorted_files(const fs::path& dir, const std::string& ext) {
  if (!fs::is_directory(dir)) throw latrec::InputError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ext &&
        e.path().filename().string().rfind("graph", 0) != 0)
      files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

int cmd_simulate(int m, int n, const std::string& regime, std::uint64_t seed, int samples,
                 const std::string& out_dir, double latent_density, double extra_density,
                 bool no_guard, const std::string& config_path) {
  const std::string started = iso_now();
  const json cfg = load_config_overrides(config_path);
  override_from(cfg, "m", m);
  override_from(cfg, "n", n);
  std::string regime_s = regime;
  override_from(cfg, "regime", regime_s);
  override_from(cfg, "seed", seed);
  override_from(cfg, "samples", samples);
  override_from(cfg, "latent_density", latent_density);
  override_from(cfg, "extra_density", extra_density);

  latrec::GeneratorConfig gen;
  gen.m = m;
  gen.n = n;
  gen.regime = parse_regime(regime_s);
  gen.seed = seed;
  gen.latent_edge_density = latent_density;
  gen.bipartite_extra_density = extra_density;
  gen.require_identifiable = !no_guard;
  const latrec::MeasurementModel truth = latrec::gen_random_mm(gen).model;

  fs::create_directories(out_dir);
  std::vector<std::string> outputs;
  const fs::path graph_path = fs::path(out_dir) / "graph.json";
  latrec::write_json_file(graph_path, latrec::to_json(truth));
  outputs.push_back(graph_path.string());

  const latrec::SemSpec spec = latrec::make_sem_spec(truth, seed);
  std::vector<latrec::Udg> seen;
  std::size_t dist_index = 0;
  for (const latrec::Target& t : latrec::complete_targets(truth)) {
    latrec::Udg u = latrec::udg_from_graph(truth, t);
    if (std::find(seen.begin(), seen.end(), u) != seen.end()) continue;
    seen.push_back(u);
    char name[32];
    std::snprintf(name, sizeof(name), "udg_%02zu.json", dist_index);
    const fs::path upath = fs::path(out_dir) / name;
    latrec::write_json_file(upath, latrec::to_json(u));
    outputs.push_back(upath.string());
    std::snprintf(name, sizeof(name), "dist_%02zu.csv", dist_index);
    const fs::path cpath = fs::path(out_dir) / name;
    latrec::write_csv(cpath, latrec::sem_sample(spec, t, samples,
                                                latrec::rng_key(seed, {0x64697374ULL, dist_index})));
    outputs.push_back(cpath.string());
    ++dist_index;
  }

  const json manifest_cfg{{"m", m},       {"n", n},           {"regime", regime_s},
                          {"samples", samples}, {"latent_density", latent_density},
                          {"extra_density", extra_density},   {"identifiable_guard", !no_guard}};
  append_manifest(out_dir, "simulate", manifest_cfg, seed, started, outputs);
  std::cout << json{{"out_dir", out_dir}, {"distributions", dist_index}}.dump(2) << "\n";
  return 0;
}

int cmd_recover(const std::string& in_dir, const std::string& mode, const std::string& route_s,
                double threshold, std::uint64_t seed, const std::string& out_dir,
                const std::string& config_path) {
  const std::string started = iso_now();
  const json cfg = load_config_overrides(config_path);
  std::string mode_s = mode, route_str = route_s;
  override_from(cfg, "mode", mode_s);
  override_from(cfg, "route", route_str);
  override_from(cfg, "threshold", threshold);
  override_from(cfg, "seed", seed);
  const latrec::Route route = parse_route(route_str);

  std::vector<latrec::Udg> udgs;
  if (mode_s == "oracle") {
    const auto files = sorted_files(in_dir, ".json");
    if (files.empty()) throw latrec::InputError("no UDG JSON files in " + in_dir);
    for (const auto& f : files) udgs.push_back(latrec::udg_from_json(latrec::read_json_file(f)));
  } else if (mode_s == "samples") {
    const auto files = sorted_files(in_dir, ".csv");
    if (files.empty()) throw latrec::InputError("no CSV sample files in " + in_dir);
    latrec::RecoverOptions opts;
    opts.seed = seed;
    if (threshold == threshold) opts.threshold = threshold;  // NaN means calibrate
    for (const auto& f : files) {
      const latrec::SampleMatrix data = latrec::read_csv(f);
      udgs.push_back(latrec::udg_from_samples(data, latrec::effective_threshold(opts, data.num_rows())).udg);
    }
  } else {
    throw latrec::InputError("unknown mode '" + mode_s + "' (oracle|samples)");
  }

  const latrec::RecoveredModel rec = latrec::full_pipeline(udgs, route);
  const latrec::CliqueFamily fam = latrec::clique_family(udgs);
  json reports = json::array();
  for (const auto& rep : latrec::subset_reports(fam)) reports.push_back(latrec::to_json(rep));

  const json rec_json = latrec::to_json(rec);
  std::cout << rec_json.dump(2) << "\n";
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    const fs::path rpath = fs::path(out_dir) / "recovered.json";
    const fs::path spath = fs::path(out_dir) / "subsets.json";
    latrec::write_json_file(rpath, rec_json);
    latrec::write_json_file(spath, reports);
    append_manifest(out_dir, "recover",
                    json{{"in", in_dir}, {"mode", mode_s}, {"route", route_str}}, seed, started,
                    {rpath.string(), spath.string()});
  }
  return 0;
}

int cmd_subsets(const std::string& in_dir, const std::string& graph_path,
                const std::string& out_file) {
  std::vector<latrec::Udg> udgs;
  std::optional<latrec::MeasurementModel> truth;
  if (!graph_path.empty())
    truth.emplace(latrec::mm_from_json(latrec::read_json_file(graph_path)));
  if (!in_dir.empty()) {
    for (const auto& f : sorted_files(in_dir, ".json"))
      udgs.push_back(latrec::udg_from_json(latrec::read_json_file(f)));
  } else if (truth.has_value()) {
    udgs = latrec::oracle_udgs(*truth);
  }
  if (udgs.empty()) throw latrec::InputError("subsets: need --in with UDG files or --graph");
  const latrec::CliqueFamily fam = latrec::clique_family(udgs);
  json reports = json::array();
  for (const auto& rep : latrec::subset_reports(fam, truth.has_value() ? &*truth : nullptr))
    reports.push_back(latrec::to_json(rep));
  std::cout << reports.dump(2) << "\n";
  if (!out_file.empty()) latrec::write_json_file(out_file, reports);
  return 0;
}

int cmd_table1(int runs, int samples, const std::string& mode, std::uint64_t seed, int threads,
               const std::string& out_file, const std::string& regimes, double latent_density,
               double extra_density, bool no_guard, const std::string& config_path) {
  const json cfg = load_config_overrides(config_path);
  override_from(cfg, "runs", runs);
  override_from(cfg, "samples", samples);
  std::string mode_s = mode, regimes_s = regimes;
  override_from(cfg, "mode", mode_s);
  override_from(cfg, "seed", seed);
  override_from(cfg, "regimes", regimes_s);
  if (runs < 10) throw latrec::InputError("table1: need at least 10 runs");

  latrec::TableConfig tcfg;
  for (const auto& cell : latrec::default_cells()) {
    if (regimes_s == "pure_child" && cell.regime != latrec::Regime::PureChild) continue;
    if (regimes_s == "single_source" && cell.regime != latrec::Regime::SingleSource) continue;
    tcfg.cells.push_back(cell);
  }
  tcfg.runs = runs;
  tcfg.samples = samples;
  tcfg.front_end = mode_s == "oracle" ? latrec::FrontEnd::Oracle : latrec::FrontEnd::Samples;
  tcfg.seed = seed;
  tcfg.threads = threads;
  tcfg.latent_edge_density = latent_density;
  tcfg.bipartite_extra_density = extra_density;
  tcfg.require_identifiable = !no_guard;

  const auto results = latrec::run_table(tcfg);
  json cells = json::array();
  for (const auto& r : results)
    cells.push_back(json{{"m", r.cell.m},
                         {"n", r.cell.n},
                         {"regime", latrec::regime_name(r.cell.regime)},
                         {"mean_shd", r.run.mean},
                         {"standard_error", r.run.standard_error},
                         {"failures", r.failures},
                         {"per_run_shd", r.run.per_run_shd}});
  const json report{{"runs", runs},       {"samples", samples}, {"mode", mode_s},
                    {"seed", seed},       {"cells", cells}};
  std::cerr << latrec::render_table(results);
  std::cout << report.dump(2) << "\n";
  if (!out_file.empty()) latrec::write_json_file(out_file, report);
  return 0;
}

latrec::Dag dag_from_file(const std::string& path) {
  return latrec::dag_from_json(latrec::read_json_file(path));
}

int cmd_equiv_iec(const std::string& g1, const std::string& g2) {
  const bool eq = latrec::iec_equivalent(dag_from_file(g1), dag_from_file(g2));
  std::cout << json{{"iec_equivalent", eq}}.dump(2) << "\n";
  return 0;
}

int cmd_equiv_remap(const std::string& graph, int a, int b) {
  const latrec::Dag g = dag_from_file(graph);
  std::vector<latrec::Target> targets{std::nullopt};
  for (int v = 0; v < g.node_count(); ++v) targets.push_back(v);
  const bool ok = latrec::theorem_remap_check(g, {a, b}, targets);
  std::cout << json{{"remap_check", ok}, {"edge", json::array({a, b})}}.dump(2) << "\n";
  return 0;
}

int cmd_equiv_distinguish(const std::string& g1, const std::string& g2) {
  const auto targets = latrec::distinguishing_targets(dag_from_file(g1), dag_from_file(g2));
  std::cout << json{{"found", !targets.empty()}, {"distinguishing_targets", targets}}.dump(2)
            << "\n";
  return 0;
}

int cmd_equiv_maximal(const std::string& graph) {
  const latrec::MeasurementModel g = latrec::mm_from_json(latrec::read_json_file(graph));
  const auto rep = latrec::maximality_check(g, latrec::complete_targets(g));
  json out{{"maximal", rep.maximal}, {"violating_edge", nullptr}};
  if (!rep.maximal)
    out["violating_edge"] =
        json{{"kind", rep.kind == latrec::MaximalityReport::EdgeKind::Latent ? "latent" : "bipartite"},
             {"edge", json::array({rep.edge.first, rep.edge.second})}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latent causal graph recovery from unknown interventions"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "generate a random model and interventional samples");
  int m = 2, n = 5, samples = 10000;
  std::string regime = "pure_child", out_dir, config;
  std::uint64_t seed = 0;
  double latent_density = 0.5, extra_density = 0.3;
  bool no_guard = false;
  sim->add_option("--m", m, "number of latents");
  sim->add_option("--n", n, "number of observed");
  sim->add_option("--regime", regime, "pure_child|single_source");
  sim->add_option("--seed", seed, "master seed");
  sim->add_option("--samples", samples, "samples per distribution");
  sim->add_option("--out", out_dir, "output directory")->required();
  sim->add_option("--latent-density", latent_density, "latent edge probability");
  sim->add_option("--extra-density", extra_density, "extra bipartite edge probability");
  sim->add_flag("--no-identifiable-guard", no_guard, "skip identifiability rejection sampling");
  sim->add_option("--config", config, "JSON config file; overrides flags");

  // recover
  auto* rec = app.add_subcommand("recover", "recover a model from UDG JSONs or sample CSVs");
  std::string in_dir, mode = "oracle", route = "pure_child", rec_out;
  double threshold = std::nan("");
  rec->add_option("--in", in_dir, "input directory")->required();
  rec->add_option("--mode", mode, "oracle|samples");
  rec->add_option("--route", route, "no_imaginary|pure_child");
  rec->add_option("--threshold", threshold, "fixed UDG threshold (default: permutation cutoff)");
  rec->add_option("--seed", seed, "seed for threshold calibration");
  rec->add_option("--out", rec_out, "directory for recovered.json and subsets.json");
  rec->add_option("--config", config, "JSON config file; overrides flags");

  // subsets
  auto* sub = app.add_subcommand("subsets", "dump subset classification reports");
  std::string sub_in, sub_graph, sub_out;
  sub->add_option("--in", sub_in, "directory of UDG JSONs");
  sub->add_option("--graph", sub_graph, "ground-truth model JSON (adds imaginary flags)");
  sub->add_option("--out", sub_out, "output JSON file");

  // table1
  auto* tab = app.add_subcommand("table1", "SHD experiment grid over (m,n) x regime");
  int runs = 100, threads = 0;
  std::string tab_mode = "samples", tab_out, regimes = "both";
  tab->add_option("--runs", runs, "runs per cell");
  tab->add_option("--samples", samples, "samples per distribution");
  tab->add_option("--mode", tab_mode, "oracle|samples");
  tab->add_option("--seed", seed, "master seed");
  tab->add_option("--threads", threads, "worker threads (0 = auto)");
  tab->add_option("--out", tab_out, "output JSON file");
  tab->add_option("--regimes", regimes, "both|pure_child|single_source");
  tab->add_option("--latent-density", latent_density, "latent edge probability");
  tab->add_option("--extra-density", extra_density, "extra bipartite edge probability");
  tab->add_flag("--no-identifiable-guard", no_guard, "skip identifiability rejection sampling");
  tab->add_option("--config", config, "JSON config file; overrides flags");

  // equiv
  auto* equiv = app.add_subcommand("equiv", "equivalence-class checks");
  equiv->require_subcommand(1);
  std::string g1, g2, graph;
  int edge_a = 0, edge_b = 1;
  auto* iec = equiv->add_subcommand("iec", "isolated equivalence of two DAGs");
  iec->add_option("--g1", g1, "DAG JSON")->required();
  iec->add_option("--g2", g2, "DAG JSON")->required();
  auto* remap = equiv->add_subcommand("remap-check",
                                      "reversed isolated edge induces the same family set");
  remap->add_option("--graph", graph, "DAG JSON")->required();
  remap->add_option("--from", edge_a, "edge tail")->required();
  remap->add_option("--to", edge_b, "edge head")->required();
  auto* dist = equiv->add_subcommand("distinguish", "find targets separating two DAGs");
  dist->add_option("--g1", g1, "DAG JSON")->required();
  dist->add_option("--g2", g2, "DAG JSON")->required();
  auto* maximal = equiv->add_subcommand("maximal", "single-edge maximality check");
  maximal->add_option("--graph", graph, "measurement model JSON")->required();

  try {
    app.parse(argc, argv);
    if (sim->parsed())
      return cmd_simulate(m, n, regime, seed, samples, out_dir, latent_density, extra_density,
                          no_guard, config);
    if (rec->parsed()) return cmd_recover(in_dir, mode, route, threshold, seed, rec_out, config);
    if (sub->parsed()) return cmd_subsets(sub_in, sub_graph, sub_out);
    if (tab->parsed())
      return cmd_table1(runs, samples, tab_mode, seed, threads, tab_out, regimes, latent_density,
                        extra_density, no_guard, config);
    if (iec->parsed()) return cmd_equiv_iec(g1, g2);
    if (remap->parsed()) return cmd_equiv_remap(graph, edge_a, edge_b);
    if (dist->parsed()) return cmd_equiv_distinguish(g1, g2);
    if (maximal->parsed()) return cmd_equiv_maximal(graph);
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << json{{"error", {{"kind", "input"}, {"message", e.what()}}}}.dump() << "\n";
    return 1;
  } catch (const latrec::InputError& e) {
    std::cerr << json{{"error", {{"kind", "input"}, {"message", e.what()}}}}.dump() << "\n";
    return 1;
  } catch (const latrec::GuardError& e) {
    std::cerr << json{{"error", {{"kind", "guard"}, {"message", e.what()}}}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  }
}
