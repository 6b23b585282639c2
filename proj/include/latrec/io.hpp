#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "latrec/recovery.hpp"
#include "latrec/stats.hpp"
#include "latrec/subsets.hpp"

namespace latrec {

using json = nlohmann::json;

// --- graph schemas ---
// Measurement model: {"m", "n", "latent_edges": [[i,j]...], "bipartite_edges": [[i,j]...]}
// with latent indices 0..m-1 and observed indices 0..n-1 in their own namespace.
// Plain DAG: {"nodes", "edges": [[a,b]...]}.
// UDG: {"n", "edges": [[i,j]...]}.

inline json edges_to_json(const std::vector<Edge>& edges) {
  json out = json::array();
  for (const auto& [a, b] : edges) out.push_back(json::array({a, b}));
  return out;
}

inline std::vector<Edge> edges_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + ": expected an array of pairs");
  std::vector<Edge> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw InputError(std::string(what) + ": each edge must be a pair of integers");
    out.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return out;
}

inline json to_json(const MeasurementModel& g) {
  return json{{"m", g.num_latents()},
              {"n", g.num_observed()},
              {"latent_edges", edges_to_json(g.latent_edges())},
              {"bipartite_edges", edges_to_json(g.bipartite_edges())}};
}

inline MeasurementModel mm_from_json(const json& j) {
  if (!j.contains("m") || !j.contains("n"))
    throw InputError("measurement model JSON: missing \"m\" or \"n\"");
  return MeasurementModel(j.at("m").get<int>(), j.at("n").get<int>(),
                          edges_from_json(j.value("latent_edges", json::array()), "latent_edges"),
                          edges_from_json(j.value("bipartite_edges", json::array()), "bipartite_edges"));
}

inline json to_json(const Dag& g) {
  return json{{"nodes", g.node_count()}, {"edges", edges_to_json(g.edges())}};
}

inline Dag dag_from_json(const json& j) {
  if (!j.contains("nodes")) throw InputError("dag JSON: missing \"nodes\"");
  return Dag(j.at("nodes").get<int>(), edges_from_json(j.value("edges", json::array()), "edges"));
}

inline json to_json(const Udg& u) {
  return json{{"n", u.num_observed()}, {"edges", edges_to_json(u.edges())}};
}

inline Udg udg_from_json(const json& j) {
  if (!j.contains("n")) throw InputError("udg JSON: missing \"n\"");
  return Udg(j.at("n").get<int>(), edges_from_json(j.value("edges", json::array()), "edges"));
}

inline json to_json(const RecoveredModel& r) {
  json covers = json::array();
  for (const auto& c : r.covers) covers.push_back(c);
  return json{{"covers", covers},
              {"directed", edges_to_json(r.latent_pdag.directed)},
              {"undirected", edges_to_json(r.latent_pdag.undirected)},
              {"m", r.m}};
}

inline json to_json(const SubsetReport& rep) {
  json witnesses;
  json supersets = json::array();
  for (NodeSet w : rep.replaceable_witnesses) supersets.push_back(set_to_vector(w));
  witnesses["replaceable_supersets"] = supersets;
  json collection = json::array();
  for (NodeSet w : rep.fractured_witness) collection.push_back(set_to_vector(w));
  witnesses["fractured_collection"] = collection;
  witnesses["covering_latent"] =
      rep.covering_latent.has_value() ? json(*rep.covering_latent) : json(nullptr);
  json out{{"subset", set_to_vector(rep.subset)},
           {"valid", rep.valid},
           {"maximal_valid", rep.maximal_valid},
           {"replaceable", rep.replaceable},
           {"fractured", rep.fractured_decided ? json(rep.fractured) : json("undecided")},
           {"witnesses", witnesses}};
  out["imaginary"] = rep.imaginary.has_value() ? json(*rep.imaginary) : json(nullptr);
  return out;
}

// --- files ---

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

inline void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

// CSV with header X0..X{n-1}; one column per observed variable. Values are
// printed with round-trip precision so reruns are byte-identical.
inline void write_csv(const std::filesystem::path& path, const SampleMatrix& data) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  for (int c = 0; c < data.num_cols(); ++c) out << (c ? "," : "") << "X" << c;
  out << "\n";
  char buf[40];
  for (std::size_t r = 0; r < data.num_rows(); ++r) {
    for (int c = 0; c < data.num_cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", data.cols[static_cast<std::size_t>(c)][r]);
      out << (c ? "," : "") << buf;
    }
    out << "\n";
  }
}

inline SampleMatrix read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty CSV: " + path.string());
  std::size_t cols = std::count(line.begin(), line.end(), ',') + 1;
  SampleMatrix data;
  data.cols.resize(cols);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t c = 0;
    while (std::getline(ss, cell, ',')) {
      if (c >= cols)
        throw InputError(path.string() + ":" + std::to_string(line_no) + ": too many columns");
      try {
        data.cols[c].push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw InputError(path.string() + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
      ++c;
    }
    if (c != cols)
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": ragged row");
  }
  return data;
}

}  // namespace latrec
