#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "tempinf/factorize.hpp"

namespace tempinf {

/// Everything a pipeline run depends on, in one serializable record. Every
/// artifact embeds the originating config and its fingerprint so results can
/// be traced back to the exact parameters that produced them.
struct RunConfig {
  std::string command;  // extract | validate | compare | classify | synth

  // Inputs and placement.
  std::string input;            // edge list, or a matrix dump when input_is_matrix
  bool input_is_matrix = false;
  std::string network_name;     // label used in reports; defaults to the input stem
  std::string out_dir;          // empty = TEMPINF_OUT_DIR env var, then "out"
  int threads = 1;

  // Ingestion.
  int snapshot_count = 400;
  std::string metric = "degree";
  bool drop_self_loops = true;
  int source_column = 0;
  int target_column = 1;
  int timestamp_column = 2;

  // Factorization.
  int k = 1;
  int max_iterations = 2000;
  double tolerance = 1e-4;
  std::string init = "random";  // random | nndsvd
  std::uint64_t seed = kDefaultSeed;

  // Stability validation.
  std::vector<int> rhos = {5, 10, 20};
  double cosine_min = 0.8;
  double l1_max = 7e-2;
  double l2_max = 6e-3;

  // Comparison and classification.
  std::vector<std::string> corpus;  // pattern CSV paths; label = file stem
  std::string manifest;             // labeled corpus JSON
  std::vector<std::string> measures = {"dtw-averaged"};
  std::string unknown;              // pattern CSV to classify
  bool classify_plain = false;      // use raw DTW instead of path-averaged

  // Synthetic instances.
  int synth_nodes = 200;
  int synth_snapshots = 400;
  int synth_k = 1;
  std::string shape = "decay";
  double noise = 0.0;

  // Extra outputs.
  bool export_matrix = false;  // also write the aligned matrix (CSV + binary)
  bool plot = false;           // also write an SVG chart
};

/// Lossless round trip: from_json(to_json(c)) == c field for field.
nlohmann::json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

/// FNV-1a 64-bit over the canonical JSON dump, as fixed-width hex. Two runs
/// share a fingerprint exactly when they share every config field.
std::string config_fingerprint(const RunConfig& config);

/// NmfConfig view of the factorization fields. Throws Unsupported on an
/// unknown init name.
NmfConfig nmf_config_of(const RunConfig& config);

}  // namespace tempinf
