#include "tempinf/run_config.hpp"

#include <charconv>

#include "tempinf/error.hpp"

namespace tempinf {

nlohmann::json to_json(const RunConfig& c) {
  return nlohmann::json{
      {"command", c.command},
      {"input", c.input},
      {"input_is_matrix", c.input_is_matrix},
      {"network_name", c.network_name},
      {"out_dir", c.out_dir},
      {"threads", c.threads},
      {"snapshot_count", c.snapshot_count},
      {"metric", c.metric},
      {"drop_self_loops", c.drop_self_loops},
      {"source_column", c.source_column},
      {"target_column", c.target_column},
      {"timestamp_column", c.timestamp_column},
      {"k", c.k},
      {"max_iterations", c.max_iterations},
      {"tolerance", c.tolerance},
      {"init", c.init},
      {"seed", c.seed},
      {"rhos", c.rhos},
      {"cosine_min", c.cosine_min},
      {"l1_max", c.l1_max},
      {"l2_max", c.l2_max},
      {"corpus", c.corpus},
      {"manifest", c.manifest},
      {"measures", c.measures},
      {"unknown", c.unknown},
      {"classify_plain", c.classify_plain},
      {"synth_nodes", c.synth_nodes},
      {"synth_snapshots", c.synth_snapshots},
      {"synth_k", c.synth_k},
      {"shape", c.shape},
      {"noise", c.noise},
      {"export_matrix", c.export_matrix},
      {"plot", c.plot},
  };
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  // at() everywhere: a missing field is a malformed config, not a default.
  j.at("command").get_to(c.command);
  j.at("input").get_to(c.input);
  j.at("input_is_matrix").get_to(c.input_is_matrix);
  j.at("network_name").get_to(c.network_name);
  j.at("out_dir").get_to(c.out_dir);
  j.at("threads").get_to(c.threads);
  j.at("snapshot_count").get_to(c.snapshot_count);
  j.at("metric").get_to(c.metric);
  j.at("drop_self_loops").get_to(c.drop_self_loops);
  j.at("source_column").get_to(c.source_column);
  j.at("target_column").get_to(c.target_column);
  j.at("timestamp_column").get_to(c.timestamp_column);
  j.at("k").get_to(c.k);
  j.at("max_iterations").get_to(c.max_iterations);
  j.at("tolerance").get_to(c.tolerance);
  j.at("init").get_to(c.init);
  j.at("seed").get_to(c.seed);
  j.at("rhos").get_to(c.rhos);
  j.at("cosine_min").get_to(c.cosine_min);
  j.at("l1_max").get_to(c.l1_max);
  j.at("l2_max").get_to(c.l2_max);
  j.at("corpus").get_to(c.corpus);
  j.at("manifest").get_to(c.manifest);
  j.at("measures").get_to(c.measures);
  j.at("unknown").get_to(c.unknown);
  j.at("classify_plain").get_to(c.classify_plain);
  j.at("synth_nodes").get_to(c.synth_nodes);
  j.at("synth_snapshots").get_to(c.synth_snapshots);
  j.at("synth_k").get_to(c.synth_k);
  j.at("shape").get_to(c.shape);
  j.at("noise").get_to(c.noise);
  j.at("export_matrix").get_to(c.export_matrix);
  j.at("plot").get_to(c.plot);
  return c;
}

std::string config_fingerprint(const RunConfig& config) {
  const std::string dump = to_json(config).dump();
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char byte : dump) {
    hash ^= byte;
    hash *= 0x100000001b3ull;
  }
  char buffer[17] = {};
  for (int nibble = 15; nibble >= 0; --nibble) {
    buffer[15 - nibble] = "0123456789abcdef"[(hash >> (nibble * 4)) & 0xf];
  }
  return std::string(buffer, 16);
}

NmfConfig nmf_config_of(const RunConfig& config) {
  NmfConfig nmf;
  nmf.k = config.k;
  nmf.max_iterations = config.max_iterations;
  nmf.rel_change_tolerance = config.tolerance;
  nmf.seed = config.seed;
  if (config.init == "random") {
    nmf.init = NmfInit::NonnegativeRandom;
  } else if (config.init == "nndsvd") {
    nmf.init = NmfInit::NndsvdStyle;
  } else {
    throw Error(ErrorKind::Unsupported, "unknown init '" + config.init + "'");
  }
  return nmf;
}

}  // namespace tempinf
