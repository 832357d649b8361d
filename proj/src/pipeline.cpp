#include "tempinf/pipeline.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "tempinf/io.hpp"
#include "tempinf/similarity.hpp"
#include "tempinf/svg_plot.hpp"
#include "tempinf/synth.hpp"
#include "tempinf/uniqueness.hpp"

namespace tempinf {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io: return kExitIo;
    case ErrorKind::EmptyNetwork: return kExitEmptyNetwork;
    case ErrorKind::SnapshotCount: return kExitSnapshotCount;
    case ErrorKind::DegenerateInput: return kExitDegenerateInput;
    case ErrorKind::DegenerateFactor: return kExitDegenerateFactor;
    case ErrorKind::Unsupported: return kExitUnsupported;
    case ErrorKind::InvalidArgument: return kExitInvalidArgument;
  }
  return kExitFailure;
}

std::string path_stem(const std::string& path) {
  std::filesystem::path p(path);
  if (p.extension() == ".gz") p = p.stem();
  return p.stem().string();
}

namespace {

namespace fs = std::filesystem;

struct IngestResult {
  AlignedInfluenceMatrix aligned;
  std::size_t edge_events = 0;
  std::size_t dropped_malformed = 0;
  std::size_t dropped_self_loops = 0;
  std::size_t node_count = 0;
  bool from_matrix = false;
};

/// Edge list (or precomputed matrix dump) to aligned influence matrix.
IngestResult ingest(const RunConfig& config) {
  IngestResult result;
  if (config.input_is_matrix) {
    MatrixBundle bundle = read_matrix_auto(config.input);
    result.aligned.values = std::move(bundle.values);
    result.aligned.node_ids = std::move(bundle.node_ids);
    result.aligned.t0 = std::move(bundle.t0);
    result.aligned.n_i = std::move(bundle.n_i);
    result.node_count = static_cast<std::size_t>(result.aligned.values.rows());
    result.from_matrix = true;
    return result;
  }

  const InfluenceMetric metric = metric_from_name(config.metric);
  std::istringstream stream(read_text_file(config.input));
  ParseFormat format;
  format.source_column = config.source_column;
  format.target_column = config.target_column;
  format.timestamp_column = config.timestamp_column;
  TemporalEdgeList edges = parse_edge_list(stream, format);
  PreprocessConfig prep;
  prep.drop_self_loops = config.drop_self_loops;
  edges = preprocess(std::move(edges), prep);
  const SnapshotPlan plan = plan_snapshots(edges, config.snapshot_count);
  const InfluenceMatrix matrix = compute_influence_matrix(edges, plan, metric);

  result.aligned = align_matrix(matrix);
  result.edge_events = edges.edges.size();
  result.dropped_malformed = edges.dropped_malformed;
  result.dropped_self_loops = edges.dropped_self_loops;
  result.node_count = edges.node_count;
  return result;
}

nlohmann::json config_block(const RunConfig& config, const std::string& fingerprint) {
  return nlohmann::json{{"config", to_json(config)}, {"config_fingerprint", fingerprint}};
}

std::string out_path(const RunConfig& config, const std::string& name) {
  return (fs::path(config.out_dir) / name).string();
}

void write_json_artifact(const RunConfig& config, const std::string& name,
                         const nlohmann::json& body) {
  write_text_file(out_path(config, name), body.dump(2) + "\n");
}

std::vector<plot::Series> h_series(const Eigen::MatrixXd& h, const std::string& prefix) {
  std::vector<plot::Series> series;
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    plot::Series s;
    s.label = prefix + std::to_string(r + 1);
    s.values.assign(h.row(r).begin(), h.row(r).end());
    series.push_back(std::move(s));
  }
  return series;
}

int run_extract(const RunConfig& config, const std::string& fingerprint) {
  const IngestResult in = ingest(config);
  const FactorPair pair = factor(in.aligned.values, nmf_config_of(config));

  write_h_csv(out_path(config, "h.csv"), pair, fingerprint);

  nlohmann::json h_json = config_block(config, fingerprint);
  h_json["network"] = config.network_name;
  h_json["factor"] = factor_to_json(pair);
  write_json_artifact(config, "h.json", h_json);

  nlohmann::json report = config_block(config, fingerprint);
  report["network"] = config.network_name;
  report["from_matrix"] = in.from_matrix;
  report["nodes"] = in.node_count;
  report["edge_events"] = in.edge_events;
  report["dropped_malformed"] = in.dropped_malformed;
  report["dropped_self_loops"] = in.dropped_self_loops;
  report["snapshots"] = in.aligned.values.cols();
  report["k"] = pair.k;
  report["residual"] = pair.relative_residual;
  report["iterations"] = pair.iterations;
  report["converged"] = pair.converged;
  write_json_artifact(config, "extract_report.json", report);

  if (config.export_matrix) {
    MatrixBundle bundle{in.aligned.values, in.aligned.node_ids, in.aligned.t0,
                        in.aligned.n_i};
    write_matrix_csv(out_path(config, "mstar.csv"), bundle, fingerprint);
    write_matrix_binary(out_path(config, "mstar.bin"), in.aligned.values);
  }
  if (config.plot) {
    plot::emit_plot(h_series(pair.h, "role_"), config.network_name,
                    out_path(config, "h.svg"));
  }
  return kExitOk;
}

int run_validate(const RunConfig& config, const std::string& fingerprint) {
  const IngestResult in = ingest(config);
  UniquenessThresholds thresholds;
  thresholds.cosine_min = config.cosine_min;
  thresholds.l1_max = config.l1_max;
  thresholds.l2_max = config.l2_max;
  const UniquenessReport report =
      run_uniqueness(in.aligned.values, nmf_config_of(config), config.rhos, config.seed,
                     thresholds, config.threads);

  nlohmann::json body = config_block(config, fingerprint);
  body["network"] = config.network_name;
  body["uniqueness"] = uniqueness_to_json(report);
  write_json_artifact(config, "uniqueness.json", body);
  write_uniqueness_csv(out_path(config, "uniqueness.csv"), config.network_name, report,
                       fingerprint);
  return kExitOk;
}

// A pattern file written by the extraction step has a sibling JSON report
// carrying the network's name; prefer that over the file stem (which is
// typically just "h" and collides across networks).
std::string pattern_label(const std::string& path) {
  std::filesystem::path sibling(path);
  sibling.replace_extension(".json");
  std::error_code ec;
  if (std::filesystem::exists(sibling, ec)) {
    try {
      const nlohmann::json report = nlohmann::json::parse(read_text_file(sibling.string()));
      if (report.contains("network") && report["network"].is_string()) {
        return report["network"].get<std::string>();
      }
    } catch (const std::exception&) {
      // Not our report format; fall through to the stem.
    }
  }
  return path_stem(path);
}

std::vector<CorpusEntry> load_corpus(const RunConfig& config) {
  std::vector<CorpusEntry> corpus;
  if (!config.manifest.empty()) {
    const nlohmann::json manifest = nlohmann::json::parse(read_text_file(config.manifest));
    if (!manifest.contains("entries") || !manifest["entries"].is_array()) {
      throw Error(ErrorKind::Io, "manifest " + config.manifest + " lacks an entries array");
    }
    for (const nlohmann::json& entry : manifest["entries"]) {
      CorpusEntry c;
      c.name = entry.at("name").get<std::string>();
      c.category = entry.value("category", std::string());
      const auto path = entry.at("path").get<std::string>();
      const Eigen::MatrixXd h = read_h_csv(path);
      c.h.assign(h.row(0).begin(), h.row(0).end());
      corpus.push_back(std::move(c));
    }
  }
  for (const std::string& path : config.corpus) {
    CorpusEntry c;
    c.name = pattern_label(path);
    const Eigen::MatrixXd h = read_h_csv(path);
    c.h.assign(h.row(0).begin(), h.row(0).end());
    corpus.push_back(std::move(c));
  }
  return corpus;
}

int run_compare(const RunConfig& config, const std::string& fingerprint) {
  const std::vector<CorpusEntry> corpus = load_corpus(config);
  for (const std::string& name : config.measures) {
    const SimilarityMeasure measure = measure_from_name(name);
    const SimilarityMatrix matrix = pairwise_similarity(corpus, measure, config.threads);
    write_similarity_csv(out_path(config, "similarity_" + name + ".csv"), matrix,
                         fingerprint);
  }
  if (config.plot) {
    std::vector<plot::Series> series;
    for (const CorpusEntry& entry : corpus) {
      plot::Series s;
      s.label = entry.name;
      s.values = minmax_normalize(entry.h).values;  // what the warp comparison sees
      series.push_back(std::move(s));
    }
    plot::emit_plot(series, "pattern corpus", out_path(config, "corpus.svg"));
  }
  return kExitOk;
}

int run_classify(const RunConfig& config, const std::string& fingerprint) {
  if (config.manifest.empty() || config.unknown.empty()) {
    throw Error(ErrorKind::InvalidArgument,
                "classify needs a labeled --manifest and an --unknown pattern");
  }
  const std::vector<CorpusEntry> corpus = load_corpus(config);
  const Eigen::MatrixXd h = read_h_csv(config.unknown);
  const std::vector<double> unknown(h.row(0).begin(), h.row(0).end());
  const ClassificationResult result =
      classify_domain(corpus, unknown, !config.classify_plain);

  nlohmann::json body = config_block(config, fingerprint);
  body["unknown"] = pattern_label(config.unknown);
  body["predicted_category"] = result.predicted_category;
  nlohmann::json neighbors = nlohmann::json::array();
  for (const RankedNeighbor& n : result.neighbors) {
    neighbors.push_back(
        {{"name", n.name}, {"category", n.category}, {"distance", n.distance}});
  }
  body["neighbors"] = std::move(neighbors);
  write_json_artifact(config, "classification.json", body);
  return kExitOk;
}

int run_synth(const RunConfig& config, const std::string& fingerprint) {
  const ShapeFamily shape = shape_from_name(config.shape);
  const PlantedInstance instance = generate_planted(
      config.synth_nodes, config.synth_snapshots, config.synth_k, shape, config.noise,
      config.seed);

  const auto n = static_cast<std::size_t>(instance.mstar.rows());
  MatrixBundle bundle;
  bundle.values = instance.mstar;
  bundle.node_ids.resize(n);
  for (std::size_t i = 0; i < n; ++i) bundle.node_ids[i] = static_cast<NodeId>(i);
  bundle.t0.assign(n, 1);
  bundle.n_i.assign(n, static_cast<std::int64_t>(n));
  write_matrix_csv(out_path(config, "mstar.csv"), bundle, fingerprint);
  write_matrix_binary(out_path(config, "mstar.bin"), instance.mstar);

  FactorPair planted;
  planted.w = instance.w0;
  planted.h = instance.h0;
  planted.k = config.synth_k;
  write_h_csv(out_path(config, "h0.csv"), planted, fingerprint);

  std::string w_csv = "# config_fingerprint=" + fingerprint + "\nnode";
  for (int r = 0; r < config.synth_k; ++r) w_csv += ",role_" + std::to_string(r + 1);
  w_csv += "\n";
  for (Eigen::Index i = 0; i < instance.w0.rows(); ++i) {
    w_csv += std::to_string(i);
    for (Eigen::Index r = 0; r < instance.w0.cols(); ++r) {
      w_csv += "," + format_double(instance.w0(i, r));
    }
    w_csv += "\n";
  }
  write_text_file(out_path(config, "w0.csv"), w_csv);

  nlohmann::json report = config_block(config, fingerprint);
  report["shape"] = shape_name(shape);
  report["noise"] = instance.noise_level;
  report["nodes"] = instance.mstar.rows();
  report["snapshots"] = instance.mstar.cols();
  report["k"] = config.synth_k;
  report["seed"] = instance.seed;
  report["mean"] = instance.mstar.mean();
  if (config.synth_k == 1) {
    const Rank1Oracle oracle = svd_rank1_oracle(instance.mstar);
    const Eigen::RowVectorXd h0 = instance.h0.row(0);
    report["oracle"] = {
        {"sigma", oracle.sigma},
        {"residual", oracle.residual},
        {"cosine_vs_planted",
         oracle.h.dot(h0) / (oracle.h.norm() * h0.norm())},
    };
  }
  write_json_artifact(config, "synth_report.json", report);

  if (config.plot) {
    plot::emit_plot(h_series(instance.h0, "role_"), "planted patterns",
                    out_path(config, "h0.svg"));
  }
  return kExitOk;
}

}  // namespace

int run_pipeline(RunConfig config) {
  try {
    if (config.out_dir.empty()) {
      const char* env = std::getenv("TEMPINF_OUT_DIR");
      config.out_dir = (env != nullptr && *env != '\0') ? env : "out";
    }
    if (config.network_name.empty()) {
      config.network_name =
          config.input.empty() ? config.command : path_stem(config.input);
    }
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) {
      throw Error(ErrorKind::Io, "cannot create output directory " + config.out_dir);
    }
    const std::string fingerprint = config_fingerprint(config);

    if (config.command == "extract") return run_extract(config, fingerprint);
    if (config.command == "validate") return run_validate(config, fingerprint);
    if (config.command == "compare") return run_compare(config, fingerprint);
    if (config.command == "classify") return run_classify(config, fingerprint);
    if (config.command == "synth") return run_synth(config, fingerprint);
    std::cerr << "error: unknown command '" << config.command << "'\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error (" << error_kind_name(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace tempinf
