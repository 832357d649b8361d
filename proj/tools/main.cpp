#include <CLI11.hpp>

#include "tempinf/pipeline.hpp"

namespace {

constexpr const char* kFooter =
    "Exit codes:\n"
    "  0  success                        5  snapshot count exceeds edge count\n"
    "  1  unexpected error               6  degenerate (all-zero) input matrix\n"
    "  2  usage error                    7  degenerate factor\n"
    "  3  I/O failure                    8  unsupported metric/measure/init name\n"
    "  4  empty network                  9  invalid argument\n";

}  // namespace

int main(int argc, char** argv) {
  tempinf::RunConfig config;
  bool keep_self_loops = false;

  CLI::App app{
      "Shared temporal influence patterns: extract them from timestamped edge "
      "lists, check their stability under participant subsampling, and compare "
      "networks by them."};
  app.require_subcommand(1);
  app.set_version_flag("--version", "tempinf 1.0.0");
  app.footer(kFooter);

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out-dir", config.out_dir,
                    "Output directory (default: $TEMPINF_OUT_DIR, then ./out)");
    sub->add_option("--threads", config.threads, "Worker threads for parallel stages")
        ->check(CLI::PositiveNumber);
  };
  const auto add_ingest = [&](CLI::App* sub) {
    sub->add_option("input,--input", config.input,
                    "Timestamped edge list (plain or .gz), or a matrix dump with "
                    "--matrix")
        ->required();
    sub->add_flag("--matrix", config.input_is_matrix,
                  "Treat the input as an aligned matrix dump (.csv or .bin) instead "
                  "of an edge list");
    sub->add_option("--snapshots,-T", config.snapshot_count,
                    "Number of equal-edge-count snapshots")
        ->check(CLI::PositiveNumber);
    sub->add_option("--metric", config.metric,
                    "Influence score: degree | weighted-degree | closeness | "
                    "betweenness");
    sub->add_flag("--keep-self-loops", keep_self_loops,
                  "Keep self-loop events instead of dropping them");
    sub->add_option("--source-column", config.source_column,
                    "0-based column of the source node");
    sub->add_option("--target-column", config.target_column,
                    "0-based column of the target node");
    sub->add_option("--timestamp-column", config.timestamp_column,
                    "0-based column of the timestamp");
    sub->add_option("--name", config.network_name,
                    "Network label in reports (default: input file stem)");
  };
  const auto add_factor = [&](CLI::App* sub) {
    sub->add_option("--k", config.k, "Number of shared patterns (roles)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-iterations", config.max_iterations,
                    "Iteration cap for rank > 1 factorization")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tolerance", config.tolerance,
                    "Relative objective-change stopping tolerance for rank > 1");
    sub->add_option("--init", config.init,
                    "Rank > 1 initialization: random | nndsvd");
    sub->add_option("--seed", config.seed, "Random seed");
  };

  CLI::App* extract = app.add_subcommand(
      "extract", "Build the aligned influence matrix and factor out the shared "
                 "temporal pattern");
  add_ingest(extract);
  add_factor(extract);
  add_common(extract);
  extract->add_flag("--export-matrix", config.export_matrix,
                    "Also write the aligned matrix (mstar.csv and mstar.bin)");
  extract->add_flag("--plot", config.plot, "Also write h.svg");

  CLI::App* validate = app.add_subcommand(
      "validate", "Check pattern stability under repeated participant subsampling");
  add_ingest(validate);
  add_factor(validate);
  add_common(validate);
  validate->add_option("--rho", config.rhos,
                       "Subsampling intensities; each rho runs rho trials keeping a "
                       "1-1/rho fraction of participants");
  validate->add_option("--cosine-min", config.cosine_min,
                       "Pass level for the mean cosine similarity");
  validate->add_option("--l1-max", config.l1_max,
                       "Pass level for the mean normalized L1 distance");
  validate->add_option("--l2-max", config.l2_max,
                       "Pass level for the mean normalized L2 distance");

  CLI::App* compare = app.add_subcommand(
      "compare", "Pairwise similarity of extracted patterns across networks");
  compare->add_option("patterns", config.corpus,
                      "Pattern CSV files (labels from file stems)");
  compare->add_option("--manifest", config.manifest,
                      "Labeled corpus JSON: {\"entries\": [{\"name\", \"category\", "
                      "\"path\"}]}");
  compare->add_option("--measure", config.measures,
                      "Similarity measures: dtw | dtw-averaged | cosine | euclidean "
                      "(repeatable)");
  compare->add_flag("--plot", config.plot, "Also write corpus.svg");
  add_common(compare);

  CLI::App* classify = app.add_subcommand(
      "classify", "Predict a network's domain by its nearest labeled pattern");
  classify->add_option("--manifest", config.manifest,
                       "Labeled corpus JSON with category fields")
      ->required();
  classify->add_option("--unknown", config.unknown, "Pattern CSV to classify")
      ->required();
  classify->add_flag("--plain", config.classify_plain,
                     "Rank by raw warp distance instead of the path-averaged form");
  add_common(classify);

  CLI::App* synth = app.add_subcommand(
      "synth", "Generate a planted low-rank instance with known ground truth");
  synth->add_option("--nodes,--n", config.synth_nodes, "Participant count")
      ->check(CLI::PositiveNumber);
  synth->add_option("--snapshots,--t", config.synth_snapshots, "Snapshot count")
      ->check(CLI::PositiveNumber);
  synth->add_option("--k", config.synth_k, "Planted rank")->check(CLI::PositiveNumber);
  synth->add_option("--shape", config.shape,
                    "Pattern family: decay | plateau | bimodal");
  synth->add_option("--noise", config.noise,
                    "Uniform noise amplitude relative to the matrix mean");
  synth->add_option("--seed", config.seed, "Random seed");
  synth->add_flag("--plot", config.plot, "Also write h0.svg");
  add_common(synth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return tempinf::kExitUsage;
  }

  config.drop_self_loops = !keep_self_loops;
  config.command = app.get_subcommands().front()->get_name();
  return tempinf::run_pipeline(config);
}
