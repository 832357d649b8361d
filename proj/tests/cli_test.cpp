#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "tempinf/io.hpp"

using namespace tempinf;
namespace fs = std::filesystem;

namespace {

const char* cli_path() { return std::getenv("TEMPINF_CLI"); }

int run_cli(const std::string& args, const std::string& log = "/dev/null") {
  const std::string command = std::string(cli_path()) + " " + args + " >" + log + " 2>&1";
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::path("scratch_cli") / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help and usage behavior") {
  if (cli_path() == nullptr) {
    MESSAGE("TEMPINF_CLI not set; skipping binary tests");
    return;
  }
  const fs::path dir = fresh_dir("help");
  const std::string log = (dir / "help.txt").string();
  CHECK(run_cli("--help", log) == 0);
  const std::string help = read_text_file(log);
  CHECK(help.find("Exit codes") != std::string::npos);
  CHECK(help.find("extract") != std::string::npos);
  CHECK(help.find("validate") != std::string::npos);

  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("extract") == 2);  // missing required input
  CHECK(run_cli("extract --bogus-flag x.txt") == 2);
}

TEST_CASE("error paths surface the mapped exit codes") {
  if (cli_path() == nullptr) {
    MESSAGE("TEMPINF_CLI not set; skipping binary tests");
    return;
  }
  const fs::path dir = fresh_dir("errors");
  CHECK(run_cli("extract " + (dir / "missing.txt").string() + " --out-dir " +
                (dir / "out").string()) == 3);

  const std::string tiny = (dir / "tiny.txt").string();
  write_text_file(tiny, "1 2 1\n2 3 2\n3 4 3\n");
  CHECK(run_cli("extract " + tiny + " --snapshots 400 --out-dir " +
                (dir / "out2").string()) == 5);
  CHECK(run_cli("extract " + tiny + " --snapshots 3 --metric clout --out-dir " +
                (dir / "out3").string()) == 8);
}

TEST_CASE("synth to extract round trip through the binary") {
  if (cli_path() == nullptr) {
    MESSAGE("TEMPINF_CLI not set; skipping binary tests");
    return;
  }
  const fs::path dir = fresh_dir("roundtrip");
  const std::string synth_out = (dir / "synth").string();
  REQUIRE(run_cli("synth --n 40 --t 30 --k 1 --seed 7 --out-dir " + synth_out) == 0);
  REQUIRE(fs::exists(fs::path(synth_out) / "mstar.bin"));

  const std::string extract_out = (dir / "extract").string();
  REQUIRE(run_cli("extract --input " + synth_out + "/mstar.bin --matrix --out-dir " +
                  extract_out) == 0);
  const Eigen::MatrixXd h = read_h_csv(extract_out + "/h.csv");
  const Eigen::MatrixXd h0 = read_h_csv(synth_out + "/h0.csv");
  const double cosine =
      h.row(0).dot(h0.row(0)) / (h.row(0).norm() * h0.row(0).norm());
  CHECK(cosine >= 1.0 - 1e-8);
}

TEST_CASE("extract emits the requested snapshot count from an edge list") {
  if (cli_path() == nullptr) {
    MESSAGE("TEMPINF_CLI not set; skipping binary tests");
    return;
  }
  const fs::path dir = fresh_dir("snapshots");
  std::string edges;
  for (int i = 0; i < 500; ++i) {
    edges += std::to_string(i % 23) + " " + std::to_string((i * 7 + 1) % 23) + " " +
             std::to_string(i) + "\n";
  }
  const std::string path = (dir / "edges.txt").string();
  write_text_file(path, edges);
  const std::string out = (dir / "out").string();
  REQUIRE(run_cli("extract " + path + " --snapshots 400 --out-dir " + out) == 0);
  const Eigen::MatrixXd h = read_h_csv(out + "/h.csv");
  CHECK(h.cols() == 400);
}

TEST_CASE("identical invocations produce identical bytes") {
  if (cli_path() == nullptr) {
    MESSAGE("TEMPINF_CLI not set; skipping binary tests");
    return;
  }
  // Same relative --out-dir from two working directories, so the embedded
  // config (and therefore its fingerprint) is identical and every artifact
  // must match byte for byte.
  const fs::path dir = fresh_dir("determinism");
  for (const char* name : {"a", "b"}) {
    const fs::path wd = dir / name;
    fs::create_directories(wd);
    const std::string command =
        "cd " + wd.string() + " && " + std::string(cli_path()) +
        " synth --nodes 30 --snapshots 25 --seed 11 --noise 0.05 --out-dir run"
        " >/dev/null 2>&1";
    REQUIRE(std::system(command.c_str()) == 0);
  }
  for (const char* name :
       {"mstar.csv", "mstar.bin", "h0.csv", "w0.csv", "synth_report.json"}) {
    CHECK(read_text_file((dir / "a" / "run" / name).string()) ==
          read_text_file((dir / "b" / "run" / name).string()));
  }
}

}  // TEST_SUITE
