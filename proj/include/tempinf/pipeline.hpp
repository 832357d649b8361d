#pragma once

#include <string>

#include "tempinf/error.hpp"
#include "tempinf/run_config.hpp"

namespace tempinf {

/// Process exit codes, one per error kind so scripts can branch on failures.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // anything outside the mapped kinds
  kExitUsage = 2,
  kExitIo = 3,
  kExitEmptyNetwork = 4,
  kExitSnapshotCount = 5,
  kExitDegenerateInput = 6,
  kExitDegenerateFactor = 7,
  kExitUnsupported = 8,
  kExitInvalidArgument = 9,
};

int exit_code_for(ErrorKind kind);

/// Filename without directories, a trailing ".gz", or the final extension:
/// "data/email.txt.gz" -> "email".
std::string path_stem(const std::string& path);

/// Run one subcommand end to end, writing every artifact under the resolved
/// output directory (--out-dir flag beats TEMPINF_OUT_DIR beats "out").
/// Reports errors on stderr and returns the mapped exit code; never throws.
int run_pipeline(RunConfig config);

}  // namespace tempinf
