#pragma once

#include <stdexcept>
#include <string>

namespace tempinf {

enum class ErrorKind {
  Io,
  EmptyNetwork,
  SnapshotCount,
  InvalidArgument,
  DegenerateInput,
  DegenerateFactor,
  Unsupported,
};

/// Domain error carrying a machine-readable kind next to the message.
/// The CLI maps each kind to a distinct exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io: return "io";
    case ErrorKind::EmptyNetwork: return "empty-network";
    case ErrorKind::SnapshotCount: return "snapshot-count";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::DegenerateInput: return "degenerate-input";
    case ErrorKind::DegenerateFactor: return "degenerate-factor";
    case ErrorKind::Unsupported: return "unsupported";
  }
  return "unknown";
}

}  // namespace tempinf
