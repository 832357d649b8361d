#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <vector>

#include "tempinf/error.hpp"

namespace tempinf {

using NodeId = std::int64_t;
using Timestamp = std::int64_t;

/// One timestamped edge occurrence. Timestamps are unit-agnostic; only their
/// ordering matters downstream.
struct TemporalEdge {
  NodeId source = 0;
  NodeId target = 0;
  Timestamp timestamp = 0;
};

/// Edge occurrences sorted non-decreasing by timestamp (stable among ties),
/// together with drop counters from parsing/preprocessing.
struct TemporalEdgeList {
  std::vector<TemporalEdge> edges;
  std::size_t node_count = 0;
  std::size_t dropped_malformed = 0;
  std::size_t dropped_self_loops = 0;
};

/// Column positions (0-based) of source, target, timestamp in each line.
struct ParseFormat {
  int source_column = 0;
  int target_column = 1;
  int timestamp_column = 2;
};

struct PreprocessConfig {
  bool drop_self_loops = true;
};

/// Equal-edge-count partition of the sorted edge stream. boundaries[s] is the
/// cumulative edge count owned by snapshots 1..s+1; the last entry equals the
/// total edge count, and per-snapshot counts differ by at most one (the
/// earliest snapshots receive the remainder).
struct SnapshotPlan {
  std::vector<std::size_t> boundaries;
  int snapshot_count = 0;

  std::size_t total_edges() const {
    return boundaries.empty() ? 0 : boundaries.back();
  }
  /// Half-open edge index range [first, last) of 1-based snapshot t.
  std::size_t begin_of(int t) const {
    return t <= 1 ? 0 : boundaries[static_cast<std::size_t>(t) - 2];
  }
  std::size_t end_of(int t) const {
    return boundaries[static_cast<std::size_t>(t) - 1];
  }
};

/// Parse whitespace-separated "src dst timestamp" lines. Lines whose first
/// non-blank character is '#' are comments; every other line either yields an
/// edge or is counted in dropped_malformed (missing/unparseable fields,
/// including blank lines). Result is sorted by timestamp, stable among ties.
///
/// Throws EmptyNetwork when no line parses, Io when the stream is bad.
TemporalEdgeList parse_edge_list(std::istream& input, const ParseFormat& format = {});

/// Discard direction (each occurrence becomes one undirected edge event,
/// endpoints stored in normalized order), keep parallel occurrences as
/// distinct events, and drop self-loops when configured. Idempotent.
TemporalEdgeList preprocess(TemporalEdgeList list, const PreprocessConfig& config = {});

/// Split E sorted edges into `snapshot_count` contiguous snapshots whose sizes
/// differ by at most one; E mod T earliest snapshots take the extra edge.
/// Ties in timestamp are split purely by sorted position.
///
/// Throws SnapshotCount when snapshot_count exceeds the edge count,
/// InvalidArgument when snapshot_count < 1.
SnapshotPlan plan_snapshots(const TemporalEdgeList& list, int snapshot_count);

}  // namespace tempinf
