#include "tempinf/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>

namespace tempinf {

namespace {

bool is_comment(std::string_view line) {
  for (char c : line) {
    if (c == ' ' || c == '\t' || c == '\r') continue;
    return c == '#';
  }
  return false;
}

// Splits on runs of whitespace; returns false if the wanted column is absent
// or not an integer.
bool parse_column(std::string_view line, int wanted, std::int64_t& out) {
  int col = 0;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (col == wanted) {
      const char* first = line.data() + start;
      const char* last = line.data() + i;
      auto [ptr, ec] = std::from_chars(first, last, out);
      return ec == std::errc() && ptr == last;
    }
    ++col;
  }
  return false;
}

std::size_t count_distinct_nodes(const std::vector<TemporalEdge>& edges) {
  std::unordered_set<NodeId> seen;
  seen.reserve(edges.size() * 2);
  for (const auto& e : edges) {
    seen.insert(e.source);
    seen.insert(e.target);
  }
  return seen.size();
}

}  // namespace

TemporalEdgeList parse_edge_list(std::istream& input, const ParseFormat& format) {
  if (!input.good()) {
    throw Error(ErrorKind::Io, "edge list stream is not readable");
  }

  TemporalEdgeList list;
  std::string line;
  while (std::getline(input, line)) {
    if (is_comment(line)) continue;
    TemporalEdge edge;
    if (parse_column(line, format.source_column, edge.source) &&
        parse_column(line, format.target_column, edge.target) &&
        parse_column(line, format.timestamp_column, edge.timestamp)) {
      list.edges.push_back(edge);
    } else {
      ++list.dropped_malformed;
    }
  }
  if (input.bad()) {
    throw Error(ErrorKind::Io, "I/O failure while reading edge list");
  }
  if (list.edges.empty()) {
    throw Error(ErrorKind::EmptyNetwork, "no parseable edges in input");
  }

  std::stable_sort(list.edges.begin(), list.edges.end(),
                   [](const TemporalEdge& a, const TemporalEdge& b) {
                     return a.timestamp < b.timestamp;
                   });
  list.node_count = count_distinct_nodes(list.edges);
  return list;
}

TemporalEdgeList preprocess(TemporalEdgeList list, const PreprocessConfig& config) {
  std::vector<TemporalEdge> kept;
  kept.reserve(list.edges.size());
  for (TemporalEdge e : list.edges) {
    if (e.source == e.target && config.drop_self_loops) {
      ++list.dropped_self_loops;
      continue;
    }
    if (e.source > e.target) std::swap(e.source, e.target);
    kept.push_back(e);
  }
  list.edges = std::move(kept);

  std::stable_sort(list.edges.begin(), list.edges.end(),
                   [](const TemporalEdge& a, const TemporalEdge& b) {
                     return a.timestamp < b.timestamp;
                   });
  list.node_count = count_distinct_nodes(list.edges);
  return list;
}

SnapshotPlan plan_snapshots(const TemporalEdgeList& list, int snapshot_count) {
  const std::size_t total = list.edges.size();
  if (snapshot_count < 1) {
    throw Error(ErrorKind::InvalidArgument, "snapshot count must be at least 1");
  }
  if (total == 0) {
    throw Error(ErrorKind::EmptyNetwork, "cannot plan snapshots of an empty edge list");
  }
  if (static_cast<std::size_t>(snapshot_count) > total) {
    throw Error(ErrorKind::SnapshotCount,
                "snapshot count " + std::to_string(snapshot_count) +
                    " exceeds edge count " + std::to_string(total));
  }

  const std::size_t t = static_cast<std::size_t>(snapshot_count);
  const std::size_t base = total / t;
  const std::size_t remainder = total % t;

  SnapshotPlan plan;
  plan.snapshot_count = snapshot_count;
  plan.boundaries.reserve(t);
  std::size_t cumulative = 0;
  for (std::size_t s = 0; s < t; ++s) {
    cumulative += base + (s < remainder ? 1 : 0);
    plan.boundaries.push_back(cumulative);
  }
  return plan;
}

}  // namespace tempinf
