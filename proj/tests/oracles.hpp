#pragma once

// Brute-force reference implementations the tests cross-check the library
// against. Everything here is deliberately naive and shares no code with the
// implementations under test.

#include <Eigen/Core>
#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "tempinf/edge_list.hpp"

namespace oracle {

/// Cumulative degree recount from scratch after every snapshot, plus the
/// first-occurrence snapshot and the node count at that moment.
struct DegreeTable {
  std::vector<tempinf::NodeId> nodes;  // first-occurrence order
  std::map<tempinf::NodeId, std::size_t> index;
  std::vector<std::vector<std::int64_t>> degree;  // [node][snapshot 0..T], degree[.][0] = 0
  std::vector<int> t0;                            // 1-based
  std::vector<std::int64_t> n_i;
};

inline DegreeTable recount_degrees(const tempinf::TemporalEdgeList& list,
                                   const tempinf::SnapshotPlan& plan) {
  DegreeTable table;
  const int t_max = plan.snapshot_count;
  for (const tempinf::TemporalEdge& e : list.edges) {
    for (tempinf::NodeId v : {e.source, e.target}) {
      if (table.index.emplace(v, table.nodes.size()).second) {
        table.nodes.push_back(v);
      }
    }
  }
  const std::size_t n = table.nodes.size();
  table.degree.assign(n, std::vector<std::int64_t>(static_cast<std::size_t>(t_max) + 1, 0));
  table.t0.assign(n, 0);
  table.n_i.assign(n, 0);

  std::set<tempinf::NodeId> seen;
  for (int t = 1; t <= t_max; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      table.degree[i][static_cast<std::size_t>(t)] =
          table.degree[i][static_cast<std::size_t>(t) - 1];
    }
    for (std::size_t e = plan.begin_of(t); e < plan.end_of(t); ++e) {
      const tempinf::TemporalEdge& edge = list.edges[e];
      seen.insert(edge.source);
      seen.insert(edge.target);
      const std::size_t a = table.index.at(edge.source);
      const std::size_t b = table.index.at(edge.target);
      // A self-loop has a == b, so these two increments land on the same
      // slot and give it the conventional degree contribution of 2.
      table.degree[a][static_cast<std::size_t>(t)] += 1;
      table.degree[b][static_cast<std::size_t>(t)] += 1;
      for (std::size_t i : {a, b}) {
        if (table.t0[i] == 0) table.t0[i] = t;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (table.t0[i] == t) table.n_i[i] = static_cast<std::int64_t>(seen.size());
    }
  }
  return table;
}

/// All-pairs shortest paths by Floyd–Warshall on the simple undirected graph
/// of the first `edge_count` events; harmonic closeness per node.
inline std::map<tempinf::NodeId, double> harmonic_closeness_fw(
    const tempinf::TemporalEdgeList& list, std::size_t edge_count) {
  std::map<tempinf::NodeId, std::size_t> index;
  std::vector<tempinf::NodeId> nodes;
  for (std::size_t e = 0; e < edge_count; ++e) {
    for (tempinf::NodeId v : {list.edges[e].source, list.edges[e].target}) {
      if (index.emplace(v, nodes.size()).second) nodes.push_back(v);
    }
  }
  const std::size_t n = nodes.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) dist[i][i] = 0.0;
  for (std::size_t e = 0; e < edge_count; ++e) {
    if (list.edges[e].source == list.edges[e].target) continue;
    const std::size_t a = index.at(list.edges[e].source);
    const std::size_t b = index.at(list.edges[e].target);
    dist[a][b] = 1.0;
    dist[b][a] = 1.0;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
      }
    }
  }
  std::map<tempinf::NodeId, double> closeness;
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && dist[i][j] < kInf) sum += 1.0 / dist[i][j];
    }
    closeness[nodes[i]] = sum;
  }
  return closeness;
}

/// Exhaustive walk over every monotone warping path; returns the minimal
/// cumulative cost and the set of path lengths achieving it. Exponential —
/// keep sequences short.
struct DtwEnumeration {
  double distance = 0.0;
  std::set<std::size_t> optimal_lengths;
};

namespace detail {

inline void walk_paths(std::span<const double> a, std::span<const double> b,
                       std::size_t i, std::size_t j, double cost, std::size_t length,
                       DtwEnumeration& best) {
  cost += std::abs(a[i] - b[j]);
  if (i + 1 == a.size() && j + 1 == b.size()) {
    if (cost < best.distance) {
      best.distance = cost;
      best.optimal_lengths = {length};
    } else if (cost == best.distance) {
      best.optimal_lengths.insert(length);
    }
    return;
  }
  if (i + 1 < a.size() && j + 1 < b.size()) {
    walk_paths(a, b, i + 1, j + 1, cost, length + 1, best);
  }
  if (i + 1 < a.size()) walk_paths(a, b, i + 1, j, cost, length + 1, best);
  if (j + 1 < b.size()) walk_paths(a, b, i, j + 1, cost, length + 1, best);
}

}  // namespace detail

inline DtwEnumeration dtw_enumerate(std::span<const double> a, std::span<const double> b) {
  DtwEnumeration best;
  best.distance = std::numeric_limits<double>::infinity();
  detail::walk_paths(a, b, 0, 0, 0.0, 1, best);
  return best;
}

/// Random timestamped event stream over `node_count` labels; timestamps drawn
/// with repeats so tie handling gets exercised.
inline tempinf::TemporalEdgeList random_stream(std::mt19937_64& gen, int node_count,
                                               int events, bool allow_self_loops = false) {
  tempinf::TemporalEdgeList list;
  std::uniform_int_distribution<tempinf::NodeId> node(0, node_count - 1);
  std::uniform_int_distribution<tempinf::Timestamp> time(0, events / 2 + 1);
  for (int e = 0; e < events; ++e) {
    tempinf::TemporalEdge edge;
    edge.source = node(gen);
    edge.target = node(gen);
    if (!allow_self_loops) {
      while (edge.target == edge.source) edge.target = node(gen);
    }
    edge.timestamp = time(gen);
    list.edges.push_back(edge);
  }
  std::stable_sort(list.edges.begin(), list.edges.end(),
                   [](const tempinf::TemporalEdge& x, const tempinf::TemporalEdge& y) {
                     return x.timestamp < y.timestamp;
                   });
  return list;
}

}  // namespace oracle
