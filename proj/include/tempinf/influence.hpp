#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tempinf/edge_list.hpp"

namespace tempinf {

enum class MetricKind {
  Degree,          // incident edge events, parallel multiplicity counted
  WeightedDegree,  // sum of event weights (unit weights today, so == degree)
  Closeness,       // harmonic closeness on the cumulative simple graph
  Betweenness,     // Brandes betweenness on the cumulative simple graph
};

/// Per-node score delta(i, t), evaluated on the cumulative graph after
/// snapshot t. All kinds are nonnegative and zero before a node's first
/// occurrence. Closeness is the harmonic form (sum of inverse distances),
/// which never decreases as edges accumulate; betweenness can decrease, so
/// its negative increments are clamped to zero to keep the matrix
/// nonnegative. Path metrics collapse parallel edges.
struct InfluenceMetric {
  MetricKind kind = MetricKind::Degree;
};

/// Parses "degree", "weighted-degree", "closeness", "betweenness".
/// Throws Unsupported for anything else.
InfluenceMetric metric_from_name(std::string_view name);
std::string metric_name(const InfluenceMetric& metric);

/// Row-per-participant matrix of normalized influence increments:
/// values(i, t-1) = (delta(i, t) - delta(i, t-1)) / n_i, t in 1..T, with the
/// score at t = 0 defined as zero. n_i is the number of distinct nodes in the
/// cumulative graph once snapshot t0(i) — the snapshot of i's first incident
/// event — has been applied, so a node counts itself.
struct InfluenceMatrix {
  Eigen::MatrixXd values;                           // n x T
  std::vector<NodeId> node_ids;                     // row -> external id
  std::unordered_map<NodeId, Eigen::Index> node_index;
  std::vector<int> t0;                              // 1-based first-occurrence snapshot
  std::vector<std::int64_t> n_i;
  InfluenceMetric metric;
};

/// The same rows shifted left so each participant's first-occurrence
/// increment sits in column 1, zero-padded on the right. Carries the source
/// matrix metadata as provenance.
struct AlignedInfluenceMatrix {
  Eigen::MatrixXd values;                           // n x T
  std::vector<NodeId> node_ids;
  std::vector<int> t0;
  std::vector<std::int64_t> n_i;
  InfluenceMetric metric;
};

/// Fold the snapshot series into the influence-increment matrix. Row order is
/// first-occurrence order of the participants. For the degree metric the
/// per-snapshot column sums satisfy sum_i n_i * values(i, t) = 2 * (edge
/// events in snapshot t) exactly up to the single rounding of each division.
InfluenceMatrix compute_influence_matrix(const TemporalEdgeList& edges,
                                         const SnapshotPlan& plan,
                                         const InfluenceMetric& metric = {});

/// Shift row i left by t0(i) - 1. Shifting back reproduces the source row.
AlignedInfluenceMatrix align_matrix(const InfluenceMatrix& m);

}  // namespace tempinf
