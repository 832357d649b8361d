#include "tempinf/influence.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stack>

namespace tempinf {

InfluenceMetric metric_from_name(std::string_view name) {
  if (name == "degree") return {MetricKind::Degree};
  if (name == "weighted-degree") return {MetricKind::WeightedDegree};
  if (name == "closeness") return {MetricKind::Closeness};
  if (name == "betweenness") return {MetricKind::Betweenness};
  throw Error(ErrorKind::Unsupported, "unsupported influence metric: " + std::string(name));
}

std::string metric_name(const InfluenceMetric& metric) {
  switch (metric.kind) {
    case MetricKind::Degree: return "degree";
    case MetricKind::WeightedDegree: return "weighted-degree";
    case MetricKind::Closeness: return "closeness";
    case MetricKind::Betweenness: return "betweenness";
  }
  return "degree";
}

namespace {

// Row indexing in first-occurrence order, shared by all metric paths.
struct NodeTable {
  std::vector<NodeId> ids;
  std::unordered_map<NodeId, Eigen::Index> index;

  Eigen::Index intern(NodeId id) {
    auto [it, inserted] = index.try_emplace(id, static_cast<Eigen::Index>(ids.size()));
    if (inserted) ids.push_back(id);
    return it->second;
  }
};

NodeTable build_node_table(const TemporalEdgeList& edges) {
  NodeTable table;
  table.index.reserve(edges.edges.size() * 2);
  for (const auto& e : edges.edges) {
    table.intern(e.source);
    table.intern(e.target);
  }
  return table;
}

// Cumulative simple graph (parallel edges collapsed) for path metrics.
class SimpleGraph {
 public:
  explicit SimpleGraph(std::size_t n) : adjacency_(n) {}

  void add_edge(Eigen::Index u, Eigen::Index v) {
    if (u == v) return;
    if (adjacency_[u].insert(v).second) adjacency_[v].insert(u);
  }

  const std::set<Eigen::Index>& neighbors(Eigen::Index u) const { return adjacency_[u]; }
  std::size_t size() const { return adjacency_.size(); }

 private:
  std::vector<std::set<Eigen::Index>> adjacency_;
};

// Harmonic closeness: sum over reachable j != i of 1/dist(i, j). Monotone
// non-decreasing as edges accumulate, and well defined on disconnected
// graphs.
void harmonic_closeness(const SimpleGraph& graph, std::vector<double>& out) {
  const std::size_t n = graph.size();
  out.assign(n, 0.0);
  std::vector<int> dist(n);
  std::deque<Eigen::Index> queue;
  for (std::size_t s = 0; s < n; ++s) {
    if (graph.neighbors(static_cast<Eigen::Index>(s)).empty()) continue;
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    queue.clear();
    queue.push_back(static_cast<Eigen::Index>(s));
    double total = 0.0;
    while (!queue.empty()) {
      const Eigen::Index u = queue.front();
      queue.pop_front();
      for (Eigen::Index v : graph.neighbors(u)) {
        if (dist[v] >= 0) continue;
        dist[v] = dist[u] + 1;
        total += 1.0 / dist[v];
        queue.push_back(v);
      }
    }
    out[s] = total;
  }
}

// Brandes shortest-path betweenness (unweighted, undirected).
void betweenness(const SimpleGraph& graph, std::vector<double>& out) {
  const std::size_t n = graph.size();
  out.assign(n, 0.0);
  std::vector<double> sigma(n), delta(n);
  std::vector<int> dist(n);
  std::vector<std::vector<Eigen::Index>> preds(n);
  std::vector<Eigen::Index> order;
  std::deque<Eigen::Index> queue;

  for (std::size_t s = 0; s < n; ++s) {
    if (graph.neighbors(static_cast<Eigen::Index>(s)).empty()) continue;
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    for (auto& p : preds) p.clear();
    order.clear();
    queue.clear();

    sigma[s] = 1.0;
    dist[s] = 0;
    queue.push_back(static_cast<Eigen::Index>(s));
    while (!queue.empty()) {
      const Eigen::Index u = queue.front();
      queue.pop_front();
      order.push_back(u);
      for (Eigen::Index v : graph.neighbors(u)) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
        if (dist[v] == dist[u] + 1) {
          sigma[v] += sigma[u];
          preds[v].push_back(u);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const Eigen::Index w = *it;
      for (Eigen::Index u : preds[w]) {
        delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w]);
      }
      if (static_cast<std::size_t>(w) != s) out[w] += delta[w];
    }
  }
  // Each undirected pair was counted from both endpoints.
  for (double& v : out) v *= 0.5;
}

}  // namespace

InfluenceMatrix compute_influence_matrix(const TemporalEdgeList& edges,
                                         const SnapshotPlan& plan,
                                         const InfluenceMetric& metric) {
  if (edges.edges.size() != plan.total_edges()) {
    throw Error(ErrorKind::InvalidArgument,
                "snapshot plan does not cover the edge list");
  }

  NodeTable table = build_node_table(edges);
  const Eigen::Index n = static_cast<Eigen::Index>(table.ids.size());
  const int snapshots = plan.snapshot_count;

  InfluenceMatrix m;
  m.values = Eigen::MatrixXd::Zero(n, snapshots);
  m.node_ids = std::move(table.ids);
  m.node_index = std::move(table.index);
  m.t0.assign(n, 0);
  m.n_i.assign(n, 0);
  m.metric = metric;

  const bool path_metric = metric.kind == MetricKind::Closeness ||
                           metric.kind == MetricKind::Betweenness;

  std::vector<std::int64_t> degree(n, 0);
  std::vector<double> score(n, 0.0), previous(n, 0.0);
  SimpleGraph graph(static_cast<std::size_t>(n));
  std::vector<Eigen::Index> touched;
  std::int64_t nodes_seen = 0;

  for (int t = 1; t <= snapshots; ++t) {
    touched.clear();
    for (std::size_t e = plan.begin_of(t); e < plan.end_of(t); ++e) {
      const TemporalEdge& edge = edges.edges[e];
      const Eigen::Index u = m.node_index.at(edge.source);
      const Eigen::Index v = m.node_index.at(edge.target);
      for (Eigen::Index w : {u, v}) {
        if (m.t0[static_cast<std::size_t>(w)] == 0) {
          m.t0[static_cast<std::size_t>(w)] = t;
          ++nodes_seen;
        }
      }
      if (u == v) {
        degree[static_cast<std::size_t>(u)] += 2;  // retained self-loop
        touched.push_back(u);
      } else {
        degree[static_cast<std::size_t>(u)] += 1;
        degree[static_cast<std::size_t>(v)] += 1;
        touched.push_back(u);
        touched.push_back(v);
        if (path_metric) graph.add_edge(u, v);
      }
    }
    // n_i is fixed once the snapshot introducing the node has been applied.
    for (Eigen::Index w : touched) {
      if (m.t0[static_cast<std::size_t>(w)] == t && m.n_i[static_cast<std::size_t>(w)] == 0) {
        m.n_i[static_cast<std::size_t>(w)] = nodes_seen;
      }
    }

    switch (metric.kind) {
      case MetricKind::Degree:
      case MetricKind::WeightedDegree:
        // Increment = degree delta; only touched rows changed. The division
        // is the single rounding between the integer counts and the matrix.
        for (Eigen::Index w : touched) {
          const auto wi = static_cast<std::size_t>(w);
          score[wi] = static_cast<double>(degree[wi]);
        }
        for (Eigen::Index w : touched) {
          const auto wi = static_cast<std::size_t>(w);
          if (score[wi] != previous[wi]) {
            m.values(w, t - 1) =
                (score[wi] - previous[wi]) / static_cast<double>(m.n_i[wi]);
            previous[wi] = score[wi];
          }
        }
        break;
      case MetricKind::Closeness:
      case MetricKind::Betweenness: {
        if (metric.kind == MetricKind::Closeness) {
          harmonic_closeness(graph, score);
        } else {
          betweenness(graph, score);
        }
        for (Eigen::Index i = 0; i < n; ++i) {
          const auto ii = static_cast<std::size_t>(i);
          if (m.t0[ii] == 0 || m.t0[ii] > t) continue;
          const double increment = score[ii] - previous[ii];
          m.values(i, t - 1) =
              std::max(increment, 0.0) / static_cast<double>(m.n_i[ii]);
          previous[ii] = score[ii];
        }
        break;
      }
    }
  }
  return m;
}

AlignedInfluenceMatrix align_matrix(const InfluenceMatrix& m) {
  const Eigen::Index n = m.values.rows();
  const Eigen::Index t_max = m.values.cols();

  AlignedInfluenceMatrix aligned;
  aligned.values = Eigen::MatrixXd::Zero(n, t_max);
  aligned.node_ids = m.node_ids;
  aligned.t0 = m.t0;
  aligned.n_i = m.n_i;
  aligned.metric = m.metric;

  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index shift = m.t0[static_cast<std::size_t>(i)] - 1;
    const Eigen::Index span = t_max - shift;
    aligned.values.row(i).head(span) = m.values.row(i).tail(span);
  }
  return aligned;
}

}  // namespace tempinf
