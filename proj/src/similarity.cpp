#include "tempinf/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tempinf/parallel.hpp"

namespace tempinf {

MinMaxResult minmax_normalize(std::span<const double> h) {
  if (h.empty()) {
    throw Error(ErrorKind::InvalidArgument, "cannot normalize an empty vector");
  }
  const auto [lo_it, hi_it] = std::minmax_element(h.begin(), h.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;

  MinMaxResult result;
  result.values.resize(h.size());
  if (range == 0.0) {
    result.degenerate = true;  // constant input, no range to stretch
    return result;
  }
  for (std::size_t i = 0; i < h.size(); ++i) {
    result.values[i] = (h[i] - lo) / range;
  }
  return result;
}

DtwResult dtw_distance(std::span<const double> a, std::span<const double> b) {
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  if (m == 0 || n == 0) {
    throw Error(ErrorKind::InvalidArgument, "DTW needs non-empty sequences");
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // (m+1) x (n+1) cumulative table with an infinite border row/column.
  std::vector<double> table((m + 1) * (n + 1), kInf);
  auto cell = [n](std::size_t i, std::size_t j) { return i * (n + 1) + j; };
  table[cell(0, 0)] = 0.0;

  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const double cost = std::abs(a[i - 1] - b[j - 1]);
      const double best = std::min({table[cell(i - 1, j - 1)],
                                    table[cell(i - 1, j)],
                                    table[cell(i, j - 1)]});
      table[cell(i, j)] = cost + best;
    }
  }

  // Path length via backtrace. min() above returned one of the predecessor
  // values bitwise, so exact equality identifies the optimal predecessors;
  // ties go diagonal, then down (advance i), then right (advance j).
  std::size_t steps = 1;
  std::size_t i = m, j = n;
  while (i > 1 || j > 1) {
    const double best = std::min({table[cell(i - 1, j - 1)],
                                  table[cell(i - 1, j)],
                                  table[cell(i, j - 1)]});
    if (table[cell(i - 1, j - 1)] == best) {
      --i;
      --j;
    } else if (table[cell(i - 1, j)] == best) {
      --i;
    } else {
      --j;
    }
    ++steps;
  }

  DtwResult result;
  result.distance = table[cell(m, n)];
  result.steps = steps;
  result.averaged = result.distance / static_cast<double>(steps);
  return result;
}

SimilarityMeasure measure_from_name(std::string_view name) {
  if (name == "dtw") return SimilarityMeasure::Dtw;
  if (name == "dtw-averaged") return SimilarityMeasure::DtwAveraged;
  if (name == "cosine") return SimilarityMeasure::Cosine;
  if (name == "euclidean") return SimilarityMeasure::Euclidean;
  throw Error(ErrorKind::Unsupported, "unknown similarity measure: " + std::string(name));
}

std::string measure_name(SimilarityMeasure measure) {
  switch (measure) {
    case SimilarityMeasure::Dtw: return "dtw";
    case SimilarityMeasure::DtwAveraged: return "dtw-averaged";
    case SimilarityMeasure::Cosine: return "cosine";
    case SimilarityMeasure::Euclidean: return "euclidean";
  }
  return "dtw";
}

namespace {

double cosine_of(std::span<const double> a, std::span<const double> b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) {
    throw Error(ErrorKind::DegenerateInput, "zero vector in cosine comparison");
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

double euclidean_of(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace

SimilarityMatrix pairwise_similarity(std::span<const CorpusEntry> corpus,
                                     SimilarityMeasure measure, int threads) {
  const std::size_t count = corpus.size();
  if (count < 2) {
    throw Error(ErrorKind::InvalidArgument, "pairwise comparison needs at least 2 entries");
  }
  const bool warped =
      measure == SimilarityMeasure::Dtw || measure == SimilarityMeasure::DtwAveraged;
  if (!warped) {
    for (const auto& entry : corpus) {
      if (entry.h.size() != corpus.front().h.size()) {
        throw Error(ErrorKind::InvalidArgument,
                    "cosine/euclidean need equal-length vectors");
      }
    }
  }

  std::vector<std::vector<double>> normalized;
  if (warped) {
    normalized.reserve(count);
    for (const auto& entry : corpus) {
      normalized.push_back(minmax_normalize(entry.h).values);
    }
  }

  SimilarityMatrix matrix;
  matrix.measure = measure;
  matrix.labels.reserve(count);
  for (const auto& entry : corpus) matrix.labels.push_back(entry.name);
  matrix.values.setZero(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(count));
  if (measure == SimilarityMeasure::Cosine) {
    matrix.values.diagonal().setOnes();
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(count * (count - 1) / 2);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) pairs.emplace_back(i, j);
  }

  parallel_for(pairs.size(), threads, [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    double value = 0.0;
    switch (measure) {
      case SimilarityMeasure::Dtw:
        value = dtw_distance(normalized[i], normalized[j]).distance;
        break;
      case SimilarityMeasure::DtwAveraged:
        value = dtw_distance(normalized[i], normalized[j]).averaged;
        break;
      case SimilarityMeasure::Cosine:
        value = cosine_of(corpus[i].h, corpus[j].h);
        break;
      case SimilarityMeasure::Euclidean:
        value = euclidean_of(corpus[i].h, corpus[j].h);
        break;
    }
    matrix.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
    matrix.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = value;
  });
  return matrix;
}

ClassificationResult classify_domain(std::span<const CorpusEntry> corpus,
                                     std::span<const double> unknown, bool averaged) {
  if (corpus.empty()) {
    throw Error(ErrorKind::InvalidArgument, "classification corpus is empty");
  }
  for (const auto& entry : corpus) {
    if (entry.category.empty()) {
      throw Error(ErrorKind::InvalidArgument,
                  "corpus entry '" + entry.name + "' has no category label");
    }
  }

  const MinMaxResult probe = minmax_normalize(unknown);

  ClassificationResult result;
  result.neighbors.reserve(corpus.size());
  for (const auto& entry : corpus) {
    const MinMaxResult candidate = minmax_normalize(entry.h);
    const DtwResult dtw = dtw_distance(probe.values, candidate.values);
    result.neighbors.push_back(
        {entry.name, entry.category, averaged ? dtw.averaged : dtw.distance});
  }
  // Stable sort keeps corpus order among exact ties.
  std::stable_sort(result.neighbors.begin(), result.neighbors.end(),
                   [](const RankedNeighbor& a, const RankedNeighbor& b) {
                     return a.distance < b.distance;
                   });
  result.predicted_category = result.neighbors.front().category;
  return result;
}

}  // namespace tempinf
