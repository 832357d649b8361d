#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tempinf/error.hpp"

namespace tempinf {

/// Min-max normalization result. Constant inputs have no range; they map to
/// all-zeros and set `degenerate` instead of erroring.
struct MinMaxResult {
  std::vector<double> values;
  bool degenerate = false;
};

/// (h - min) / (max - min), onto [0, 1].
MinMaxResult minmax_normalize(std::span<const double> h);

/// Cumulative warp cost between two sequences under pointwise cost |a_i -
/// b_j| with diagonal/down/right moves and no window. `steps` is the cell
/// count of the optimal path found by the diagonal-preferred backtrace (ties
/// resolved diagonal, then down, then right); `averaged` divides the distance
/// by it.
struct DtwResult {
  double distance = 0.0;
  std::size_t steps = 0;
  double averaged = 0.0;
};

/// Throws InvalidArgument on an empty sequence.
DtwResult dtw_distance(std::span<const double> a, std::span<const double> b);

enum class SimilarityMeasure { Dtw, DtwAveraged, Cosine, Euclidean };

SimilarityMeasure measure_from_name(std::string_view name);
std::string measure_name(SimilarityMeasure measure);

/// A labeled pattern vector in a comparison corpus.
struct CorpusEntry {
  std::string name;
  std::string category;
  std::vector<double> h;
};

struct SimilarityMatrix {
  std::vector<std::string> labels;
  SimilarityMeasure measure = SimilarityMeasure::Dtw;
  Eigen::MatrixXd values;  // symmetric; zero diagonal for distances, unit for cosine
};

/// Each unordered pair once. DTW measures min-max normalize internally and
/// tolerate unequal lengths; cosine/Euclidean compare the vectors as given
/// and require equal lengths. Throws InvalidArgument on fewer than two
/// entries or a length mismatch.
SimilarityMatrix pairwise_similarity(std::span<const CorpusEntry> corpus,
                                     SimilarityMeasure measure, int threads = 1);

struct RankedNeighbor {
  std::string name;
  std::string category;
  double distance = 0.0;
};

/// 1-nearest-neighbor prediction plus the full ranked distance list. Distances
/// are DTW on min-max-normalized vectors, averaged by path length unless
/// `averaged` is false. Ties keep corpus order. Throws InvalidArgument on an
/// empty or unlabeled corpus.
struct ClassificationResult {
  std::string predicted_category;
  std::vector<RankedNeighbor> neighbors;
};

ClassificationResult classify_domain(std::span<const CorpusEntry> corpus,
                                     std::span<const double> unknown,
                                     bool averaged = true);

}  // namespace tempinf
