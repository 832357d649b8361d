#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "tempinf/error.hpp"
#include "tempinf/influence.hpp"

namespace tempinf {

inline constexpr std::uint64_t kDefaultSeed = 1729;

/// Nonnegative factors of the aligned influence matrix. After
/// canonicalization each row of h has unit L2 norm (the scale lives in the
/// matching w column) and roles are ordered by descending w-column norm.
struct FactorPair {
  Eigen::MatrixXd w;  // n x k, participant shares
  Eigen::MatrixXd h;  // k x T, shared temporal patterns
  int k = 1;
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
  std::vector<double> objective_trace;  // filled when NmfConfig::track_objective
};

enum class NmfInit {
  NonnegativeRandom,
  NndsvdStyle,  // built from the leading singular triples, zeros mean-filled
};

struct NmfConfig {
  int k = 1;
  int max_iterations = 2000;
  double rel_change_tolerance = 1e-4;  // relative objective change, 0.01%
  std::uint64_t seed = kDefaultSeed;
  NmfInit init = NmfInit::NonnegativeRandom;
  bool track_objective = false;
};

/// Global rank-1 minimizer of ||M - wh||_F via alternating power iteration for
/// the leading singular pair. A nonnegative matrix admits entrywise
/// nonnegative leading singular vectors, so the nonnegativity constraint is
/// inactive and this is exact. Tolerance 1e-10 on the vector change, at most
/// 10000 iterations. Throws DegenerateInput on an all-zero matrix.
FactorPair factor_rank1(const Eigen::MatrixXd& mstar);

/// Multiplicative-update minimization of ||M - WH||_F^2 at rank k. Stops when
/// the relative objective change drops below the configured tolerance or
/// max_iterations is reached (the pair is returned either way, with
/// `converged` telling which). Deterministic for a fixed seed. Throws
/// InvalidArgument when k is out of [1, min(n, T)], DegenerateInput on an
/// all-zero matrix.
FactorPair factor_rank_k(const Eigen::MatrixXd& mstar, const NmfConfig& config);

/// Rank-dispatching front door: k == 1 routes to factor_rank1, larger k to
/// factor_rank_k.
FactorPair factor(const Eigen::MatrixXd& mstar, const NmfConfig& config);

/// Resolve the scale ambiguity WH == (Wc)(H/c): scale each h row to unit L2,
/// push the inverse into the w column, order roles by descending w-column
/// norm. The product is unchanged to within rounding. Throws DegenerateFactor
/// on a zero h row.
FactorPair canonicalize(FactorPair pair);

/// ||M - WH||_F / ||M||_F. Throws DegenerateInput on zero M, InvalidArgument
/// on dimension mismatch.
double relative_residual(const Eigen::MatrixXd& mstar, const FactorPair& pair);

inline FactorPair factor_rank1(const AlignedInfluenceMatrix& mstar) {
  return factor_rank1(mstar.values);
}
inline FactorPair factor(const AlignedInfluenceMatrix& mstar, const NmfConfig& config) {
  return factor(mstar.values, config);
}

}  // namespace tempinf
