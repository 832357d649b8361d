#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <vector>

#include "tempinf/factorize.hpp"

namespace tempinf {

struct HDistance {
  double l1_normalized = 0.0;  // ||a - b||_1 / T
  double l2_normalized = 0.0;  // ||a - b||_2 / T
  double cosine = 0.0;
};

/// One subsampling trial: the retained rows, the pattern extracted from them,
/// and its distance to the full-network pattern.
struct SubsetTrial {
  int rho = 0;
  int trial_index = 0;  // within this rho's group
  std::uint64_t seed = 0;
  std::vector<Eigen::Index> row_ids;
  Eigen::RowVectorXd h_subset;  // unit L2
  HDistance distance;
};

/// Pass levels for the per-rho means. Recorded in the report, never fatal.
struct UniquenessThresholds {
  double cosine_min = 0.8;
  double l1_max = 7e-2;
  double l2_max = 6e-3;
};

struct RhoSummary {
  int rho = 0;
  double l1_mean = 0.0;
  double l2_mean = 0.0;
  double cosine_mean = 0.0;
  bool pass_l1 = false;
  bool pass_l2 = false;
  bool pass_cosine = false;
};

struct UniquenessReport {
  std::vector<int> rhos;
  std::vector<RhoSummary> summary;      // one entry per rho
  std::vector<SubsetTrial> trials;      // grouped by rho, trial order
  UniquenessThresholds thresholds;
  Eigen::RowVectorXd h_full;            // the reference pattern
};

/// Uniform sample without replacement of round(n * fraction) row indices,
/// returned sorted ascending; deterministic per seed. Requires n >= 2 and
/// fraction in (0, 1]; throws InvalidArgument otherwise or when the subset
/// would be empty.
std::vector<Eigen::Index> subset_rows(const Eigen::MatrixXd& mstar, double fraction,
                                      std::uint64_t seed);

/// Normalized L1/L2 distances and cosine similarity between two patterns.
/// Callers are expected to pass unit-L2 canonical vectors; throws
/// DegenerateInput on a zero vector, InvalidArgument on length mismatch.
HDistance compare_h(const Eigen::RowVectorXd& a, const Eigen::RowVectorXd& b);

/// For each rho: rho trials, each keeping a 1 - 1/rho fraction of rows,
/// refactorizing with the run's config, and measuring against the
/// full-network pattern. Subset seeds are base_seed XOR the global trial
/// counter; rank > 1 trials additionally derive their own NMF seeds. Trials
/// may run in parallel; the report is assembled in (rho, trial) order.
UniquenessReport run_uniqueness(const Eigen::MatrixXd& mstar, const NmfConfig& config,
                                std::span<const int> rhos, std::uint64_t base_seed,
                                const UniquenessThresholds& thresholds = {},
                                int threads = 1);

inline UniquenessReport run_uniqueness(const AlignedInfluenceMatrix& mstar,
                                       const NmfConfig& config, std::span<const int> rhos,
                                       std::uint64_t base_seed,
                                       const UniquenessThresholds& thresholds = {},
                                       int threads = 1) {
  return run_uniqueness(mstar.values, config, rhos, base_seed, thresholds, threads);
}

}  // namespace tempinf
