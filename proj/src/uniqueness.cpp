#include "tempinf/uniqueness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "tempinf/parallel.hpp"
#include "tempinf/rng.hpp"

namespace tempinf {

std::vector<Eigen::Index> subset_rows(const Eigen::MatrixXd& mstar, double fraction,
                                      std::uint64_t seed) {
  const Eigen::Index n = mstar.rows();
  if (n < 2) {
    throw Error(ErrorKind::InvalidArgument, "subsampling needs at least 2 rows");
  }
  if (!(fraction > 0.0) || fraction > 1.0) {
    throw Error(ErrorKind::InvalidArgument, "fraction must lie in (0, 1]");
  }
  const auto size = static_cast<Eigen::Index>(
      std::llround(static_cast<double>(n) * fraction));
  if (size < 1) {
    throw Error(ErrorKind::InvalidArgument, "subset would be empty");
  }

  // Partial Fisher-Yates over the index array, then sort the chosen prefix.
  std::vector<Eigen::Index> indices(static_cast<std::size_t>(n));
  std::iota(indices.begin(), indices.end(), 0);
  std::mt19937_64 gen(seed);
  for (Eigen::Index i = 0; i < size; ++i) {
    const auto j = i + static_cast<Eigen::Index>(
                           rng::bounded(gen, static_cast<std::uint64_t>(n - i)));
    std::swap(indices[static_cast<std::size_t>(i)], indices[static_cast<std::size_t>(j)]);
  }
  indices.resize(static_cast<std::size_t>(size));
  std::sort(indices.begin(), indices.end());
  return indices;
}

HDistance compare_h(const Eigen::RowVectorXd& a, const Eigen::RowVectorXd& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::InvalidArgument, "pattern lengths differ");
  }
  if (a.size() == 0) {
    throw Error(ErrorKind::InvalidArgument, "empty pattern");
  }
  const double norm_a = a.norm();
  const double norm_b = b.norm();
  if (norm_a == 0.0 || norm_b == 0.0) {
    throw Error(ErrorKind::DegenerateInput, "zero pattern vector");
  }

  const auto t = static_cast<double>(a.size());
  HDistance d;
  d.l1_normalized = (a - b).lpNorm<1>() / t;
  d.l2_normalized = (a - b).norm() / t;
  d.cosine = a.dot(b) / (norm_a * norm_b);
  return d;
}

UniquenessReport run_uniqueness(const Eigen::MatrixXd& mstar, const NmfConfig& config,
                                std::span<const int> rhos, std::uint64_t base_seed,
                                const UniquenessThresholds& thresholds, int threads) {
  for (int rho : rhos) {
    if (rho < 2) {
      throw Error(ErrorKind::InvalidArgument, "rho must be at least 2");
    }
  }

  const FactorPair full = factor(mstar, config);

  UniquenessReport report;
  report.rhos.assign(rhos.begin(), rhos.end());
  report.thresholds = thresholds;
  report.h_full = full.h.row(0);

  // Flatten (rho, trial) into one list; the global position also drives the
  // per-trial seeds, so every trial is seeded distinctly.
  for (std::size_t r = 0; r < rhos.size(); ++r) {
    for (int trial = 0; trial < rhos[r]; ++trial) {
      SubsetTrial entry;
      entry.rho = rhos[r];
      entry.trial_index = trial;
      entry.seed = base_seed ^ static_cast<std::uint64_t>(report.trials.size());
      report.trials.push_back(std::move(entry));
    }
  }

  parallel_for(report.trials.size(), threads, [&](std::size_t g) {
    SubsetTrial& trial = report.trials[g];
    const double fraction = 1.0 - 1.0 / trial.rho;
    trial.row_ids = subset_rows(mstar, fraction, trial.seed);

    Eigen::MatrixXd subset(static_cast<Eigen::Index>(trial.row_ids.size()), mstar.cols());
    for (std::size_t i = 0; i < trial.row_ids.size(); ++i) {
      subset.row(static_cast<Eigen::Index>(i)) = mstar.row(trial.row_ids[i]);
    }

    NmfConfig trial_config = config;
    trial_config.seed = rng::derive_seed(config.seed, static_cast<std::uint64_t>(g));
    const FactorPair pair = factor(subset, trial_config);
    trial.h_subset = pair.h.row(0);
    trial.distance = compare_h(trial.h_subset, report.h_full);
  });

  std::size_t offset = 0;
  for (int rho : report.rhos) {
    RhoSummary summary;
    summary.rho = rho;
    for (int trial = 0; trial < rho; ++trial) {
      const HDistance& d = report.trials[offset + static_cast<std::size_t>(trial)].distance;
      summary.l1_mean += d.l1_normalized;
      summary.l2_mean += d.l2_normalized;
      summary.cosine_mean += d.cosine;
    }
    summary.l1_mean /= rho;
    summary.l2_mean /= rho;
    summary.cosine_mean /= rho;
    summary.pass_l1 = summary.l1_mean <= thresholds.l1_max;
    summary.pass_l2 = summary.l2_mean <= thresholds.l2_max;
    summary.pass_cosine = summary.cosine_mean >= thresholds.cosine_min;
    report.summary.push_back(summary);
    offset += static_cast<std::size_t>(rho);
  }
  return report;
}

}  // namespace tempinf
