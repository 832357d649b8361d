#include "tempinf/synth.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "tempinf/rng.hpp"

namespace tempinf {

ShapeFamily shape_from_name(std::string_view name) {
  if (name == "decay") return ShapeFamily::Decay;
  if (name == "plateau") return ShapeFamily::Plateau;
  if (name == "bimodal") return ShapeFamily::Bimodal;
  throw Error(ErrorKind::Unsupported, "unknown shape family: " + std::string(name));
}

std::string shape_name(ShapeFamily shape) {
  switch (shape) {
    case ShapeFamily::Decay: return "decay";
    case ShapeFamily::Plateau: return "plateau";
    case ShapeFamily::Bimodal: return "bimodal";
  }
  return "decay";
}

namespace {

// One positive curve sampled at x = t/T, t = 1..T. `lo..hi` is the stratum of
// the family parameter assigned to this role.
Eigen::RowVectorXd sample_shape(ShapeFamily shape, int t, double lo, double hi,
                                std::mt19937_64& gen) {
  Eigen::RowVectorXd row(t);
  const double p = rng::uniform(gen, lo, hi);
  switch (shape) {
    case ShapeFamily::Decay: {
      // p in [3, 8]: decay rate.
      for (int j = 0; j < t; ++j) {
        const double x = static_cast<double>(j + 1) / t;
        row(j) = std::exp(-p * x);
      }
      break;
    }
    case ShapeFamily::Plateau: {
      // p in [0.25, 0.5]: rise midpoint; fixed steepness.
      const double steepness = rng::uniform(gen, 10.0, 16.0);
      for (int j = 0; j < t; ++j) {
        const double x = static_cast<double>(j + 1) / t;
        row(j) = 1.0 / (1.0 + std::exp(-steepness * (x - p)));
      }
      break;
    }
    case ShapeFamily::Bimodal: {
      // p in [0.15, 0.3]: first bump center; second sits mirrored high.
      const double c2 = rng::uniform(gen, 0.6, 0.85);
      const double width = rng::uniform(gen, 0.05, 0.12);
      const double mix = rng::uniform(gen, 0.5, 1.0);
      for (int j = 0; j < t; ++j) {
        const double x = static_cast<double>(j + 1) / t;
        const double b1 = std::exp(-0.5 * std::pow((x - p) / width, 2));
        const double b2 = std::exp(-0.5 * std::pow((x - c2) / width, 2));
        row(j) = b1 + mix * b2;
      }
      break;
    }
  }
  return row / row.norm();
}

void family_range(ShapeFamily shape, double& lo, double& hi) {
  switch (shape) {
    case ShapeFamily::Decay: lo = 3.0; hi = 8.0; break;
    case ShapeFamily::Plateau: lo = 0.25; hi = 0.5; break;
    case ShapeFamily::Bimodal: lo = 0.15; hi = 0.3; break;
  }
}

}  // namespace

PlantedInstance generate_planted(int n, int t, int k, ShapeFamily shape,
                                 double noise_level, std::uint64_t seed) {
  if (n < 1 || t < 1 || k < 1 || k > std::min(n, t)) {
    throw Error(ErrorKind::InvalidArgument, "invalid planted dimensions");
  }
  if (noise_level < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "noise level must be nonnegative");
  }

  std::mt19937_64 gen(seed);
  PlantedInstance instance;
  instance.noise_level = noise_level;
  instance.seed = seed;

  double lo = 0.0, hi = 0.0;
  family_range(shape, lo, hi);
  instance.h0.resize(k, t);
  for (int r = 0; r < k; ++r) {
    const double stratum_lo = lo + (hi - lo) * r / k;
    const double stratum_hi = lo + (hi - lo) * (r + 1) / k;
    instance.h0.row(r) = sample_shape(shape, t, stratum_lo, stratum_hi, gen);
  }

  instance.w0.resize(n, k);
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < k; ++r) {
      instance.w0(i, r) = rng::uniform(gen, 0.05, 1.0);
    }
  }

  instance.mstar = instance.w0 * instance.h0;
  if (noise_level > 0.0) {
    const double amplitude = noise_level * instance.mstar.mean();
    for (Eigen::Index i = 0; i < instance.mstar.rows(); ++i) {
      for (Eigen::Index j = 0; j < instance.mstar.cols(); ++j) {
        const double noisy =
            instance.mstar(i, j) + rng::uniform(gen, -amplitude, amplitude);
        instance.mstar(i, j) = std::max(noisy, 0.0);
      }
    }
  }
  return instance;
}

Rank1Oracle svd_rank1_oracle(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  const Eigen::Index t = m.cols();

  // Plain-loop path, independent of the factorization module.
  double frob_sq = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < t; ++j) frob_sq += m(i, j) * m(i, j);
  }
  if (m.size() == 0 || frob_sq == 0.0) {
    throw Error(ErrorKind::DegenerateInput, "oracle on an all-zero matrix");
  }

  // Gram matrix G = M^T M, then power iteration for its leading eigenvector.
  std::vector<double> gram(static_cast<std::size_t>(t) * t, 0.0);
  for (Eigen::Index a = 0; a < t; ++a) {
    for (Eigen::Index b = a; b < t; ++b) {
      double dot = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) dot += m(i, a) * m(i, b);
      gram[static_cast<std::size_t>(a) * t + b] = dot;
      gram[static_cast<std::size_t>(b) * t + a] = dot;
    }
  }

  std::vector<double> x(static_cast<std::size_t>(t),
                        1.0 / std::sqrt(static_cast<double>(t)));
  std::vector<double> next(static_cast<std::size_t>(t), 0.0);
  for (int iter = 0; iter < 20000; ++iter) {
    for (Eigen::Index a = 0; a < t; ++a) {
      double sum = 0.0;
      for (Eigen::Index b = 0; b < t; ++b) {
        sum += gram[static_cast<std::size_t>(a) * t + b] * x[static_cast<std::size_t>(b)];
      }
      next[static_cast<std::size_t>(a)] = sum;
    }
    double norm = 0.0;
    for (double v : next) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) break;
    double change = 0.0;
    for (std::size_t a = 0; a < next.size(); ++a) {
      next[a] /= norm;
      change = std::max(change, std::abs(next[a] - x[a]));
    }
    x.swap(next);
    if (change < 1e-13) break;
  }

  Rank1Oracle oracle;
  oracle.h.resize(t);
  for (Eigen::Index a = 0; a < t; ++a) oracle.h(a) = x[static_cast<std::size_t>(a)];

  oracle.w.resize(n);
  double sigma_sq = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < t; ++j) sum += m(i, j) * x[static_cast<std::size_t>(j)];
    oracle.w(i) = sum;
    sigma_sq += sum * sum;
  }
  oracle.sigma = std::sqrt(sigma_sq);
  if (oracle.sigma > 0.0) oracle.w /= oracle.sigma;
  oracle.residual = std::sqrt(std::max(frob_sq - sigma_sq, 0.0));
  return oracle;
}

}  // namespace tempinf
