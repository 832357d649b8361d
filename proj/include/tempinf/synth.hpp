#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <string_view>

#include "tempinf/error.hpp"

namespace tempinf {

enum class ShapeFamily {
  Decay,    // exponential fall-off from the first snapshot
  Plateau,  // logistic rise that then holds
  Bimodal,  // two separated bumps
};

ShapeFamily shape_from_name(std::string_view name);
std::string shape_name(ShapeFamily shape);

/// A known-ground-truth aligned matrix: mstar = w0 * h0 (+ clipped uniform
/// noise). h0 rows are smooth positive curves with unit L2 norm; w0 entries
/// are positive uniform. Everything is a pure function of the parameters and
/// seed.
struct PlantedInstance {
  Eigen::MatrixXd w0;     // n x k
  Eigen::MatrixXd h0;     // k x T, unit-L2 rows
  Eigen::MatrixXd mstar;  // n x T, nonnegative
  double noise_level = 0.0;
  std::uint64_t seed = 0;
};

/// Draw an instance. Shape parameters are drawn per role from k strata of the
/// family's parameter range, so roles stay linearly independent. Noise is
/// uniform in +-noise_level * mean(w0 h0), clipped at zero.
/// Throws InvalidArgument on bad dimensions or negative noise.
PlantedInstance generate_planted(int n, int t, int k, ShapeFamily shape,
                                 double noise_level, std::uint64_t seed);

/// Independent optimum for the rank-1 Frobenius objective: the leading
/// singular triple computed by power iteration on the Gram matrix M^T M,
/// written with plain loops on purpose so it shares no code with the
/// factorization path it cross-checks. residual = sqrt(||M||_F^2 - sigma^2).
struct Rank1Oracle {
  Eigen::VectorXd w;
  Eigen::RowVectorXd h;
  double sigma = 0.0;
  double residual = 0.0;
};

/// Throws DegenerateInput on an all-zero matrix.
Rank1Oracle svd_rank1_oracle(const Eigen::MatrixXd& m);

}  // namespace tempinf
