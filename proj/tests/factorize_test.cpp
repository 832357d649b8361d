#include <doctest.h>

#include <cmath>
#include <random>

#include "tempinf/factorize.hpp"
#include "tempinf/rng.hpp"
#include "tempinf/synth.hpp"

using namespace tempinf;

namespace {

Eigen::MatrixXd random_nonnegative(std::mt19937_64& gen, Eigen::Index rows,
                                   Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng::unit_double(gen);
  }
  return m;
}

}  // namespace

TEST_SUITE("factorize") {

TEST_CASE("rank-1 on an exact outer product recovers the scaled right vector") {
  Eigen::VectorXd w(3);
  w << 1, 2, 3;
  Eigen::RowVectorXd h(2);
  h << 4, 5;
  const Eigen::MatrixXd m = w * h;
  const FactorPair pair = factor_rank1(m);
  REQUIRE(pair.h.rows() == 1);
  REQUIRE(pair.h.cols() == 2);
  const double norm = std::sqrt(41.0);
  CHECK(pair.h(0, 0) == doctest::Approx(4.0 / norm).epsilon(1e-10));
  CHECK(pair.h(0, 1) == doctest::Approx(5.0 / norm).epsilon(1e-10));
  CHECK(pair.relative_residual <= 1e-10);
  CHECK(pair.converged);
}

TEST_CASE("rank-1 on a single row returns the normalized row") {
  Eigen::MatrixXd m(1, 4);
  m << 3, 0, 4, 0;
  const FactorPair pair = factor_rank1(m);
  CHECK(pair.h(0, 0) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(pair.h(0, 2) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(pair.w(0, 0) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("all-zero input is degenerate") {
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 4);
  CHECK_THROWS_AS(factor_rank1(zero), Error);
  try {
    factor_rank1(zero);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateInput);
  }
}

TEST_CASE("rank-1 residual matches the independent oracle on random matrices") {
  std::mt19937_64 gen(31);
  for (int round = 0; round < 10; ++round) {
    const Eigen::MatrixXd m = random_nonnegative(gen, 30, 50);
    const FactorPair pair = factor_rank1(m);
    const Rank1Oracle oracle = svd_rank1_oracle(m);
    const double absolute = (m - pair.w * pair.h).norm();
    CHECK(absolute <= (1.0 + 1e-6) * oracle.residual);
  }
}

TEST_CASE("canonical form is scale invariant") {
  std::mt19937_64 gen(32);
  const Eigen::MatrixXd w0 = random_nonnegative(gen, 6, 2);
  const Eigen::MatrixXd h0 = random_nonnegative(gen, 2, 9);
  FactorPair a;
  a.w = w0;
  a.h = h0;
  a.k = 2;
  FactorPair b;
  b.w = 2.0 * w0;
  b.h = 0.5 * h0;
  b.k = 2;
  const FactorPair ca = canonicalize(a);
  const FactorPair cb = canonicalize(b);
  CHECK((ca.h - cb.h).cwiseAbs().maxCoeff() <= 1e-12);
  for (int r = 0; r < 2; ++r) {
    CHECK(ca.h.row(r).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  // The product is preserved.
  CHECK(((ca.w * ca.h) - (w0 * h0)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("canonicalization orders roles by descending weight-column norm") {
  FactorPair pair;
  pair.k = 2;
  pair.w.resize(2, 2);
  pair.w << 0.1, 5.0,
            0.1, 5.0;
  pair.h.resize(2, 3);
  pair.h << 1, 0, 0,
            0, 1, 0;
  const FactorPair canonical = canonicalize(pair);
  // The 5.0 column's pattern (second input row) comes first.
  CHECK(canonical.h(0, 1) == doctest::Approx(1.0));
  CHECK(canonical.h(1, 0) == doctest::Approx(1.0));
  CHECK(canonical.w(0, 0) > canonical.w(0, 1));
}

TEST_CASE("a zero pattern row cannot be canonicalized") {
  FactorPair pair;
  pair.k = 1;
  pair.w = Eigen::MatrixXd::Ones(2, 1);
  pair.h = Eigen::MatrixXd::Zero(1, 3);
  CHECK_THROWS_AS(canonicalize(pair), Error);
  try {
    canonicalize(pair);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateFactor);
  }
}

TEST_CASE("relative residual identities") {
  std::mt19937_64 gen(33);
  const Eigen::MatrixXd w0 = random_nonnegative(gen, 5, 1);
  const Eigen::MatrixXd h0 = random_nonnegative(gen, 1, 7);
  const Eigen::MatrixXd m = w0 * h0;
  FactorPair exact;
  exact.w = w0;
  exact.h = h0;
  exact.k = 1;
  CHECK(relative_residual(m, exact) <= 1e-14);

  FactorPair zero;
  zero.w = Eigen::MatrixXd::Zero(5, 1);
  zero.h = Eigen::MatrixXd::Zero(1, 7);
  zero.k = 1;
  CHECK(relative_residual(m, zero) == doctest::Approx(1.0).epsilon(1e-14));

  FactorPair wrong;
  wrong.w = Eigen::MatrixXd::Zero(4, 1);
  wrong.h = Eigen::MatrixXd::Zero(1, 7);
  wrong.k = 1;
  CHECK_THROWS_AS(relative_residual(m, wrong), Error);
  CHECK_THROWS_AS(relative_residual(Eigen::MatrixXd::Zero(5, 7), exact), Error);
}

TEST_CASE("stored residual matches a recomputation") {
  std::mt19937_64 gen(34);
  const Eigen::MatrixXd m = random_nonnegative(gen, 12, 20);
  const FactorPair pair = factor_rank1(m);
  CHECK(std::abs(relative_residual(m, pair) - pair.relative_residual) <= 1e-12);
}

TEST_CASE("multiplicative updates at rank 1 agree with the exact rank-1 solver") {
  std::mt19937_64 gen(35);
  const Eigen::MatrixXd m = random_nonnegative(gen, 15, 25);
  const FactorPair direct = factor_rank1(m);
  NmfConfig config;
  config.k = 1;
  config.max_iterations = 50000;
  config.rel_change_tolerance = 1e-12;
  config.seed = 5;
  const FactorPair mu = factor_rank_k(m, config);
  CHECK(mu.relative_residual <= direct.relative_residual + 1e-6);
  CHECK(std::abs(mu.relative_residual - direct.relative_residual) <= 1e-6);
}

TEST_CASE("planted exact rank-2 product factors to near-zero residual") {
  const PlantedInstance instance =
      generate_planted(40, 30, 2, ShapeFamily::Decay, 0.0, 77);
  NmfConfig config;
  config.k = 2;
  config.max_iterations = 50000;
  config.rel_change_tolerance = 1e-12;
  config.init = NmfInit::NndsvdStyle;
  const FactorPair pair = factor_rank_k(instance.mstar, config);
  CHECK(pair.relative_residual <= 1e-6);
}

TEST_CASE("rank bounds are enforced") {
  const Eigen::MatrixXd m = Eigen::MatrixXd::Ones(4, 6);
  NmfConfig config;
  config.k = 5;  // min(4, 6) + 1
  CHECK_THROWS_AS(factor_rank_k(m, config), Error);
  config.k = 0;
  CHECK_THROWS_AS(factor_rank_k(m, config), Error);
  try {
    factor_rank_k(m, config);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }
}

TEST_CASE("the objective never increases across update iterations") {
  std::mt19937_64 gen(36);
  const Eigen::MatrixXd m = random_nonnegative(gen, 18, 14);
  NmfConfig config;
  config.k = 3;
  config.max_iterations = 300;
  config.rel_change_tolerance = 1e-14;
  config.track_objective = true;
  const FactorPair pair = factor_rank_k(m, config);
  REQUIRE(pair.objective_trace.size() >= 2);
  for (std::size_t i = 1; i < pair.objective_trace.size(); ++i) {
    CHECK(pair.objective_trace[i] <=
          pair.objective_trace[i - 1] * (1.0 + 1e-12) + 1e-300);
  }
}

TEST_CASE("fixed seeds give bit-identical factors") {
  std::mt19937_64 gen(37);
  const Eigen::MatrixXd m = random_nonnegative(gen, 10, 16);
  NmfConfig config;
  config.k = 2;
  config.max_iterations = 500;
  config.seed = 99;
  const FactorPair a = factor_rank_k(m, config);
  const FactorPair b = factor_rank_k(m, config);
  CHECK((a.h.array() == b.h.array()).all());
  CHECK((a.w.array() == b.w.array()).all());
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("iteration cap returns an unconverged result instead of failing") {
  std::mt19937_64 gen(38);
  const Eigen::MatrixXd m = random_nonnegative(gen, 10, 10);
  NmfConfig config;
  config.k = 2;
  config.max_iterations = 1;
  config.rel_change_tolerance = 1e-16;
  const FactorPair pair = factor_rank_k(m, config);
  CHECK_FALSE(pair.converged);
  CHECK(pair.iterations == 1);
}

TEST_CASE("row subsets of an exact rank-1 matrix yield the identical pattern") {
  std::mt19937_64 gen(39);
  const Eigen::MatrixXd w0 = random_nonnegative(gen, 20, 1);
  const Eigen::MatrixXd h0 = random_nonnegative(gen, 1, 30);
  const Eigen::MatrixXd m = w0 * h0;
  const FactorPair full = factor_rank1(m);
  for (int take : {2, 7, 15}) {
    const Eigen::MatrixXd subset = m.topRows(take);
    const FactorPair sub = factor_rank1(subset);
    CHECK((sub.h - full.h).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("the dispatching front door routes by rank") {
  std::mt19937_64 gen(40);
  const Eigen::MatrixXd m = random_nonnegative(gen, 8, 12);
  NmfConfig config;
  config.k = 1;
  const FactorPair one = factor(m, config);
  const FactorPair direct = factor_rank1(m);
  CHECK((one.h.array() == direct.h.array()).all());
  config.k = 2;
  const FactorPair two = factor(m, config);
  CHECK(two.k == 2);
  CHECK(two.h.rows() == 2);
}

}  // TEST_SUITE
