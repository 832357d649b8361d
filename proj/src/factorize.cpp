#include "tempinf/factorize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <utility>

#include "tempinf/rng.hpp"

namespace tempinf {

namespace {

constexpr double kPowerTolerance = 1e-10;
constexpr int kPowerMaxIterations = 10000;

// Floor applied to multiplicative-update denominators. Only guards 0/0 slots
// (a dead row stays dead because the update is multiplicative); the floor is
// far below any scale the data can reach.
constexpr double kDenominatorFloor = 1e-150;

double frobenius(const Eigen::MatrixXd& m) { return m.norm(); }

// Leading singular triple by alternating power iteration on (M, M^T).
// Entries stay nonnegative throughout for nonnegative M and a positive start.
struct SingularPair {
  Eigen::VectorXd u;
  Eigen::RowVectorXd v;
  double sigma = 0.0;
  int iterations = 0;
  bool converged = false;
};

SingularPair leading_singular_pair(const Eigen::MatrixXd& m) {
  const Eigen::Index t = m.cols();

  SingularPair pair;
  pair.v = Eigen::RowVectorXd::Constant(t, 1.0 / std::sqrt(static_cast<double>(t)));

  Eigen::VectorXd u;
  Eigen::RowVectorXd v_next;
  for (int iter = 1; iter <= kPowerMaxIterations; ++iter) {
    u = m * pair.v.transpose();
    const double u_norm = u.norm();
    if (u_norm == 0.0) break;  // unreachable for nonzero nonnegative input
    u /= u_norm;

    v_next = u.transpose() * m;
    pair.sigma = v_next.norm();
    if (pair.sigma == 0.0) break;
    v_next /= pair.sigma;

    const double change = (v_next - pair.v).cwiseAbs().maxCoeff();
    pair.u = u;
    pair.v = v_next;
    pair.iterations = iter;
    if (change < kPowerTolerance) {
      pair.converged = true;
      break;
    }
  }
  return pair;
}

Eigen::MatrixXd random_init(Eigen::Index rows, Eigen::Index cols, double scale,
                            std::mt19937_64& gen) {
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      out(i, j) = scale * rng::unit_double(gen);
    }
  }
  return out;
}

// Nonnegative start built from the k leading singular triples (deflation +
// power iteration), keeping the dominant sign pattern of each triple. Zero
// slots are filled with the matrix mean so multiplicative updates can move
// them.
void nndsvd_init(const Eigen::MatrixXd& m, int k, Eigen::MatrixXd& w,
                 Eigen::MatrixXd& h) {
  const Eigen::Index n = m.rows();
  const Eigen::Index t = m.cols();
  w.setZero(n, k);
  h.setZero(k, t);

  Eigen::MatrixXd residual = m;
  for (int r = 0; r < k; ++r) {
    SingularPair pair = leading_singular_pair(residual);
    if (pair.sigma <= 0.0) break;
    Eigen::VectorXd up = pair.u.cwiseMax(0.0), un = (-pair.u).cwiseMax(0.0);
    Eigen::RowVectorXd vp = pair.v.cwiseMax(0.0), vn = (-pair.v).cwiseMax(0.0);
    const double pos = up.norm() * vp.norm();
    const double neg = un.norm() * vn.norm();
    if (pos >= neg && pos > 0.0) {
      w.col(r) = std::sqrt(pair.sigma * pos) * up / up.norm();
      h.row(r) = std::sqrt(pair.sigma * pos) * vp / vp.norm();
    } else if (neg > 0.0) {
      w.col(r) = std::sqrt(pair.sigma * neg) * un / un.norm();
      h.row(r) = std::sqrt(pair.sigma * neg) * vn / vn.norm();
    }
    residual -= pair.sigma * pair.u * pair.v;
  }

  const double fill = std::max(m.mean(), 1e-12);
  w = w.unaryExpr([fill](double x) { return x > 0.0 ? x : fill; });
  h = h.unaryExpr([fill](double x) { return x > 0.0 ? x : fill; });
}

}  // namespace

FactorPair factor_rank1(const Eigen::MatrixXd& mstar) {
  if (mstar.size() == 0 || frobenius(mstar) == 0.0) {
    throw Error(ErrorKind::DegenerateInput, "rank-1 factorization of an all-zero matrix");
  }

  SingularPair pair = leading_singular_pair(mstar);

  FactorPair result;
  result.k = 1;
  result.iterations = pair.iterations;
  result.converged = pair.converged;
  result.w = pair.sigma * pair.u;
  result.h = pair.v;
  result = canonicalize(std::move(result));
  result.relative_residual = relative_residual(mstar, result);
  return result;
}

FactorPair factor_rank_k(const Eigen::MatrixXd& mstar, const NmfConfig& config) {
  const Eigen::Index n = mstar.rows();
  const Eigen::Index t = mstar.cols();
  if (config.k < 1 || config.k > std::min(n, t)) {
    throw Error(ErrorKind::InvalidArgument,
                "rank " + std::to_string(config.k) + " outside [1, min(n, T)]");
  }
  if (config.rel_change_tolerance <= 0.0) {
    throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  }
  const double m_norm = frobenius(mstar);
  if (mstar.size() == 0 || m_norm == 0.0) {
    throw Error(ErrorKind::DegenerateInput, "factorization of an all-zero matrix");
  }

  const int k = config.k;
  Eigen::MatrixXd w, h;
  if (config.init == NmfInit::NndsvdStyle) {
    nndsvd_init(mstar, k, w, h);
  } else {
    std::mt19937_64 gen(config.seed);
    const double scale = 2.0 * std::sqrt(mstar.mean() / k);
    w = random_init(n, k, scale, gen);
    h = random_init(k, t, scale, gen);
  }

  FactorPair result;
  result.k = k;
  if (config.track_objective) result.objective_trace.reserve(config.max_iterations + 1);

  double objective = (mstar - w * h).squaredNorm();
  if (config.track_objective) result.objective_trace.push_back(objective);

  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    // Lee-Seung updates for the Frobenius objective.
    const Eigen::MatrixXd wt_m = w.transpose() * mstar;
    const Eigen::MatrixXd wt_w_h = (w.transpose() * w) * h;
    h = h.cwiseProduct(wt_m.cwiseQuotient(wt_w_h.cwiseMax(kDenominatorFloor)));

    const Eigen::MatrixXd m_ht = mstar * h.transpose();
    const Eigen::MatrixXd w_h_ht = w * (h * h.transpose());
    w = w.cwiseProduct(m_ht.cwiseQuotient(w_h_ht.cwiseMax(kDenominatorFloor)));

    const double next = (mstar - w * h).squaredNorm();
    if (config.track_objective) result.objective_trace.push_back(next);
    result.iterations = iter;

    const double change = std::abs(objective - next) / std::max(objective, 1e-300);
    objective = next;
    if (change < config.rel_change_tolerance) {
      result.converged = true;
      break;
    }
  }

  result.w = std::move(w);
  result.h = std::move(h);
  result = canonicalize(std::move(result));
  result.relative_residual = relative_residual(mstar, result);
  return result;
}

FactorPair factor(const Eigen::MatrixXd& mstar, const NmfConfig& config) {
  if (config.k == 1) return factor_rank1(mstar);
  return factor_rank_k(mstar, config);
}

FactorPair canonicalize(FactorPair pair) {
  const int k = pair.k;
  for (int r = 0; r < k; ++r) {
    const double scale = pair.h.row(r).norm();
    if (scale == 0.0) {
      throw Error(ErrorKind::DegenerateFactor,
                  "pattern row " + std::to_string(r) + " is zero");
    }
    pair.h.row(r) /= scale;
    pair.w.col(r) *= scale;
  }

  std::vector<int> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> w_norms(static_cast<std::size_t>(k));
  for (int r = 0; r < k; ++r) w_norms[static_cast<std::size_t>(r)] = pair.w.col(r).norm();
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return w_norms[static_cast<std::size_t>(a)] > w_norms[static_cast<std::size_t>(b)];
  });

  const bool sorted = std::is_sorted(order.begin(), order.end());
  if (!sorted) {
    Eigen::MatrixXd w(pair.w.rows(), k), h(k, pair.h.cols());
    for (int r = 0; r < k; ++r) {
      w.col(r) = pair.w.col(order[static_cast<std::size_t>(r)]);
      h.row(r) = pair.h.row(order[static_cast<std::size_t>(r)]);
    }
    pair.w = std::move(w);
    pair.h = std::move(h);
  }
  return pair;
}

double relative_residual(const Eigen::MatrixXd& mstar, const FactorPair& pair) {
  if (pair.w.rows() != mstar.rows() || pair.h.cols() != mstar.cols() ||
      pair.w.cols() != pair.h.rows()) {
    throw Error(ErrorKind::InvalidArgument, "factor dimensions do not match the matrix");
  }
  const double m_norm = frobenius(mstar);
  if (m_norm == 0.0) {
    throw Error(ErrorKind::DegenerateInput, "residual of an all-zero matrix");
  }
  return (mstar - pair.w * pair.h).norm() / m_norm;
}

}  // namespace tempinf
