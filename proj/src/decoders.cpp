#include "detfourier/decoders.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "detfourier/errors.hpp"

namespace detfourier {

Eigen::VectorXcd restricted_least_squares(const Eigen::MatrixXcd& a,
                                          const std::vector<std::size_t>& columns,
                                          const Eigen::VectorXcd& y) {
  if (y.size() != a.rows()) throw ValidationError("least squares: y length != N");
  const auto k = static_cast<Eigen::Index>(columns.size());
  if (k == 0) return Eigen::VectorXcd();
  if (k > a.rows()) throw DegeneracyError("least squares: more columns than samples");
  Eigen::MatrixXcd sub(a.rows(), k);
  for (Eigen::Index i = 0; i < k; ++i) {
    sub.col(i) = a.col(static_cast<Eigen::Index>(columns[static_cast<std::size_t>(i)]));
  }
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(sub);
  const Eigen::MatrixXcd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(r);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(k - 1);
  if (!(smin > 0.0) || smax / smin > kMaxCondition) {
    throw DegeneracyError("least squares: selected columns are numerically dependent (cond " +
                          std::to_string(smin > 0.0 ? smax / smin : INFINITY) + ")");
  }
  return qr.solve(y);
}

Eigen::VectorXcd restricted_least_squares(const SamplingMatrix& a, const SupportSet& support,
                                          const Eigen::VectorXcd& y) {
  return restricted_least_squares(a.entries(), support.columns(a.lattice()), y);
}

DecodeResult omp(const SamplingMatrix& a, const Eigen::VectorXcd& y, const OmpConfig& cfg) {
  if (y.size() != a.rows()) throw ValidationError("omp: y length != N");
  if (cfg.max_sparsity == 0 && !(cfg.residual_tolerance > 0.0)) {
    throw ValidationError("omp: need max_sparsity >= 1 or residual_tolerance > 0");
  }
  const Eigen::MatrixXcd& entries = a.entries();
  const auto cols = entries.cols();
  const std::size_t cap = std::min<std::size_t>(
      {cfg.max_sparsity ? cfg.max_sparsity : static_cast<std::size_t>(cols),
       static_cast<std::size_t>(entries.rows()), static_cast<std::size_t>(cols)});

  DecodeResult result;
  result.coefficients = Eigen::VectorXcd::Zero(cols);
  Eigen::VectorXcd residual = y;
  Eigen::VectorXcd restricted;
  std::vector<char> selected(static_cast<std::size_t>(cols), 0);
  result.residual_history.push_back(residual.norm());

  while (result.residual_history.back() > cfg.residual_tolerance && result.iterations < cap) {
    // match
    const Eigen::VectorXcd correlation = entries.adjoint() * residual;
    // identity
    Eigen::Index best = -1;
    double best_value = -1.0;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (selected[static_cast<std::size_t>(j)]) continue;
      const double v = std::abs(correlation(j));
      if (v > best_value) {
        best_value = v;
        best = j;
      }
    }
    selected[static_cast<std::size_t>(best)] = 1;
    result.columns.push_back(static_cast<std::size_t>(best));
    // update
    restricted = restricted_least_squares(entries, result.columns, y);
    residual = y;
    for (std::size_t i = 0; i < result.columns.size(); ++i) {
      residual -= restricted(static_cast<Eigen::Index>(i)) *
                  entries.col(static_cast<Eigen::Index>(result.columns[i]));
    }
    ++result.iterations;
    result.residual_history.push_back(residual.norm());
  }

  for (std::size_t i = 0; i < result.columns.size(); ++i) {
    result.coefficients(static_cast<Eigen::Index>(result.columns[i])) =
        restricted(static_cast<Eigen::Index>(i));
  }
  result.support = SupportSet::from_columns(a.lattice(), result.columns);
  result.converged = result.residual_history.back() <= cfg.residual_tolerance ||
                     (cfg.max_sparsity != 0 && result.iterations == cfg.max_sparsity);
  return result;
}

namespace {

void soft_threshold(Eigen::VectorXcd& v, double threshold) {
  for (auto& z : v) {
    const double mag = std::abs(z);
    z = mag > threshold ? z * ((mag - threshold) / mag) : Complex(0.0, 0.0);
  }
}

}  // namespace

DecodeResult basis_pursuit(const SamplingMatrix& a, const Eigen::VectorXcd& y, const BpConfig& cfg) {
  if (y.size() != a.rows()) throw ValidationError("basis_pursuit: y length != N");
  if (!(cfg.rho > 0.0)) throw ValidationError("basis_pursuit: rho must be > 0");
  if (!(cfg.primal_tolerance > 0.0 && cfg.dual_tolerance > 0.0)) {
    throw ValidationError("basis_pursuit: tolerances must be > 0");
  }
  if (!(cfg.relaxation > 0.0 && cfg.relaxation < 2.0)) {
    throw ValidationError("basis_pursuit: relaxation must be in (0, 2)");
  }
  const Eigen::MatrixXcd& entries = a.entries();
  const auto cols = entries.cols();
  DecodeResult result;
  result.coefficients = Eigen::VectorXcd::Zero(cols);
  if (y.norm() == 0.0) {
    result.residual_history.push_back(0.0);
    result.converged = true;
    return result;
  }

  // Projection onto {c : A c = y} is v - pinv (A v - y), pinv = A^* (A A^*)^{-1}.
  // With dependent rows (N > D, repeated points) fall back to a rank-revealing pseudo-inverse,
  // which projects onto {c : A c = P y} with P the projector onto range(A).
  Eigen::MatrixXcd pinv;
  const Eigen::LLT<Eigen::MatrixXcd> llt(entries * entries.adjoint());
  if (entries.rows() <= cols && llt.info() == Eigen::Success) {
    pinv = llt.solve(entries).adjoint();
  } else {
    pinv = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd>(entries).pseudoInverse();
  }

  const double threshold = 1.0 / cfg.rho;
  const double root_d = std::sqrt(static_cast<double>(cols));
  Eigen::VectorXcd c = pinv * y;
  Eigen::VectorXcd z = c;
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(cols);
  Eigen::VectorXcd z_prev(cols), v(cols), relaxed(cols);

  for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
    v = z - u;
    c = v - pinv * (entries * v - y);
    relaxed = cfg.relaxation * c + (1.0 - cfg.relaxation) * z;
    z_prev = z;
    z = relaxed + u;
    soft_threshold(z, threshold);
    u += relaxed - z;
    ++result.iterations;

    const double primal = (c - z).norm();
    const double dual = cfg.rho * (z - z_prev).norm();
    result.residual_history.push_back(primal);
    const double primal_eps =
        root_d * cfg.primal_tolerance + cfg.primal_tolerance * std::max(c.norm(), z.norm());
    const double dual_eps = root_d * cfg.dual_tolerance + cfg.dual_tolerance * cfg.rho * u.norm();
    if (primal <= primal_eps && dual <= dual_eps) {
      result.converged = true;
      break;
    }
  }

  // Refit on the support of the thresholded iterate. When the refit is
  // feasible and no larger in l1 norm it is the exact minimizer the iterates
  // approach; otherwise the projected iterate is kept.
  std::vector<std::size_t> active;
  for (Eigen::Index j = 0; j < cols; ++j) {
    if (z(j) != Complex(0.0, 0.0)) active.push_back(static_cast<std::size_t>(j));
  }
  if (!active.empty() && active.size() < static_cast<std::size_t>(entries.rows())) {
    try {
      const Eigen::VectorXcd refit = restricted_least_squares(entries, active, y);
      Eigen::VectorXcd candidate = Eigen::VectorXcd::Zero(cols);
      for (std::size_t i = 0; i < active.size(); ++i) {
        candidate(static_cast<Eigen::Index>(active[i])) = refit(static_cast<Eigen::Index>(i));
      }
      const double violation = (entries * candidate - y).norm();
      const double l1_candidate = candidate.cwiseAbs().sum();
      const double l1_iterate = c.cwiseAbs().sum();
      if (violation <= 1e-9 * y.norm() && l1_candidate <= l1_iterate * (1.0 + 1e-9)) c = candidate;
    } catch (const DegeneracyError&) {
    }
  }

  result.coefficients = c;
  // Support: entries above 1e-6 of the peak, at most N of them (largest first).
  const double peak = c.cwiseAbs().maxCoeff();
  for (Eigen::Index j = 0; j < cols; ++j) {
    if (std::abs(c(j)) > 1e-6 * peak) result.columns.push_back(static_cast<std::size_t>(j));
  }
  const auto limit = static_cast<std::size_t>(entries.rows());
  if (result.columns.size() > limit) {
    std::stable_sort(result.columns.begin(), result.columns.end(), [&](std::size_t p, std::size_t q) {
      return std::abs(c(static_cast<Eigen::Index>(p))) > std::abs(c(static_cast<Eigen::Index>(q)));
    });
    result.columns.resize(limit);
    std::sort(result.columns.begin(), result.columns.end());
  }
  result.support = SupportSet::from_columns(a.lattice(), result.columns);
  return result;
}

double relative_error(const SparsePolynomial& truth, const DecodeResult& result) {
  const Eigen::VectorXcd expected = truth.dense();
  if (expected.size() != result.coefficients.size()) {
    throw ValidationError("relative_error: coefficient layouts differ");
  }
  const double scale = expected.norm();
  const double err = (result.coefficients - expected).norm();
  return scale > 0.0 ? err / scale : err;
}

bool recovery_success(const SparsePolynomial& truth, const DecodeResult& result, double tolerance) {
  if (!(tolerance > 0.0)) throw ValidationError("recovery_success: tolerance must be > 0");
  return relative_error(truth, result) <= tolerance;
}

}  // namespace detfourier
