#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "detfourier/core_index.hpp"
#include "detfourier/sampling.hpp"

namespace detfourier {

struct DecodeResult {
  Eigen::VectorXcd coefficients;        // full lattice layout
  std::vector<std::size_t> columns;     // recovered support, in selection order
  SupportSet support;
  std::vector<double> residual_history; // ‖y - A c‖_2, starting with ‖y‖_2
  std::size_t iterations = 0;
  bool converged = false;
};

/// Stopping rules: the loop continues while ‖r‖ > residual_tolerance and
/// fewer than max_sparsity columns have been selected.
struct OmpConfig {
  std::size_t max_sparsity = 0;
  double residual_tolerance = 0.0;
};

struct BpConfig {
  double rho = 1.0;
  double primal_tolerance = 1e-8;
  double dual_tolerance = 1e-8;
  std::size_t max_iterations = 20'000;
  /// Over-relaxation factor in (0, 2); 1 is plain ADMM.
  double relaxation = 1.0;
};

/// Condition number above which a restricted least-squares system is treated
/// as rank deficient.
inline constexpr double kMaxCondition = 1e12;

/// argmin over z supported on `columns` of ‖y - A z‖_2, by Householder QR of
/// the selected columns. Throws DegeneracyError when they are numerically
/// dependent.
Eigen::VectorXcd restricted_least_squares(const Eigen::MatrixXcd& a,
                                          const std::vector<std::size_t>& columns,
                                          const Eigen::VectorXcd& y);
Eigen::VectorXcd restricted_least_squares(const SamplingMatrix& a, const SupportSet& support,
                                          const Eigen::VectorXcd& y);

/// Orthogonal Matching Pursuit. The match step correlates with the conjugate
/// transpose; argmax ties go to the lowest column index.
DecodeResult omp(const SamplingMatrix& a, const Eigen::VectorXcd& y, const OmpConfig& cfg);

/// min ‖c‖_1 subject to A c = y, by ADMM with an exact affine projection and
/// complex soft thresholding. Returns the projected iterate, so A c = y holds
/// to solver precision even when converged is false.
DecodeResult basis_pursuit(const SamplingMatrix& a, const Eigen::VectorXcd& y, const BpConfig& cfg);

inline constexpr double kDefaultSuccessTolerance = 1e-4;

/// ‖c_hat - c‖_2 / ‖c‖_2 on the full lattice.
double relative_error(const SparsePolynomial& truth, const DecodeResult& result);

bool recovery_success(const SparsePolynomial& truth, const DecodeResult& result,
                      double tolerance = kDefaultSuccessTolerance);

}  // namespace detfourier
