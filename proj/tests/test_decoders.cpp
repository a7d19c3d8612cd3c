#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Cholesky>

#include "detfourier/decoders.hpp"
#include "detfourier/errors.hpp"
#include "detfourier/experiments.hpp"
#include "detfourier/frames.hpp"

namespace detfourier {
namespace {

SamplingMatrix theorem_matrix() {
  // d = 2, q = 2: N = 11 is the smallest prime >= max{5, (2-1)^2 (2*2-1)^2 + 1}.
  return build_matrix(deterministic_points(11, 2), FrequencyLattice::uniform(2, 2), false);
}

Eigen::VectorXcd random_unit_coefficients(Rng& rng, std::size_t m) {
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd c(static_cast<Eigen::Index>(m));
  for (auto& v : c) v = Complex(gauss(rng), gauss(rng));
  return c / c.norm();
}

TEST(Omp, SingleColumnInOneStep) {
  const auto a = theorem_matrix();
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    const auto result = omp(a, a.column(k), {3, 1e-10});
    ASSERT_EQ(result.columns, (std::vector<std::size_t>{static_cast<std::size_t>(k)}));
    EXPECT_EQ(result.iterations, 1u);
    EXPECT_NEAR(std::abs(result.coefficients(k) - Complex(1.0, 0.0)), 0.0, 1e-12);
    EXPECT_LT(result.residual_history.back(), 1e-12);
    EXPECT_TRUE(result.converged);
  }
}

TEST(Omp, RecoversEveryTwoSparseSupport) {
  const auto a = theorem_matrix();
  ASSERT_LT(3.0 * coherence(a.normalized_copy()).mu, 1.0);
  Rng rng(11);
  std::size_t supports = 0;
  for (std::size_t i = 0; i < 25; ++i) {
    for (std::size_t j = i + 1; j < 25; ++j) {
      const auto c = random_unit_coefficients(rng, 2);
      const SparsePolynomial f(a.lattice(), SupportSet::from_columns(a.lattice(), {i, j}), {c(0), c(1)});
      const auto result = omp(a, evaluate(f, a.points()), {2, 0.0});
      ASSERT_LT(relative_error(f, result), 1e-8) << i << "," << j;
      ++supports;
    }
  }
  EXPECT_EQ(supports, 300u);
}

TEST(Omp, ZeroSignal) {
  const auto a = theorem_matrix();
  const auto result = omp(a, Eigen::VectorXcd::Zero(11), {4, 0.0});
  EXPECT_TRUE(result.columns.empty());
  EXPECT_TRUE(result.support.empty());
  EXPECT_EQ(result.iterations, 0u);
  EXPECT_EQ(result.coefficients.norm(), 0.0);
}

TEST(Omp, ResidualsNonincreasingAndNoRepeats) {
  const auto a = build_matrix(deterministic_points(31, 3), FrequencyLattice::uniform(2, 3), false);
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_sparse_signal(a.lattice(), 1 + static_cast<std::size_t>(trial % 12), rng);
    const auto result = omp(a, evaluate(f, a.points()), {20, 0.0});
    std::set<std::size_t> distinct(result.columns.begin(), result.columns.end());
    ASSERT_EQ(distinct.size(), result.columns.size());
    ASSERT_LE(result.support.size(), std::min<std::size_t>(result.iterations, 31));
    for (std::size_t i = 1; i < result.residual_history.size(); ++i) {
      ASSERT_LE(result.residual_history[i], result.residual_history[i - 1] * (1.0 + 1e-12) + 1e-12);
    }
    // Selected columns are orthogonal to the final residual.
    Eigen::VectorXcd residual = evaluate(f, a.points()) - a.entries() * result.coefficients;
    for (auto col : result.columns) {
      ASSERT_LT(std::abs(a.column(static_cast<Eigen::Index>(col)).dot(residual)), 1e-9 * std::max(1.0, residual.norm() + 1.0));
    }
  }
}

TEST(Omp, ToleranceStopsEarly) {
  const auto a = theorem_matrix();
  const Eigen::VectorXcd y = a.column(3) + 1e-3 * a.column(7);
  const auto loose = omp(a, y, {0, 0.1});
  EXPECT_EQ(loose.iterations, 1u);
  const auto tight = omp(a, y, {0, 1e-10});
  EXPECT_EQ(tight.iterations, 2u);
}

TEST(Omp, InvalidConfig) {
  const auto a = theorem_matrix();
  EXPECT_THROW(omp(a, a.column(0), {0, 0.0}), ValidationError);
  EXPECT_THROW(omp(a, Eigen::VectorXcd::Ones(3), {1, 0.0}), ValidationError);
}

TEST(RestrictedLeastSquares, SingleColumnProjection) {
  const auto a = theorem_matrix();
  Rng rng(8);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd y(11);
  for (auto& v : y) v = Complex(gauss(rng), gauss(rng));
  for (std::size_t k : {0u, 12u, 24u}) {
    const auto z = restricted_least_squares(a.entries(), {k}, y);
    const Complex expected = a.column(static_cast<Eigen::Index>(k)).dot(y) / 11.0;
    EXPECT_LT(std::abs(z(0) - expected), 1e-12);
  }
}

TEST(RestrictedLeastSquares, SpanGivesZeroResidual) {
  const auto a = theorem_matrix();
  const std::vector<std::size_t> cols{1, 5, 9, 20};
  const Eigen::VectorXcd y = 2.0 * a.column(1) - Complex(0, 1) * a.column(9) + 0.5 * a.column(20);
  const auto z = restricted_least_squares(a.entries(), cols, y);
  Eigen::VectorXcd residual = y;
  for (std::size_t i = 0; i < cols.size(); ++i) residual -= z(static_cast<Eigen::Index>(i)) * a.column(static_cast<Eigen::Index>(cols[i]));
  EXPECT_LT(residual.norm(), 1e-12);
  EXPECT_LT(std::abs(z(1)), 1e-12);
}

TEST(RestrictedLeastSquares, MatchesNormalEquations) {
  const auto a = build_matrix(random_points_continuous(40, 2, 6), FrequencyLattice::uniform(3, 2), false);
  Rng rng(12);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 30; ++trial) {
    const auto cols = sample_without_replacement(49, 1 + static_cast<std::size_t>(trial % 10), rng);
    Eigen::VectorXcd y(40);
    for (auto& v : y) v = Complex(gauss(rng), gauss(rng));
    const auto z = restricted_least_squares(a.entries(), cols, y);
    Eigen::MatrixXcd sub(40, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < cols.size(); ++i) sub.col(static_cast<Eigen::Index>(i)) = a.column(static_cast<Eigen::Index>(cols[i]));
    const Eigen::VectorXcd normal = (sub.adjoint() * sub).ldlt().solve(sub.adjoint() * y);
    ASSERT_LT((z - normal).norm(), 1e-9 * std::max(1.0, normal.norm()));
    const Eigen::VectorXcd residual = y - sub * z;
    ASSERT_LT((sub.adjoint() * residual).norm(), 1e-9 * y.norm());
  }
}

TEST(RestrictedLeastSquares, RankDeficiency) {
  // On the grid {0, 1/2}, frequencies k and k + 2 give identical columns.
  const auto x = random_points_lattice(6, 1, 2, 1);
  const auto a = build_matrix(x, FrequencyLattice::uniform(2, 1), false);
  EXPECT_THROW(restricted_least_squares(a.entries(), {0, 2}, a.column(0)), DegeneracyError);
  EXPECT_THROW(restricted_least_squares(a.entries(), {1, 3}, a.column(1)), DegeneracyError);
}

TEST(BasisPursuit, SingleColumn) {
  const auto a = theorem_matrix();
  for (Eigen::Index k : {0, 7, 24}) {
    const auto result = basis_pursuit(a, a.column(k), BpConfig{});
    Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(25);
    expected(k) = 1.0;
    EXPECT_LT((result.coefficients - expected).norm(), 1e-6);
    EXPECT_TRUE(result.converged);
    const auto greedy = omp(a, a.column(k), {1, 0.0});
    EXPECT_EQ(result.columns, greedy.columns);
  }
}

TEST(BasisPursuit, RecoversEveryTwoSparseSupport) {
  const auto a = theorem_matrix();
  Rng rng(21);
  for (std::size_t i = 0; i < 25; ++i) {
    for (std::size_t j = i + 1; j < 25; ++j) {
      const auto c = random_unit_coefficients(rng, 2);
      const SparsePolynomial f(a.lattice(), SupportSet::from_columns(a.lattice(), {i, j}), {c(0), c(1)});
      const auto y = evaluate(f, a.points());
      const auto result = basis_pursuit(a, y, BpConfig{});
      ASSERT_LT(relative_error(f, result), 1e-5) << i << "," << j;
      ASSERT_LE((a.entries() * result.coefficients - y).norm() / y.norm(), 1e-6);
      ASSERT_LE(result.coefficients.cwiseAbs().sum(), f.dense().cwiseAbs().sum() + 1e-5);
    }
  }
}

TEST(BasisPursuit, ZeroSignal) {
  const auto result = basis_pursuit(theorem_matrix(), Eigen::VectorXcd::Zero(11), BpConfig{});
  EXPECT_LE(result.iterations, 1u);
  EXPECT_EQ(result.coefficients.norm(), 0.0);
  EXPECT_TRUE(result.converged);
}

TEST(BasisPursuit, NonConvergenceStillFeasible) {
  const auto a = build_matrix(deterministic_points(31, 3), FrequencyLattice::uniform(2, 3), false);
  const auto f = random_sparse_signal(a.lattice(), 6, 99);
  const auto y = evaluate(f, a.points());
  BpConfig cfg;
  cfg.max_iterations = 3;
  const auto result = basis_pursuit(a, y, cfg);
  EXPECT_FALSE(result.converged);
  EXPECT_EQ(result.iterations, 3u);
  EXPECT_LE((a.entries() * result.coefficients - y).norm() / y.norm(), 1e-6);
  EXPECT_LE(result.support.size(), 31u);
}

TEST(BasisPursuit, L1MinimalityWitness) {
  const auto a = build_matrix(deterministic_points(31, 3), FrequencyLattice::uniform(2, 3), false);
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_sparse_signal(a.lattice(), 2 + static_cast<std::size_t>(trial % 8), rng);
    const auto y = evaluate(f, a.points());
    const auto result = basis_pursuit(a, y, BpConfig{});
    EXPECT_LE(result.coefficients.cwiseAbs().sum(), f.dense().cwiseAbs().sum() + 1e-5);
    EXPECT_LE((a.entries() * result.coefficients - y).norm() / y.norm(), 1e-6);
  }
}

TEST(BasisPursuit, InvalidConfig) {
  const auto a = theorem_matrix();
  BpConfig cfg;
  cfg.rho = 0.0;
  EXPECT_THROW(basis_pursuit(a, a.column(0), cfg), ValidationError);
  cfg = BpConfig{};
  cfg.primal_tolerance = 0.0;
  EXPECT_THROW(basis_pursuit(a, a.column(0), cfg), ValidationError);
}

// Whenever (2M-1) mu < 1, OMP and BP both recover, with equal supports.
TEST(Decoders, CoherenceConditionGuaranteesAgreement) {
  struct Case {
    std::uint64_t n;
    int q;
    std::size_t d;
  };
  for (const auto& cs : {Case{11, 2, 2}, Case{29, 2, 2}, Case{53, 2, 3}}) {
    const auto a = build_matrix(deterministic_points(cs.n, cs.d), FrequencyLattice::uniform(cs.q, cs.d), false);
    const double mu = coherence(a.normalized_copy()).mu;
    Rng rng(cs.n);
    for (std::size_t m = 1; (2.0 * static_cast<double>(m) - 1.0) * mu < 1.0; ++m) {
      for (int trial = 0; trial < 200; ++trial) {
        const auto f = random_sparse_signal(a.lattice(), m, rng);
        const auto y = evaluate(f, a.points());
        const auto g = omp(a, y, {m, 0.0});
        const auto b = basis_pursuit(a, y, BpConfig{});
        ASSERT_TRUE(recovery_success(f, g, 1e-6)) << "omp n=" << cs.n << " M=" << m;
        ASSERT_TRUE(recovery_success(f, b, 1e-6)) << "bp n=" << cs.n << " M=" << m;
        auto sorted = g.columns;
        std::sort(sorted.begin(), sorted.end());
        ASSERT_EQ(sorted, b.columns);
      }
    }
  }
}

TEST(RecoverySuccess, Examples) {
  const auto a = theorem_matrix();
  const auto f = random_sparse_signal(a.lattice(), 3, 1);
  DecodeResult exact;
  exact.coefficients = f.dense();
  EXPECT_TRUE(recovery_success(f, exact));
  DecodeResult zero;
  zero.coefficients = Eigen::VectorXcd::Zero(25);
  EXPECT_FALSE(recovery_success(f, zero));
  DecodeResult perturbed;
  perturbed.coefficients = f.dense() * Complex(1.0 + 1e-3, 0.0);
  EXPECT_NEAR(relative_error(f, perturbed), 1e-3, 1e-12);
  EXPECT_FALSE(recovery_success(f, perturbed, 1e-4));
  EXPECT_TRUE(recovery_success(f, perturbed, 2e-3));
  EXPECT_THROW(recovery_success(f, exact, 0.0), ValidationError);
}

}  // namespace
}  // namespace detfourier
