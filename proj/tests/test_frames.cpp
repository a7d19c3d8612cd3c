#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "detfourier/errors.hpp"
#include "detfourier/config.hpp"
#include "detfourier/frames.hpp"
#include "detfourier/rng.hpp"

namespace detfourier {
namespace {

SamplingMatrix deterministic_matrix(std::uint64_t n, int q, std::size_t d) {
  return build_matrix(deterministic_points(n, d), FrequencyLattice::uniform(q, d), true);
}

// max |<phi_a, phi_b>|/N over distinct lattice frequencies, with each inner
// product summed directly as sum_j exp(2 pi i (b - a).x_j) from exact
// integer phases; no matrix is formed.
double coherence_oracle(std::uint64_t n, int q, std::size_t d) {
  const auto x = deterministic_points(n, d);
  const auto lattice = FrequencyLattice::uniform(q, d);
  double best = 0.0;
  for (std::size_t a = 0; a < lattice.size(); ++a) {
    for (std::size_t b = a + 1; b < lattice.size(); ++b) {
      const auto ka = lattice.at(a);
      const auto kb = lattice.at(b);
      std::complex<long double> sum = 0;
      for (std::size_t j = 0; j < n; ++j) {
        long long phase = 0;
        for (std::size_t t = 0; t < d; ++t) {
          phase += static_cast<long long>(kb[t] - ka[t]) * static_cast<long long>(x.numerator(j, t));
        }
        const long long r = ((phase % static_cast<long long>(n)) + static_cast<long long>(n)) % static_cast<long long>(n);
        const long double angle = 2.0L * std::numbers::pi_v<long double> * r / static_cast<long double>(n);
        sum += std::complex<long double>(std::cos(angle), std::sin(angle));
      }
      best = std::max(best, static_cast<double>(std::abs(sum) / static_cast<long double>(n)));
    }
  }
  return best;
}

TEST(Coherence, OneDimensionalIsOrthogonal) {
  const auto report = coherence(deterministic_matrix(5, 2, 1));
  EXPECT_NEAR(report.mu, 0.0, 1e-12);
  EXPECT_EQ(report.rows, 5u);
  EXPECT_EQ(report.cols, 5u);
  EXPECT_EQ(report.welch_bound, 0.0);
}

TEST(Coherence, MatchesDirectSumOracleAndWeilBound) {
  for (auto [n, q, d] : {std::tuple{5ull, 1, 2ul}, std::tuple{7ull, 2, 2ul}, std::tuple{11ull, 1, 3ul},
                         std::tuple{13ull, 2, 3ul}}) {
    const auto report = coherence(deterministic_matrix(n, q, d));
    EXPECT_NEAR(report.mu, coherence_oracle(n, q, d), 1e-12) << n << " " << q << " " << d;
    EXPECT_LE(report.mu, (static_cast<double>(d) - 1.0) / std::sqrt(static_cast<double>(n)) + 1e-12);
    EXPECT_GE(report.mu, report.welch_bound - 1e-12);
    EXPECT_NE(report.column_a, report.column_b);
  }
  const auto small = coherence(deterministic_matrix(5, 1, 2));
  EXPECT_LE(small.mu, 0.4472136);
  EXPECT_NEAR(small.weil_bound, 1.0 / std::sqrt(5.0), 1e-15);
}

TEST(Coherence, ReportedPairAchievesMu) {
  const auto a = deterministic_matrix(11, 2, 2);
  const auto report = coherence(a);
  const auto inner = a.column(static_cast<Eigen::Index>(report.column_a))
                         .dot(a.column(static_cast<Eigen::Index>(report.column_b)));
  EXPECT_NEAR(std::abs(inner), report.mu, 1e-14);
  EXPECT_EQ(a.lattice().at(report.column_a), report.frequency_a);
}

TEST(Coherence, PaperScaleBounds) {
  const auto report = coherence(deterministic_matrix(83, 2, 5));
  EXPECT_EQ(report.cols, 3125u);
  EXPECT_NEAR(report.welch_bound, 0.108955, 1e-5);
  EXPECT_NEAR(report.weil_bound, 0.43906, 1e-5);
  EXPECT_LE(report.mu, report.weil_bound + 1e-12);
  EXPECT_GE(report.mu, report.welch_bound - 1e-12);
}

TEST(Coherence, WelchBoundHoldsForRandomMatrices) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto a = build_matrix(random_points_continuous(17, 2, seed), FrequencyLattice::uniform(3, 2), true);
    const auto report = coherence(a);
    EXPECT_GE(report.mu, report.welch_bound - 1e-12);
    const auto b = build_matrix(random_points_lattice(17, 2, 11, seed), FrequencyLattice::uniform(3, 2), true);
    EXPECT_GE(coherence(b).mu, welch_bound(17, 49) - 1e-12);
  }
}

TEST(Coherence, RequiresNormalizedInput) {
  const auto raw = build_matrix(deterministic_points(5, 2), FrequencyLattice::uniform(1, 2), false);
  EXPECT_THROW(coherence(raw), ValidationError);
}

TEST(WeilSum, GaussSumIsTight) {
  const auto check = weil_sum_check(5, {0, 1});
  EXPECT_NEAR(check.magnitude, std::sqrt(5.0), 1e-9);
  EXPECT_NEAR(check.bound, std::sqrt(5.0), 1e-15);
  EXPECT_TRUE(check.holds);
}

TEST(WeilSum, LinearSumVanishes) {
  const auto check = weil_sum_check(7, {1});
  EXPECT_NEAR(check.magnitude, 0.0, 1e-12);
  EXPECT_EQ(check.bound, 0.0);
  EXPECT_TRUE(check.holds);
}

TEST(WeilSum, ExhaustiveSmallPrimes) {
  for (long long p : {3, 5, 7, 11}) {
    for (std::size_t d : {2u, 3u}) {
      std::vector<long long> coeffs(d, 0);
      std::size_t checked = 0;
      while (true) {
        std::size_t t = 0;
        while (t < d && ++coeffs[t] == p) coeffs[t++] = 0;
        if (t == d) break;
        const auto check = weil_sum_check(static_cast<std::uint64_t>(p), coeffs);
        ASSERT_TRUE(check.holds) << "p=" << p << " magnitude=" << check.magnitude;
        ++checked;
      }
      EXPECT_EQ(checked, static_cast<std::size_t>(std::pow(p, d)) - 1);
    }
  }
}

TEST(WeilSum, Preconditions) {
  EXPECT_THROW(weil_sum_check(5, {5, 10}), ValidationError);
  EXPECT_THROW(weil_sum_check(9, {1, 1}), ValidationError);
  EXPECT_THROW(weil_sum_check(5, {}), ValidationError);
}

TEST(GramEigs, SingletonAndOrthogonalCases) {
  const auto a = deterministic_matrix(11, 2, 2);
  for (std::size_t c = 0; c < 25; c += 6) {
    const auto e = gram_extreme_eigs(a, std::vector<std::size_t>{c});
    EXPECT_NEAR(e.min, 1.0, 1e-12);
    EXPECT_NEAR(e.max, 1.0, 1e-12);
  }
  const auto ortho = deterministic_matrix(7, 3, 1);
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto cols = sample_without_replacement(7, 1 + trial % 7, rng);
    const auto e = gram_extreme_eigs(ortho, cols);
    EXPECT_NEAR(e.min, 1.0, 1e-9);
    EXPECT_NEAR(e.max, 1.0, 1e-9);
  }
}

TEST(GramEigs, GershgorinBound) {
  const auto a = deterministic_matrix(11, 2, 2);
  const double mu = coherence(a).mu;
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t size = 1 + static_cast<std::size_t>(trial % 6);
    const auto cols = sample_without_replacement(25, size, rng);
    const auto e = gram_extreme_eigs(a, cols);
    const double radius = (static_cast<double>(size) - 1.0) * mu;
    EXPECT_LE(e.max - 1.0, radius + 1e-12);
    EXPECT_LE(1.0 - e.min, radius + 1e-12);
  }
  EXPECT_THROW(gram_extreme_eigs(a, std::vector<std::size_t>{}), ValidationError);
}

TEST(Rip, OrderOneIsExact) {
  const auto report = rip_bruteforce(deterministic_matrix(11, 2, 2), 1);
  EXPECT_NEAR(report.delta_min, 0.0, 1e-12);
  EXPECT_EQ(report.supports_checked, 25u);
}

TEST(Rip, PairsGiveCoherenceExactly) {
  const auto a = deterministic_matrix(11, 1, 2);
  const auto report = rip_bruteforce(a, 2);
  const double mu = coherence(a).mu;
  EXPECT_NEAR(report.delta_min, mu, 1e-9);
  EXPECT_LE(report.delta_min, 1.0 / std::sqrt(11.0) + 1e-12);
}

TEST(Rip, GershgorinAndMonotone) {
  const auto a = deterministic_matrix(11, 2, 2);
  const double mu = coherence(a).mu;
  double previous = 0.0;
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto report = rip_bruteforce(a, k);
    EXPECT_LE(report.delta_min, (static_cast<double>(k) - 1.0) * mu + 1e-9);
    EXPECT_GE(report.delta_min, previous);
    EXPECT_EQ(report.per_size.size(), k);
    previous = report.delta_min;
  }
}

TEST(Rip, CombinatorialGuard) {
  const auto a = deterministic_matrix(83, 2, 5);
  EXPECT_THROW(rip_bruteforce(a, 3), ValidationError);
  EXPECT_THROW(rip_bruteforce(deterministic_matrix(11, 2, 2), 3, 1000), ValidationError);
}

TEST(Strip, TrivialCases) {
  const auto a = deterministic_matrix(11, 2, 2);
  const auto single = strip_estimate(a, 1, 0.01, 500, 1);
  EXPECT_EQ(single.successes, 500u);
  EXPECT_EQ(single.probability, 1.0);
  const auto ortho = strip_estimate(deterministic_matrix(7, 3, 1), 4, 1e-6, 500, 1);
  EXPECT_EQ(ortho.probability, 1.0);
}

TEST(Strip, IntervalAndReproducibility) {
  const auto a = deterministic_matrix(11, 2, 2);
  const auto est = strip_estimate(a, 4, 0.3, 2000, 77);
  EXPECT_LE(est.ci_low, est.probability);
  EXPECT_GE(est.ci_high, est.probability);
  EXPECT_GT(est.probability, 0.0);
  EXPECT_LT(est.probability, 1.0);
  const auto again = strip_estimate(a, 4, 0.3, 2000, 77);
  EXPECT_EQ(again.successes, est.successes);
  EXPECT_THROW(strip_estimate(a, 4, 1.5, 10, 1), ValidationError);
  EXPECT_THROW(strip_estimate(a, 0, 0.5, 10, 1), ValidationError);
}

TEST(Strip, WilsonInterval) {
  // p = 1/2, n = 100: centre 0.5, half-width 1.96 sqrt(0.25/100 + 1.96^2/40000) / (1 + 1.96^2/100).
  const auto [lo, hi] = wilson_interval(50, 100);
  EXPECT_NEAR(lo, 0.40383, 1e-4);
  EXPECT_NEAR(hi, 0.59617, 1e-4);
  const auto [lo1, hi1] = wilson_interval(10, 10);
  EXPECT_EQ(hi1, 1.0);
  EXPECT_NEAR(lo1, 0.7225, 1e-3);
}

TEST(Strip, DefaultOrder) {
  // 0.25 * 29 / (8 log 625) * (log(625/29)/log 29)^2 = 0.117 -> clamped to 1.
  EXPECT_EQ(strip_theorem_order(0.5, 29, 625), 1u);
  // N = 1009, D = 1009 * 1009 * 1009: 0.81 * 1009 / (8 * 20.74) * (2)^2 = 19.7 -> 19.
  EXPECT_EQ(strip_theorem_order(0.9, 1009, 1009ull * 1009 * 1009), 19u);
}

TEST(EigenStatistics, SingletonMeansAreOne) {
  const auto a = deterministic_matrix(11, 2, 2);
  const auto rows = eigen_statistics(a, {1}, 100, 3);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].mean_lambda_min, 1.0, 1e-12);
  EXPECT_NEAR(rows[0].mean_lambda_max, 1.0, 1e-12);
}

TEST(EigenStatistics, MonotoneInSparsity) {
  const auto a = deterministic_matrix(31, 2, 3);
  const auto rows = eigen_statistics(a, size_range(1, 8), 400, 9);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double n = static_cast<double>(rows[i].samples);
    const double slack_max = 3.0 * std::hypot(rows[i].sd_lambda_max, rows[i - 1].sd_lambda_max) / std::sqrt(n);
    const double slack_min = 3.0 * std::hypot(rows[i].sd_lambda_min, rows[i - 1].sd_lambda_min) / std::sqrt(n);
    EXPECT_GE(rows[i].mean_lambda_max, rows[i - 1].mean_lambda_max - slack_max);
    EXPECT_LE(rows[i].mean_lambda_min, rows[i - 1].mean_lambda_min + slack_min);
  }
  const auto again = eigen_statistics(a, size_range(1, 8), 400, 9);
  EXPECT_EQ(again.back().mean_lambda_max, rows.back().mean_lambda_max);
}

}  // namespace
}  // namespace detfourier
