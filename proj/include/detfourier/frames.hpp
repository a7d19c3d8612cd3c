#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "detfourier/core_index.hpp"
#include "detfourier/sampling.hpp"

namespace detfourier {

struct CoherenceReport {
  double mu = 0.0;  // max_{i != j} |<a_i, a_j>|
  std::size_t column_a = 0;
  std::size_t column_b = 0;
  FrequencyIndex frequency_a;
  FrequencyIndex frequency_b;
  double welch_bound = 0.0;
  double weil_bound = 0.0;  // (d-1)/sqrt(N)
  std::size_t rows = 0;
  std::size_t cols = 0;
};

/// sqrt((D-N)/((N-1)D)), clamped to 0 when D <= N.
double welch_bound(std::size_t n, std::size_t cols);

/// Exact scan of all D(D-1)/2 column pairs of a normalized matrix. Ties go to
/// the lexicographically smallest pair.
CoherenceReport coherence(const SamplingMatrix& a);

struct WeilCheck {
  double magnitude = 0.0;
  double bound = 0.0;
  bool holds = false;
};

/// |sum_{x=1}^p exp(2 pi i (m_1 x + ... + m_d x^d)/p)| against (d-1) sqrt(p),
/// where d = coeffs.size().
WeilCheck weil_sum_check(std::uint64_t p, const std::vector<long long>& coeffs);

struct EigenExtremes {
  double min = 1.0;
  double max = 1.0;
};

/// Extreme eigenvalues of the Hermitian Gram A_T^* A_T.
EigenExtremes gram_extreme_eigs(const SamplingMatrix& a, const std::vector<std::size_t>& columns);
EigenExtremes gram_extreme_eigs(const SamplingMatrix& a, const SupportSet& support);

struct RipReport {
  std::size_t order = 0;
  double delta_min = 0.0;
  /// Entry s-1: smallest lambda_min and largest lambda_max over |T| = s.
  std::vector<EigenExtremes> per_size;
  std::size_t supports_checked = 0;
};

inline constexpr std::size_t kRipSupportLimit = 1'000'000;

/// max over |T| <= k of max(lambda_max - 1, 1 - lambda_min), by enumerating
/// every support. Throws ValidationError above `support_limit` supports.
RipReport rip_bruteforce(const SamplingMatrix& a, std::size_t order,
                         std::size_t support_limit = kRipSupportLimit);

struct StripEstimate {
  std::size_t order = 0;
  double delta = 0.0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double probability = 0.0;
  double ci_low = 0.0;   // Wilson 95%
  double ci_high = 0.0;
};

/// Monte-Carlo probability that |‖Ay‖^2 - 1| <= delta for unit-norm y with a
/// uniform size-k support and rotation-invariant complex values. Trial t uses
/// the substream (seed, t).
StripEstimate strip_estimate(const SamplingMatrix& a, std::size_t order, double delta,
                             std::size_t trials, std::uint64_t seed);

/// floor(delta^2 N / (8 log D) * (log(D/N) / log N)^2), at least 1.
std::size_t strip_theorem_order(double delta, std::size_t n, std::size_t cols);

/// Wilson score interval for `successes` out of `trials` at z = 1.96.
std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials);

struct EigenStatRow {
  std::size_t sparsity = 0;
  std::size_t samples = 0;
  double mean_lambda_min = 0.0;
  double mean_lambda_max = 0.0;
  double sd_lambda_min = 0.0;
  double sd_lambda_max = 0.0;
};

/// Sample means of the Gram extreme eigenvalues over uniform supports of each
/// requested size. Sample s of size M uses the substream (seed, M, s).
std::vector<EigenStatRow> eigen_statistics(const SamplingMatrix& a,
                                           const std::vector<std::size_t>& sparsities,
                                           std::size_t samples, std::uint64_t seed);

}  // namespace detfourier
