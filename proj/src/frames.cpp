#include "detfourier/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "detfourier/errors.hpp"
#include "detfourier/parallel.hpp"
#include "detfourier/rng.hpp"

namespace detfourier {

namespace {

void require_normalized(const SamplingMatrix& a, const char* what) {
  if (!a.normalized()) {
    throw ValidationError(std::string(what) + ": matrix must be column-normalized");
  }
}

EigenExtremes extremes_of(const Eigen::MatrixXcd& gram) {
  if (gram.rows() == 1) {
    const double v = gram(0, 0).real();
    return {v, v};
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

Eigen::MatrixXcd gather_columns(const Eigen::MatrixXcd& a, const std::vector<std::size_t>& columns) {
  Eigen::MatrixXcd sub(a.rows(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t i = 0; i < columns.size(); ++i) {
    sub.col(static_cast<Eigen::Index>(i)) = a.col(static_cast<Eigen::Index>(columns[i]));
  }
  return sub;
}

}  // namespace

double welch_bound(std::size_t n, std::size_t cols) {
  if (cols <= n || n < 2) return 0.0;
  const double nn = static_cast<double>(n);
  const double dd = static_cast<double>(cols);
  return std::sqrt((dd - nn) / ((nn - 1.0) * dd));
}

CoherenceReport coherence(const SamplingMatrix& a) {
  require_normalized(a, "coherence");
  const Eigen::MatrixXcd& entries = a.entries();
  const Eigen::Index cols = entries.cols();
  constexpr Eigen::Index kBlock = 128;
  const auto blocks = static_cast<std::size_t>((cols + kBlock - 1) / kBlock);

  struct Best {
    double value = -1.0;
    Eigen::Index i = 0;
    Eigen::Index j = 0;
  };
  std::vector<Best> per_block(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    const Eigen::Index start = static_cast<Eigen::Index>(b) * kBlock;
    const Eigen::Index width = std::min(kBlock, cols - start);
    const Eigen::MatrixXcd gram =
        entries.middleCols(start, width).adjoint() * entries.rightCols(cols - start);
    Best best;
    for (Eigen::Index r = 0; r < width; ++r) {
      for (Eigen::Index c = r + 1; c < gram.cols(); ++c) {
        const double v = std::abs(gram(r, c));
        if (v > best.value) best = {v, start + r, start + c};
      }
    }
    per_block[b] = best;
  });

  CoherenceReport report;
  report.rows = static_cast<std::size_t>(entries.rows());
  report.cols = static_cast<std::size_t>(cols);
  report.welch_bound = welch_bound(report.rows, report.cols);
  report.weil_bound = (static_cast<double>(a.lattice().dimension()) - 1.0) /
                      std::sqrt(static_cast<double>(report.rows));
  Best best;
  for (const auto& candidate : per_block) {
    if (candidate.value > best.value) best = candidate;
  }
  if (best.value >= 0.0) {
    report.mu = best.value;
    report.column_a = static_cast<std::size_t>(best.i);
    report.column_b = static_cast<std::size_t>(best.j);
    report.frequency_a = a.lattice().at(report.column_a);
    report.frequency_b = a.lattice().at(report.column_b);
  }
  return report;
}

WeilCheck weil_sum_check(std::uint64_t p, const std::vector<long long>& coeffs) {
  if (!is_prime(p)) throw ValidationError("weil_sum_check: p=" + std::to_string(p) + " is not prime");
  if (coeffs.empty()) throw ValidationError("weil_sum_check: empty coefficient vector");
  const auto pp = static_cast<long long>(p);
  std::vector<std::uint64_t> reduced;
  bool nonconstant = false;
  for (auto m : coeffs) {
    const auto r = static_cast<std::uint64_t>(((m % pp) + pp) % pp);
    nonconstant = nonconstant || r != 0;
    reduced.push_back(r);
  }
  if (!nonconstant) {
    throw ValidationError("weil_sum_check: every coefficient is divisible by p");
  }
  Complex sum = 0.0;
  for (std::uint64_t x = 1; x <= p; ++x) {
    unsigned __int128 phase = 0;
    std::uint64_t power = 1;
    for (auto m : reduced) {
      power = static_cast<std::uint64_t>(static_cast<unsigned __int128>(power) * x % p);
      phase += static_cast<unsigned __int128>(m) * power;
    }
    const auto r = static_cast<std::uint64_t>(phase % p);
    sum += std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(p));
  }
  WeilCheck out;
  out.magnitude = std::abs(sum);
  out.bound = (static_cast<double>(coeffs.size()) - 1.0) * std::sqrt(static_cast<double>(p));
  out.holds = out.magnitude <= out.bound + 1e-8;
  return out;
}

EigenExtremes gram_extreme_eigs(const SamplingMatrix& a, const std::vector<std::size_t>& columns) {
  require_normalized(a, "gram_extreme_eigs");
  if (columns.empty()) throw ValidationError("gram_extreme_eigs: empty support");
  if (columns.size() > static_cast<std::size_t>(a.rows())) {
    throw ValidationError("gram_extreme_eigs: support larger than N");
  }
  const Eigen::MatrixXcd sub = gather_columns(a.entries(), columns);
  return extremes_of(sub.adjoint() * sub);
}

EigenExtremes gram_extreme_eigs(const SamplingMatrix& a, const SupportSet& support) {
  return gram_extreme_eigs(a, support.columns(a.lattice()));
}

namespace {

// C(n, k) saturating at `cap`.
std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
  if (k > n) return 0;
  long double value = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    value = value * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (value > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::size_t>(std::llround(value));
}

}  // namespace

RipReport rip_bruteforce(const SamplingMatrix& a, std::size_t order, std::size_t support_limit) {
  require_normalized(a, "rip_bruteforce");
  const auto cols = static_cast<std::size_t>(a.cols());
  if (order == 0 || order > cols) throw ValidationError("rip_bruteforce: order must be in [1, D]");
  std::size_t total = 0;
  for (std::size_t s = 1; s <= order; ++s) {
    total += binomial_capped(cols, s, support_limit);
    if (total > support_limit) {
      throw ValidationError("rip_bruteforce: more than " + std::to_string(support_limit) +
                            " supports; use strip_estimate instead");
    }
  }

  const Eigen::MatrixXcd gram = a.entries().adjoint() * a.entries();
  RipReport report;
  report.order = order;
  report.per_size.assign(order, EigenExtremes{std::numeric_limits<double>::infinity(),
                                              -std::numeric_limits<double>::infinity()});
  std::vector<std::size_t> combo;
  for (std::size_t s = 1; s <= order; ++s) {
    combo.resize(s);
    for (std::size_t i = 0; i < s; ++i) combo[i] = i;
    auto& slot = report.per_size[s - 1];
    while (true) {
      Eigen::MatrixXcd sub(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s));
      for (std::size_t r = 0; r < s; ++r) {
        for (std::size_t c = 0; c < s; ++c) {
          sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
              gram(static_cast<Eigen::Index>(combo[r]), static_cast<Eigen::Index>(combo[c]));
        }
      }
      const auto ext = extremes_of(sub);
      slot.min = std::min(slot.min, ext.min);
      slot.max = std::max(slot.max, ext.max);
      ++report.supports_checked;

      std::size_t i = s;
      while (i > 0 && combo[i - 1] == cols - s + i - 1) --i;
      if (i == 0) break;
      ++combo[i - 1];
      for (std::size_t r = i; r < s; ++r) combo[r] = combo[r - 1] + 1;
    }
    report.delta_min = std::max({report.delta_min, slot.max - 1.0, 1.0 - slot.min});
  }
  return report;
}

std::pair<double, double> wilson_interval(std::size_t successes, std::size_t trials) {
  if (trials == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double denom = 1.0 + z * z / n;
  const double centre = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  const double lo = successes == 0 ? 0.0 : std::max(0.0, centre - half);
  const double hi = successes == trials ? 1.0 : std::min(1.0, centre + half);
  return {lo, hi};
}

StripEstimate strip_estimate(const SamplingMatrix& a, std::size_t order, double delta,
                             std::size_t trials, std::uint64_t seed) {
  require_normalized(a, "strip_estimate");
  const auto cols = static_cast<std::size_t>(a.cols());
  if (order == 0 || order > cols) throw ValidationError("strip_estimate: order must be in [1, D]");
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("strip_estimate: delta must be in (0,1)");
  if (trials == 0) throw ValidationError("strip_estimate: trials must be >= 1");

  std::vector<char> success(trials, 0);
  parallel_for(trials, [&](std::size_t t) {
    Rng rng = make_rng(seed, {t});
    const auto support = sample_without_replacement(cols, order, rng);
    std::normal_distribution<double> gauss;
    Eigen::VectorXcd values(static_cast<Eigen::Index>(order));
    for (auto& v : values) v = Complex(gauss(rng), gauss(rng));
    values /= values.norm();
    Eigen::VectorXcd image = Eigen::VectorXcd::Zero(a.rows());
    for (std::size_t i = 0; i < order; ++i) {
      image += values(static_cast<Eigen::Index>(i)) * a.column(static_cast<Eigen::Index>(support[i]));
    }
    success[t] = std::abs(image.squaredNorm() - 1.0) <= delta ? 1 : 0;
  });

  StripEstimate out;
  out.order = order;
  out.delta = delta;
  out.trials = trials;
  for (char s : success) out.successes += static_cast<std::size_t>(s);
  out.probability = static_cast<double>(out.successes) / static_cast<double>(trials);
  std::tie(out.ci_low, out.ci_high) = wilson_interval(out.successes, trials);
  return out;
}

std::size_t strip_theorem_order(double delta, std::size_t n, std::size_t cols) {
  const double nn = static_cast<double>(n);
  const double dd = static_cast<double>(cols);
  const double ratio = std::log(dd / nn) / std::log(nn);
  const double order = delta * delta * nn / (8.0 * std::log(dd)) * ratio * ratio;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(order)));
}

std::vector<EigenStatRow> eigen_statistics(const SamplingMatrix& a,
                                           const std::vector<std::size_t>& sparsities,
                                           std::size_t samples, std::uint64_t seed) {
  require_normalized(a, "eigen_statistics");
  if (samples == 0) throw ValidationError("eigen_statistics: samples must be >= 1");
  const auto cols = static_cast<std::size_t>(a.cols());
  std::vector<EigenStatRow> rows;
  for (auto m : sparsities) {
    if (m == 0 || m > cols || m > static_cast<std::size_t>(a.rows())) {
      throw ValidationError("eigen_statistics: sparsity " + std::to_string(m) + " out of range");
    }
    std::vector<EigenExtremes> draws(samples);
    parallel_for(samples, [&](std::size_t s) {
      Rng rng = make_rng(seed, {m, s});
      draws[s] = gram_extreme_eigs(a, sample_without_replacement(cols, m, rng));
    });
    EigenStatRow row;
    row.sparsity = m;
    row.samples = samples;
    for (const auto& e : draws) {
      row.mean_lambda_min += e.min;
      row.mean_lambda_max += e.max;
    }
    row.mean_lambda_min /= static_cast<double>(samples);
    row.mean_lambda_max /= static_cast<double>(samples);
    if (samples > 1) {
      double vmin = 0.0, vmax = 0.0;
      for (const auto& e : draws) {
        vmin += (e.min - row.mean_lambda_min) * (e.min - row.mean_lambda_min);
        vmax += (e.max - row.mean_lambda_max) * (e.max - row.mean_lambda_max);
      }
      row.sd_lambda_min = std::sqrt(vmin / static_cast<double>(samples - 1));
      row.sd_lambda_max = std::sqrt(vmax / static_cast<double>(samples - 1));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace detfourier
