#include "detfourier/core_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>

#include "detfourier/errors.hpp"

namespace detfourier {

std::string to_string(const FrequencyIndex& k) {
  std::string out = "(";
  for (std::size_t t = 0; t < k.coords.size(); ++t) {
    if (t) out += ",";
    out += std::to_string(k.coords[t]);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// FrequencyLattice

FrequencyLattice::FrequencyLattice(std::vector<int> lower, std::vector<int> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty() || lower_.size() != upper_.size()) {
    throw ValidationError("lattice: lower/upper bounds must be nonempty and of equal length");
  }
  stride_.assign(lower_.size(), 1);
  size_ = 1;
  for (std::size_t t = lower_.size(); t-- > 0;) {
    if (upper_[t] < lower_[t]) {
      throw ValidationError("lattice: empty axis " + std::to_string(t));
    }
    stride_[t] = size_;
    const auto ext = extent(t);
    if (size_ > std::numeric_limits<std::size_t>::max() / ext) {
      throw ValidationError("lattice: cardinality overflows");
    }
    size_ *= ext;
  }
}

FrequencyLattice FrequencyLattice::uniform(int q, std::size_t d) {
  if (q < 0 || d == 0) throw ValidationError("lattice: need q >= 0 and d >= 1");
  return FrequencyLattice(std::vector<int>(d, -q), std::vector<int>(d, q));
}

bool FrequencyLattice::is_uniform() const {
  for (std::size_t t = 0; t < lower_.size(); ++t) {
    if (lower_[t] != -upper_[t] || upper_[t] != upper_[0]) return false;
  }
  return !lower_.empty();
}

bool FrequencyLattice::contains(const FrequencyIndex& k) const {
  if (k.dimension() != dimension()) return false;
  for (std::size_t t = 0; t < lower_.size(); ++t) {
    if (k[t] < lower_[t] || k[t] > upper_[t]) return false;
  }
  return true;
}

FrequencyIndex FrequencyLattice::at(std::size_t linear) const {
  if (linear >= size_) throw std::out_of_range("lattice index out of range");
  FrequencyIndex k;
  k.coords.resize(lower_.size());
  for (std::size_t t = 0; t < lower_.size(); ++t) {
    k.coords[t] = lower_[t] + static_cast<int>(linear / stride_[t]);
    linear %= stride_[t];
  }
  return k;
}

std::size_t FrequencyLattice::index_of(const FrequencyIndex& k) const {
  if (!contains(k)) throw ValidationError("frequency " + to_string(k) + " outside lattice");
  std::size_t linear = 0;
  for (std::size_t t = 0; t < lower_.size(); ++t) {
    linear += static_cast<std::size_t>(k[t] - lower_[t]) * stride_[t];
  }
  return linear;
}

// ---------------------------------------------------------------------------
// SupportSet

SupportSet::SupportSet(std::vector<FrequencyIndex> indices) : indices_(std::move(indices)) {
  std::set<FrequencyIndex> seen;
  for (const auto& k : indices_) {
    if (k.dimension() != indices_.front().dimension()) {
      throw ValidationError("support: mixed dimensions");
    }
    if (!seen.insert(k).second) {
      throw ValidationError("support: duplicate index " + to_string(k));
    }
  }
}

SupportSet SupportSet::from_columns(const FrequencyLattice& lattice,
                                    const std::vector<std::size_t>& columns) {
  std::vector<FrequencyIndex> out;
  out.reserve(columns.size());
  for (auto c : columns) out.push_back(lattice.at(c));
  return SupportSet(std::move(out));
}

bool SupportSet::contains(const FrequencyIndex& k) const {
  return std::find(indices_.begin(), indices_.end(), k) != indices_.end();
}

std::vector<std::size_t> SupportSet::columns(const FrequencyLattice& lattice) const {
  std::vector<std::size_t> out;
  out.reserve(indices_.size());
  for (const auto& k : indices_) out.push_back(lattice.index_of(k));
  return out;
}

// ---------------------------------------------------------------------------
// Primes

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  // The first twelve primes as witnesses are exact for n < 3.3e24.
  constexpr std::uint64_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto a : kWitnesses) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime_at_least(std::uint64_t lower) {
  if (lower <= 2) return 2;
  for (std::uint64_t n = lower;; ++n) {
    if (is_prime(n)) return n;
    if (n == std::numeric_limits<std::uint64_t>::max()) {
      throw std::overflow_error("next_prime_at_least: no prime below 2^64");
    }
  }
}

std::uint64_t theorem_sample_count(int q, std::size_t d, std::size_t sparsity) {
  if (q < 0 || d == 0 || sparsity == 0) {
    throw ValidationError("theorem_sample_count: need q >= 0, d >= 1, M >= 1");
  }
  using u128 = unsigned __int128;
  const u128 a = static_cast<u128>(d - 1) * (d - 1);
  const u128 b = static_cast<u128>(2 * sparsity - 1) * (2 * sparsity - 1);
  const u128 coherence_bound = a * b + 1;
  const u128 degree_bound = 2 * static_cast<u128>(q) + 1;
  const u128 lower = std::max(coherence_bound, degree_bound);
  if (lower > std::numeric_limits<std::uint64_t>::max()) {
    throw std::overflow_error("theorem_sample_count: bound exceeds 64 bits");
  }
  return next_prime_at_least(static_cast<std::uint64_t>(lower));
}

// ---------------------------------------------------------------------------
// Support patterns

int beta_gamma(const SupportSet& gamma) {
  if (gamma.size() < 2) throw ValidationError("beta_gamma: need at least two frequencies");
  int beta = 0;
  for (std::size_t a = 0; a < gamma.size(); ++a) {
    for (std::size_t b = a + 1; b < gamma.size(); ++b) {
      int closest = std::numeric_limits<int>::max();
      for (std::size_t t = 0; t < gamma[a].dimension(); ++t) {
        const int diff = std::abs(gamma[a][t] - gamma[b][t]);
        if (diff > 0) closest = std::min(closest, diff);
      }
      beta = std::max(beta, closest);
    }
  }
  return beta;
}

namespace {

std::optional<__int128> checked_pow(__int128 base, std::size_t exp) {
  constexpr __int128 kLimit = static_cast<__int128>(1) << 120;
  __int128 out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && (out > kLimit / (base < 0 ? -base : base))) return std::nullopt;
    out *= base;
  }
  return out;
}

// floor(m / s^{t/d}). Near-integer quotients are resolved exactly through
// m^d == r^d * s^t, otherwise rejected.
int curve_floor(int m, int s, std::size_t t, std::size_t d) {
  const long double radix = std::pow(static_cast<long double>(s),
                                     static_cast<long double>(t) / static_cast<long double>(d));
  const long double quotient = static_cast<long double>(m) / radix;
  const long double nearest = std::nearbyint(quotient);
  if (std::fabs(quotient - nearest) >= 1e-9L) {
    return static_cast<int>(std::floor(quotient));
  }
  const auto r = static_cast<__int128>(nearest);
  const auto lhs = checked_pow(m, d);
  const auto rd = checked_pow(r, d);
  const auto st = checked_pow(s, t);
  if (lhs && rd && st && *rd <= (static_cast<__int128>(1) << 120) / *st) {
    if (*lhs == *rd * *st) return static_cast<int>(r);
  }
  throw DegeneracyError("gamma0_curve: quotient " + std::to_string(m) + "/" + std::to_string(s) +
                        "^(" + std::to_string(t) + "/" + std::to_string(d) +
                        ") too close to an integer to floor reliably");
}

}  // namespace

SupportSet gamma0_curve(int q, std::size_t d) {
  if (q < 0 || d == 0) throw ValidationError("gamma0_curve: need q >= 0 and d >= 1");
  const int s = 2 * q + 1;
  std::vector<FrequencyIndex> points;
  points.reserve(static_cast<std::size_t>(s));
  for (int m = -q; m <= q; ++m) {
    FrequencyIndex k;
    k.coords.push_back(m);
    for (std::size_t t = 1; t < d; ++t) k.coords.push_back(curve_floor(m, s, t, d));
    points.push_back(std::move(k));
  }
  return SupportSet(std::move(points));
}

}  // namespace detfourier
