#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace detfourier {

/// Integer frequency vector k in Z^d.
struct FrequencyIndex {
  std::vector<int> coords;

  std::size_t dimension() const { return coords.size(); }
  int operator[](std::size_t t) const { return coords[t]; }

  friend bool operator==(const FrequencyIndex&, const FrequencyIndex&) = default;
  friend auto operator<=>(const FrequencyIndex&, const FrequencyIndex&) = default;
};

std::string to_string(const FrequencyIndex& k);

/// Box of integer frequencies I_1 x ... x I_d with a fixed enumeration.
///
/// Enumeration is lexicographic: the first axis is the most significant and
/// each axis runs upward from its lower bound. Linear index i in [0, size())
/// and FrequencyIndex are in bijection through at() / index_of().
class FrequencyLattice {
 public:
  FrequencyLattice() = default;
  FrequencyLattice(std::vector<int> lower, std::vector<int> upper);

  /// The cube [-q, q]^d, with size (2q+1)^d.
  static FrequencyLattice uniform(int q, std::size_t d);

  std::size_t dimension() const { return lower_.size(); }
  std::size_t size() const { return size_; }
  int lower(std::size_t axis) const { return lower_[axis]; }
  int upper(std::size_t axis) const { return upper_[axis]; }
  std::size_t extent(std::size_t axis) const {
    return static_cast<std::size_t>(upper_[axis] - lower_[axis] + 1);
  }
  const std::vector<int>& lower_bounds() const { return lower_; }
  const std::vector<int>& upper_bounds() const { return upper_; }

  /// True when every axis is [-q, q] for one common q.
  bool is_uniform() const;

  bool contains(const FrequencyIndex& k) const;
  FrequencyIndex at(std::size_t linear) const;
  std::size_t index_of(const FrequencyIndex& k) const;

  friend bool operator==(const FrequencyLattice&, const FrequencyLattice&) = default;

 private:
  std::vector<int> lower_;
  std::vector<int> upper_;
  std::vector<std::size_t> stride_;
  std::size_t size_ = 0;
};

/// Ordered set of distinct frequencies of a common dimension.
class SupportSet {
 public:
  SupportSet() = default;
  explicit SupportSet(std::vector<FrequencyIndex> indices);

  static SupportSet from_columns(const FrequencyLattice& lattice,
                                 const std::vector<std::size_t>& columns);

  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  const FrequencyIndex& operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<FrequencyIndex>& indices() const { return indices_; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  bool contains(const FrequencyIndex& k) const;

  /// Column positions of the members in `lattice`; throws ValidationError
  /// when a member lies outside it.
  std::vector<std::size_t> columns(const FrequencyLattice& lattice) const;

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  std::vector<FrequencyIndex> indices_;
};

/// Exact primality for every 64-bit n (deterministic Miller-Rabin).
bool is_prime(std::uint64_t n);

/// Smallest prime p >= lower. Throws std::overflow_error past 2^64.
std::uint64_t next_prime_at_least(std::uint64_t lower);

/// Smallest prime N with N >= max{2q+1, (d-1)^2 (2M-1)^2 + 1}: the sample
/// count for which OMP provably recovers every M-sparse polynomial of degree
/// q in d variables from the deterministic points.
std::uint64_t theorem_sample_count(int q, std::size_t d, std::size_t sparsity);

/// Least beta such that every pair of distinct members differs, in some
/// nonzero coordinate, by at most beta in absolute value.
int beta_gamma(const SupportSet& gamma);

/// The 2q+1 points (m, floor(m/s^{1/d}), ..., floor(m/s^{(d-1)/d})), s = 2q+1,
/// for m = -q..q. Throws DegeneracyError when a quotient lies within 1e-9 of
/// an integer it does not exactly equal.
SupportSet gamma0_curve(int q, std::size_t d);

}  // namespace detfourier
