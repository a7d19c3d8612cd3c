#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "detfourier/core_index.hpp"

namespace detfourier {

using Complex = std::complex<double>;

enum class SamplingModel { deterministic, uniform_continuous, uniform_lattice };

std::string to_string(SamplingModel model);
SamplingModel parse_sampling_model(const std::string& name);

struct Provenance {
  SamplingModel model = SamplingModel::deterministic;
  std::uint64_t seed = 0;     // random models only
  std::uint64_t modulus = 0;  // N for deterministic, m for uniform-lattice

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// N points on the unit torus [0,1)^d.
///
/// Deterministic and lattice sets are rational: coordinate (j, t) equals
/// numerator(j, t) / denominator() exactly, and phases are formed from the
/// integer numerators.
class SamplingSet {
 public:
  /// Real-valued points, row-major N x d.
  SamplingSet(std::size_t dimension, std::vector<double> coords, Provenance provenance);
  /// Rational points numerators / denominator, row-major N x d.
  SamplingSet(std::size_t dimension, std::vector<std::uint64_t> numerators,
              std::uint64_t denominator, Provenance provenance);

  std::size_t size() const { return dimension_ ? coords_.size() / dimension_ : 0; }
  std::size_t dimension() const { return dimension_; }
  std::span<const double> point(std::size_t j) const {
    return {coords_.data() + j * dimension_, dimension_};
  }
  double coordinate(std::size_t j, std::size_t t) const { return coords_[j * dimension_ + t]; }

  bool is_rational() const { return denominator_ != 0; }
  std::uint64_t denominator() const { return denominator_; }
  std::uint64_t numerator(std::size_t j, std::size_t t) const {
    return numerators_[j * dimension_ + t];
  }
  const Provenance& provenance() const { return provenance_; }

  /// k . x_j mod 1, exact for rational sets.
  double phase_turns(std::size_t j, const FrequencyIndex& k) const;

  friend bool operator==(const SamplingSet&, const SamplingSet&) = default;

 private:
  std::size_t dimension_ = 0;
  std::vector<double> coords_;
  std::vector<std::uint64_t> numerators_;
  std::uint64_t denominator_ = 0;
  Provenance provenance_;
};

/// x_j = (j, j^2, ..., j^d)/N mod 1 for j = 1..N, N prime. Row j-1 holds x_j,
/// so the last row is the origin.
SamplingSet deterministic_points(std::uint64_t n, std::size_t d);

/// N i.i.d. uniform points in [0,1)^d.
SamplingSet random_points_continuous(std::size_t n, std::size_t d, std::uint64_t seed);

/// N i.i.d. uniform points of the grid {a/m : a in {0..m-1}^d}.
SamplingSet random_points_lattice(std::size_t n, std::size_t d, std::uint64_t modulus,
                                  std::uint64_t seed);

/// Axes I_t = [-(p_t-1)/2, (p_t-1)/2], or [0,1] when p_t = 2, for a
/// non-increasing list of primes.
FrequencyLattice mixed_radix_lattice(const std::vector<std::uint64_t>& primes);

/// Dense N x D matrix of characters exp(2 pi i k.x_j), rows follow the
/// sampling set and columns follow the lattice enumeration.
class SamplingMatrix {
 public:
  SamplingMatrix(Eigen::MatrixXcd entries, SamplingSet points, FrequencyLattice lattice,
                 bool normalized);

  const Eigen::MatrixXcd& entries() const { return entries_; }
  const SamplingSet& points() const { return points_; }
  const FrequencyLattice& lattice() const { return lattice_; }
  bool normalized() const { return normalized_; }
  Eigen::Index rows() const { return entries_.rows(); }
  Eigen::Index cols() const { return entries_.cols(); }
  auto column(Eigen::Index k) const { return entries_.col(k); }

  /// Copy scaled by 1/sqrt(N); returns *this unchanged when already normalized.
  SamplingMatrix normalized_copy() const;

 private:
  Eigen::MatrixXcd entries_;
  SamplingSet points_;
  FrequencyLattice lattice_;
  bool normalized_ = false;
};

SamplingMatrix build_matrix(const SamplingSet& points, const FrequencyLattice& lattice,
                            bool normalized);

/// f(x) = sum_{k in T} c_k exp(2 pi i k.x).
class SparsePolynomial {
 public:
  SparsePolynomial(FrequencyLattice lattice, SupportSet support,
                   std::vector<Complex> coefficients);

  const FrequencyLattice& lattice() const { return lattice_; }
  const SupportSet& support() const { return support_; }
  const std::vector<Complex>& coefficients() const { return coefficients_; }
  std::size_t sparsity() const { return support_.size(); }

  /// Coefficients laid out on the full lattice.
  Eigen::VectorXcd dense() const;

 private:
  FrequencyLattice lattice_;
  SupportSet support_;
  std::vector<Complex> coefficients_;
};

/// Samples y_j = f(x_j) by direct summation over the support.
Eigen::VectorXcd evaluate(const SparsePolynomial& f, const SamplingSet& points);

}  // namespace detfourier
