#include "detfourier/sampling.hpp"

#include <cmath>
#include <numbers>

#include "detfourier/errors.hpp"
#include "detfourier/parallel.hpp"
#include "detfourier/rng.hpp"

namespace detfourier {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t residue(long long k, std::uint64_t modulus) {
  const auto m = static_cast<long long>(modulus);
  return static_cast<std::uint64_t>(((k % m) + m) % m);
}

Complex unit_phase(double turns) { return std::polar(1.0, kTwoPi * turns); }

}  // namespace

std::string to_string(SamplingModel model) {
  switch (model) {
    case SamplingModel::deterministic: return "deterministic";
    case SamplingModel::uniform_continuous: return "continuous";
    case SamplingModel::uniform_lattice: return "lattice";
  }
  return "unknown";
}

SamplingModel parse_sampling_model(const std::string& name) {
  if (name == "deterministic") return SamplingModel::deterministic;
  if (name == "continuous" || name == "uniform-continuous") return SamplingModel::uniform_continuous;
  if (name == "lattice" || name == "uniform-lattice") return SamplingModel::uniform_lattice;
  throw ValidationError("unknown sampling model '" + name + "'");
}

// ---------------------------------------------------------------------------
// SamplingSet

SamplingSet::SamplingSet(std::size_t dimension, std::vector<double> coords, Provenance provenance)
    : dimension_(dimension), coords_(std::move(coords)), provenance_(provenance) {
  if (dimension_ == 0 || coords_.size() % dimension_ != 0) {
    throw ValidationError("sampling set: coordinate count is not a multiple of d");
  }
  for (double x : coords_) {
    if (!(x >= 0.0 && x < 1.0)) throw ValidationError("sampling set: coordinate outside [0,1)");
  }
}

SamplingSet::SamplingSet(std::size_t dimension, std::vector<std::uint64_t> numerators,
                         std::uint64_t denominator, Provenance provenance)
    : dimension_(dimension),
      numerators_(std::move(numerators)),
      denominator_(denominator),
      provenance_(provenance) {
  if (dimension_ == 0 || numerators_.size() % dimension_ != 0) {
    throw ValidationError("sampling set: numerator count is not a multiple of d");
  }
  if (denominator_ == 0) throw ValidationError("sampling set: zero denominator");
  coords_.reserve(numerators_.size());
  for (auto a : numerators_) {
    if (a >= denominator_) throw ValidationError("sampling set: numerator >= denominator");
    coords_.push_back(static_cast<double>(a) / static_cast<double>(denominator_));
  }
}

double SamplingSet::phase_turns(std::size_t j, const FrequencyIndex& k) const {
  if (is_rational()) {
    unsigned __int128 acc = 0;
    for (std::size_t t = 0; t < dimension_; ++t) {
      acc += static_cast<unsigned __int128>(residue(k[t], denominator_)) * numerator(j, t);
    }
    return static_cast<double>(static_cast<std::uint64_t>(acc % denominator_)) /
           static_cast<double>(denominator_);
  }
  long double acc = 0;
  for (std::size_t t = 0; t < dimension_; ++t) {
    acc += static_cast<long double>(k[t]) * coordinate(j, t);
  }
  return static_cast<double>(acc - std::floor(acc));
}

// ---------------------------------------------------------------------------
// Point constructions

SamplingSet deterministic_points(std::uint64_t n, std::size_t d) {
  if (!is_prime(n)) throw ValidationError("deterministic points: N=" + std::to_string(n) + " is not prime");
  if (d == 0) throw ValidationError("deterministic points: d must be >= 1");
  std::vector<std::uint64_t> numerators;
  numerators.reserve(n * d);
  for (std::uint64_t j = 1; j <= n; ++j) {
    const std::uint64_t base = j % n;
    std::uint64_t power = 1;
    for (std::size_t t = 0; t < d; ++t) {
      power = static_cast<std::uint64_t>(static_cast<unsigned __int128>(power) * base % n);
      numerators.push_back(power);
    }
  }
  return SamplingSet(d, std::move(numerators), n, {SamplingModel::deterministic, 0, n});
}

SamplingSet random_points_continuous(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n == 0 || d == 0) throw ValidationError("random points: need N >= 1 and d >= 1");
  Rng rng(seed);
  std::vector<double> coords(n * d);
  for (auto& x : coords) x = uniform01(rng);
  return SamplingSet(d, std::move(coords), {SamplingModel::uniform_continuous, seed, 0});
}

SamplingSet random_points_lattice(std::size_t n, std::size_t d, std::uint64_t modulus,
                                  std::uint64_t seed) {
  if (n == 0 || d == 0) throw ValidationError("random points: need N >= 1 and d >= 1");
  if (modulus < 2) throw ValidationError("random lattice points: modulus must be >= 2");
  Rng rng(seed);
  std::uniform_int_distribution<std::uint64_t> draw(0, modulus - 1);
  std::vector<std::uint64_t> numerators(n * d);
  for (auto& a : numerators) a = draw(rng);
  return SamplingSet(d, std::move(numerators), modulus,
                     {SamplingModel::uniform_lattice, seed, modulus});
}

FrequencyLattice mixed_radix_lattice(const std::vector<std::uint64_t>& primes) {
  if (primes.empty()) throw ValidationError("mixed radix lattice: empty prime list");
  std::vector<int> lower, upper;
  for (std::size_t t = 0; t < primes.size(); ++t) {
    const auto p = primes[t];
    if (!is_prime(p)) throw ValidationError("mixed radix lattice: " + std::to_string(p) + " is not prime");
    if (t > 0 && p > primes[t - 1]) {
      throw ValidationError("mixed radix lattice: primes must be non-increasing");
    }
    if (p == 2) {
      lower.push_back(0);
      upper.push_back(1);
    } else {
      const int half = static_cast<int>((p - 1) / 2);
      lower.push_back(-half);
      upper.push_back(half);
    }
  }
  return FrequencyLattice(std::move(lower), std::move(upper));
}

// ---------------------------------------------------------------------------
// Matrices

SamplingMatrix::SamplingMatrix(Eigen::MatrixXcd entries, SamplingSet points,
                               FrequencyLattice lattice, bool normalized)
    : entries_(std::move(entries)),
      points_(std::move(points)),
      lattice_(std::move(lattice)),
      normalized_(normalized) {
  if (static_cast<std::size_t>(entries_.rows()) != points_.size() ||
      static_cast<std::size_t>(entries_.cols()) != lattice_.size()) {
    throw ValidationError("sampling matrix: shape does not match points x lattice");
  }
}

SamplingMatrix SamplingMatrix::normalized_copy() const {
  if (normalized_) return *this;
  const double scale = 1.0 / std::sqrt(static_cast<double>(rows()));
  return SamplingMatrix(entries_ * scale, points_, lattice_, true);
}

SamplingMatrix build_matrix(const SamplingSet& points, const FrequencyLattice& lattice,
                            bool normalized) {
  const std::size_t d = points.dimension();
  if (lattice.dimension() != d) {
    throw ValidationError("build_matrix: lattice dimension " + std::to_string(lattice.dimension()) +
                          " != point dimension " + std::to_string(d));
  }
  const auto n = static_cast<Eigen::Index>(points.size());
  const auto cols = static_cast<Eigen::Index>(lattice.size());
  const double scale = normalized ? 1.0 / std::sqrt(static_cast<double>(n)) : 1.0;
  Eigen::MatrixXcd entries(n, cols);

  std::vector<FrequencyIndex> freqs;
  freqs.reserve(lattice.size());
  for (std::size_t c = 0; c < lattice.size(); ++c) freqs.push_back(lattice.at(c));

  if (points.is_rational()) {
    const auto den = points.denominator();
    std::vector<std::uint64_t> k_mod(lattice.size() * d);
    for (std::size_t c = 0; c < freqs.size(); ++c) {
      for (std::size_t t = 0; t < d; ++t) k_mod[c * d + t] = residue(freqs[c][t], den);
    }
    // Unit roots exp(2 pi i r / den), tabulated when the table stays small.
    std::vector<Complex> roots;
    if (den <= (1u << 22)) {
      roots.resize(den);
      for (std::uint64_t r = 0; r < den; ++r) {
        roots[r] = unit_phase(static_cast<double>(r) / static_cast<double>(den));
      }
    }
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t j) {
      for (std::size_t c = 0; c < freqs.size(); ++c) {
        unsigned __int128 acc = 0;
        for (std::size_t t = 0; t < d; ++t) {
          acc += static_cast<unsigned __int128>(k_mod[c * d + t]) * points.numerator(j, t);
        }
        const auto r = static_cast<std::uint64_t>(acc % den);
        const Complex z = roots.empty()
                              ? unit_phase(static_cast<double>(r) / static_cast<double>(den))
                              : roots[r];
        entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c)) = z * scale;
      }
    });
  } else {
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t j) {
      for (std::size_t c = 0; c < freqs.size(); ++c) {
        entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c)) =
            unit_phase(points.phase_turns(j, freqs[c])) * scale;
      }
    });
  }
  return SamplingMatrix(std::move(entries), points, lattice, normalized);
}

// ---------------------------------------------------------------------------
// Polynomials

SparsePolynomial::SparsePolynomial(FrequencyLattice lattice, SupportSet support,
                                   std::vector<Complex> coefficients)
    : lattice_(std::move(lattice)), support_(std::move(support)), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != support_.size()) {
    throw ValidationError("sparse polynomial: coefficient count != support size");
  }
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (!lattice_.contains(support_[i])) {
      throw ValidationError("sparse polynomial: " + to_string(support_[i]) + " outside lattice");
    }
    if (coefficients_[i] == Complex(0.0, 0.0)) {
      throw ValidationError("sparse polynomial: zero coefficient at " + to_string(support_[i]));
    }
  }
}

Eigen::VectorXcd SparsePolynomial::dense() const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(lattice_.size()));
  for (std::size_t i = 0; i < support_.size(); ++i) {
    out(static_cast<Eigen::Index>(lattice_.index_of(support_[i]))) = coefficients_[i];
  }
  return out;
}

Eigen::VectorXcd evaluate(const SparsePolynomial& f, const SamplingSet& points) {
  if (f.lattice().dimension() != points.dimension()) {
    throw ValidationError("evaluate: polynomial and points differ in dimension");
  }
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < f.sparsity(); ++i) {
      acc += f.coefficients()[i] * unit_phase(points.phase_turns(j, f.support()[i]));
    }
    y(static_cast<Eigen::Index>(j)) = acc;
  }
  return y;
}

}  // namespace detfourier
