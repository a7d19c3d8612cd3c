#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "detfourier/config.hpp"
#include "detfourier/frames.hpp"
#include "detfourier/rng.hpp"
#include "detfourier/sampling.hpp"

namespace detfourier {

/// Uniform size-M support (Fisher-Yates over the lattice enumeration) with
/// coefficients whose real and imaginary parts are i.i.d. N(0, 1).
SparsePolynomial random_sparse_signal(const FrequencyLattice& lattice, std::size_t sparsity, Rng& rng);
SparsePolynomial random_sparse_signal(const FrequencyLattice& lattice, std::size_t sparsity,
                                      std::uint64_t seed);

struct SuccessCell {
  SamplingModel model = SamplingModel::deterministic;
  std::string decoder;
  std::size_t sparsity = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t degenerate = 0;  // trials aborted by DegeneracyError, counted as failures
  double mean_runtime_ms = 0.0;

  double rate() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }
};

struct SuccessCurve {
  std::vector<SuccessCell> cells;

  /// Cells of one (model, decoder) series in increasing M.
  std::vector<SuccessCell> series(SamplingModel model, const std::string& decoder) const;
};

inline constexpr const char* kSuccessCsvHeader =
    "model,decoder,M,trials,successes,rate,mean_runtime_ms";
inline constexpr const char* kEigenCsvHeader = "model,M,samples,mean_lambda_min,mean_lambda_max";

/// Seed for one trial of one (model, M) cell; `purpose` separates the signal
/// stream from the sampling-set stream.
std::uint64_t trial_seed(std::uint64_t master, SamplingModel model, std::size_t sparsity,
                         std::size_t trial, std::uint64_t purpose);

/// Success rates per (model, M, decoder). When `csv` is non-null, the header
/// and one row per cell are written as each cell completes, in (model, M,
/// decoder) order.
SuccessCurve run_success_experiment(const ExperimentConfig& cfg, std::ostream* csv = nullptr);

struct EigenCurveRow {
  SamplingModel model = SamplingModel::deterministic;
  EigenStatRow stats;
};

/// Gram eigenvalue statistics for the deterministic matrix and one random
/// matrix of the configured random model, both normalized, same (N, D).
std::vector<EigenCurveRow> run_eigen_experiment(const ExperimentConfig& cfg, std::ostream* csv = nullptr);

std::string success_csv_row(const SuccessCell& cell, bool with_runtime);
std::string eigen_csv_row(const EigenCurveRow& row);

}  // namespace detfourier
