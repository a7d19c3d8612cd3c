#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "detfourier/decoders.hpp"
#include "detfourier/sampling.hpp"

namespace detfourier {

enum class DecoderChoice { omp, bp, both };

/// {first, first+1, ..., last}.
std::vector<std::size_t> size_range(std::size_t first, std::size_t last);

std::string to_string(DecoderChoice choice);

struct ExperimentConfig {
  int q = 2;
  std::size_t d = 5;
  std::uint64_t n = 83;
  std::vector<std::size_t> sparsities = size_range(1, 40);  // success experiment M values
  std::vector<std::size_t> bp_sparsities;  // subset run with BP; empty = all
  std::size_t trials = 100;
  DecoderChoice decoder = DecoderChoice::omp;
  std::vector<SamplingModel> models{SamplingModel::deterministic, SamplingModel::uniform_continuous};
  std::uint64_t lattice_modulus = 0;
  std::optional<std::uint64_t> seed;
  double success_tolerance = kDefaultSuccessTolerance;
  std::string output;
  bool record_runtime = false;

  std::vector<std::size_t> eigen_sparsities = size_range(1, 20);
  std::size_t eigen_samples = 2000;
  SamplingModel eigen_random_model = SamplingModel::uniform_continuous;

  BpConfig bp{1.0, 1e-8, 1e-8, 20'000, 1.0};

  bool uses_bp(std::size_t sparsity) const;
};

/// Flat `key = value` lines; `#` starts a comment. Values are integers,
/// reals, booleans, bare or quoted strings, `[a, b, ...]` lists, or `a..b`
/// integer ranges. Unknown keys are rejected with a ValidationError naming
/// the key.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Applies one key/value pair; shared by the file parser and CLI overrides.
void apply_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Cross-field checks (N prime for the deterministic model, seed present, ...).
void validate(const ExperimentConfig& cfg);
/// validate() plus the eigenvalue sweep sparsities.
void validate_eigen(const ExperimentConfig& cfg);

}  // namespace detfourier
