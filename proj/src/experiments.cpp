#include "detfourier/experiments.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <ostream>

#include "detfourier/decoders.hpp"
#include "detfourier/errors.hpp"
#include "detfourier/parallel.hpp"

namespace detfourier {

SparsePolynomial random_sparse_signal(const FrequencyLattice& lattice, std::size_t sparsity, Rng& rng) {
  if (sparsity > lattice.size()) {
    throw ValidationError("random_sparse_signal: M=" + std::to_string(sparsity) + " exceeds D=" +
                          std::to_string(lattice.size()));
  }
  const auto columns = sample_without_replacement(lattice.size(), sparsity, rng);
  std::normal_distribution<double> gauss;
  std::vector<Complex> coefficients(sparsity);
  for (auto& c : coefficients) {
    do {
      c = Complex(gauss(rng), gauss(rng));
    } while (c == Complex(0.0, 0.0));
  }
  return SparsePolynomial(lattice, SupportSet::from_columns(lattice, columns), std::move(coefficients));
}

SparsePolynomial random_sparse_signal(const FrequencyLattice& lattice, std::size_t sparsity,
                                      std::uint64_t seed) {
  Rng rng(seed);
  return random_sparse_signal(lattice, sparsity, rng);
}

std::vector<SuccessCell> SuccessCurve::series(SamplingModel model, const std::string& decoder) const {
  std::vector<SuccessCell> out;
  for (const auto& cell : cells) {
    if (cell.model == model && cell.decoder == decoder) out.push_back(cell);
  }
  return out;
}

std::uint64_t trial_seed(std::uint64_t master, SamplingModel model, std::size_t sparsity,
                         std::size_t trial, std::uint64_t purpose) {
  return derive_seed(master, {static_cast<std::uint64_t>(model), sparsity, trial, purpose});
}

namespace {

constexpr std::uint64_t kSignalStream = 0;
constexpr std::uint64_t kPointStream = 1;

SamplingSet draw_points(const ExperimentConfig& cfg, SamplingModel model, std::uint64_t seed) {
  switch (model) {
    case SamplingModel::deterministic: return deterministic_points(cfg.n, cfg.d);
    case SamplingModel::uniform_continuous: return random_points_continuous(cfg.n, cfg.d, seed);
    case SamplingModel::uniform_lattice:
      return random_points_lattice(cfg.n, cfg.d, cfg.lattice_modulus, seed);
  }
  throw ValidationError("unknown sampling model");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

struct TrialOutcome {
  bool omp_success = false;
  bool bp_success = false;
  bool omp_degenerate = false;
  bool bp_degenerate = false;
  double omp_ms = 0.0;
  double bp_ms = 0.0;
};

}  // namespace

std::string success_csv_row(const SuccessCell& cell, bool with_runtime) {
  return to_string(cell.model) + "," + cell.decoder + "," + std::to_string(cell.sparsity) + "," +
         std::to_string(cell.trials) + "," + std::to_string(cell.successes) + "," +
         format_double(cell.rate()) + "," + (with_runtime ? format_double(cell.mean_runtime_ms) : "NA");
}

std::string eigen_csv_row(const EigenCurveRow& row) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s,%zu,%zu,%.9f,%.9f", to_string(row.model).c_str(),
                row.stats.sparsity, row.stats.samples, row.stats.mean_lambda_min,
                row.stats.mean_lambda_max);
  return buf;
}

SuccessCurve run_success_experiment(const ExperimentConfig& cfg, std::ostream* csv) {
  validate(cfg);
  const std::uint64_t master = *cfg.seed;
  const auto lattice = FrequencyLattice::uniform(cfg.q, cfg.d);
  const bool run_omp = cfg.decoder != DecoderChoice::bp;
  using Clock = std::chrono::steady_clock;

  if (csv) *csv << kSuccessCsvHeader << '\n' << std::flush;
  SuccessCurve curve;
  for (const auto model : cfg.models) {
    std::optional<SamplingMatrix> fixed;
    if (model == SamplingModel::deterministic) {
      fixed.emplace(build_matrix(deterministic_points(cfg.n, cfg.d), lattice, false));
    }
    for (const auto m : cfg.sparsities) {
      const bool run_bp = cfg.uses_bp(m);
      if (!run_omp && !run_bp) continue;
      std::vector<TrialOutcome> outcomes(cfg.trials);
      parallel_for(cfg.trials, [&](std::size_t t) {
        const auto signal = random_sparse_signal(lattice, m, trial_seed(master, model, m, t, kSignalStream));
        std::optional<SamplingMatrix> drawn;
        if (!fixed) {
          drawn.emplace(build_matrix(draw_points(cfg, model, trial_seed(master, model, m, t, kPointStream)),
                                     lattice, false));
        }
        const SamplingMatrix& a = fixed ? *fixed : *drawn;
        const Eigen::VectorXcd y = a.entries() * signal.dense();
        auto& out = outcomes[t];
        if (run_omp) {
          const auto start = Clock::now();
          try {
            const auto result = omp(a, y, {m, 1e-10 * y.norm()});
            out.omp_success = recovery_success(signal, result, cfg.success_tolerance);
          } catch (const DegeneracyError& e) {
            out.omp_degenerate = true;
          }
          out.omp_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        }
        if (run_bp) {
          const auto start = Clock::now();
          try {
            const auto result = basis_pursuit(a, y, cfg.bp);
            out.bp_success = recovery_success(signal, result, cfg.success_tolerance);
          } catch (const DegeneracyError& e) {
            out.bp_degenerate = true;
          }
          out.bp_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        }
      });

      auto summarize = [&](const std::string& name, auto success, auto degenerate, auto ms) {
        SuccessCell cell;
        cell.model = model;
        cell.decoder = name;
        cell.sparsity = m;
        cell.trials = cfg.trials;
        for (const auto& o : outcomes) {
          cell.successes += o.*success ? 1 : 0;
          cell.degenerate += o.*degenerate ? 1 : 0;
          cell.mean_runtime_ms += o.*ms;
        }
        cell.mean_runtime_ms /= static_cast<double>(cfg.trials);
        if (cell.degenerate) {
          std::clog << "warning: " << to_string(model) << "/" << name << " M=" << m << ": "
                    << cell.degenerate << " degenerate trials counted as failures\n";
        }
        if (csv) *csv << success_csv_row(cell, cfg.record_runtime) << '\n' << std::flush;
        curve.cells.push_back(cell);
      };
      if (run_omp) summarize("omp", &TrialOutcome::omp_success, &TrialOutcome::omp_degenerate, &TrialOutcome::omp_ms);
      if (run_bp) summarize("bp", &TrialOutcome::bp_success, &TrialOutcome::bp_degenerate, &TrialOutcome::bp_ms);
    }
  }
  return curve;
}

std::vector<EigenCurveRow> run_eigen_experiment(const ExperimentConfig& cfg, std::ostream* csv) {
  ExperimentConfig checked = cfg;
  checked.models = {SamplingModel::deterministic, cfg.eigen_random_model};
  validate_eigen(checked);
  const std::uint64_t master = *cfg.seed;
  const auto lattice = FrequencyLattice::uniform(cfg.q, cfg.d);

  if (csv) *csv << kEigenCsvHeader << '\n' << std::flush;
  std::vector<EigenCurveRow> rows;
  for (const auto model : checked.models) {
    const auto points = draw_points(cfg, model, derive_seed(master, {static_cast<std::uint64_t>(model), kPointStream}));
    const auto a = build_matrix(points, lattice, true);
    const auto stats = eigen_statistics(a, cfg.eigen_sparsities, cfg.eigen_samples,
                                        derive_seed(master, {static_cast<std::uint64_t>(model), kSignalStream}));
    for (const auto& s : stats) {
      rows.push_back({model, s});
      if (csv) *csv << eigen_csv_row(rows.back()) << '\n' << std::flush;
    }
  }
  return rows;
}

}  // namespace detfourier
