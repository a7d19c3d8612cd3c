// Command-line front end: sampling sets, matrices, frame diagnostics,
// one-shot decoding and the success/eigenvalue experiments.
//
// Exit codes: 0 success, 1 validation error, 2 numerical degeneracy.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "detfourier/config.hpp"
#include "detfourier/decoders.hpp"
#include "detfourier/errors.hpp"
#include "detfourier/experiments.hpp"
#include "detfourier/frames.hpp"
#include "detfourier/serialize.hpp"

namespace df = detfourier;

namespace {

struct MatrixOptions {
  std::uint64_t n = 0;
  std::size_t d = 0;
  int q = -1;
  std::vector<std::uint64_t> primes;
  std::string model = "deterministic";
  std::uint64_t modulus = 0;
  std::optional<std::uint64_t> seed;
};

void add_point_flags(CLI::App* cmd, MatrixOptions& o) {
  cmd->add_option("--n", o.n, "number of sampling points N");
  cmd->add_option("--d", o.d, "dimension d");
  cmd->add_option("--model", o.model, "deterministic | continuous | lattice");
  cmd->add_option("--modulus", o.modulus, "grid modulus m for the lattice model");
  cmd->add_option("--seed", o.seed, "RNG seed (required for random models)");
}

void add_matrix_flags(CLI::App* cmd, MatrixOptions& o) {
  add_point_flags(cmd, o);
  cmd->add_option("--q", o.q, "degree q: columns indexed by [-q,q]^d");
  cmd->add_option("--primes", o.primes, "descending primes p_1 >= ... >= p_d for the mixed-radix lattice")
      ->delimiter(',');
}

df::SamplingSet make_points(const MatrixOptions& o) {
  if (o.n == 0) throw df::ValidationError("field 'n': required and must be >= 1");
  if (o.d == 0) throw df::ValidationError("field 'd': required and must be >= 1");
  const auto model = df::parse_sampling_model(o.model);
  if (model != df::SamplingModel::deterministic && !o.seed) {
    throw df::ValidationError("field 'seed': required for the " + o.model + " model");
  }
  switch (model) {
    case df::SamplingModel::deterministic: return df::deterministic_points(o.n, o.d);
    case df::SamplingModel::uniform_continuous: return df::random_points_continuous(o.n, o.d, *o.seed);
    case df::SamplingModel::uniform_lattice: return df::random_points_lattice(o.n, o.d, o.modulus, *o.seed);
  }
  throw df::ValidationError("field 'model': unknown");
}

df::FrequencyLattice make_lattice(const MatrixOptions& o) {
  if (!o.primes.empty()) return df::mixed_radix_lattice(o.primes);
  if (o.q < 0) throw df::ValidationError("field 'q': required (or give --primes)");
  return df::FrequencyLattice::uniform(o.q, o.d);
}

df::SamplingMatrix make_matrix(MatrixOptions o, bool normalized) {
  if (!o.primes.empty()) {
    if (o.d == 0) o.d = o.primes.size();
    if (o.n == 0) o.n = o.primes.front();
  }
  return df::build_matrix(make_points(o), make_lattice(o), normalized);
}

void emit(const df::Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw df::ValidationError("field 'out': cannot open '" + out_path + "'");
  out << j.dump(2) << '\n';
}

df::Json recover_instance(const std::string& path, const std::string& decoder, std::size_t sparsity,
                          double tolerance) {
  std::ifstream in(path);
  if (!in) throw df::ValidationError("field 'instance': cannot open '" + path + "'");
  df::Json inst;
  try {
    in >> inst;
  } catch (const df::Json::exception& e) {
    throw df::ValidationError(std::string("field 'instance': ") + e.what());
  }
  MatrixOptions o;
  o.n = inst.value("n", std::uint64_t{0});
  o.d = inst.value("d", std::size_t{0});
  o.q = inst.value("q", -1);
  o.model = inst.value("model", std::string("deterministic"));
  if (inst.contains("seed")) o.seed = inst["seed"].get<std::uint64_t>();
  o.modulus = inst.value("modulus", std::uint64_t{0});
  if (inst.contains("primes")) o.primes = inst["primes"].get<std::vector<std::uint64_t>>();

  std::optional<df::SamplingMatrix> matrix;
  if (inst.contains("sampling_set")) {
    const auto points = df::sampling_set_from_json(inst["sampling_set"]);
    o.d = points.dimension();
    matrix.emplace(df::build_matrix(points, make_lattice(o), false));
  } else {
    matrix.emplace(make_matrix(o, false));
  }

  std::optional<df::SparsePolynomial> truth;
  Eigen::VectorXcd y;
  if (inst.contains("signal")) truth.emplace(df::polynomial_from_json(inst["signal"], matrix->lattice()));
  if (inst.contains("samples")) {
    y = df::complex_vector_from_json(inst["samples"]);
  } else if (truth) {
    y = df::evaluate(*truth, matrix->points());
  } else {
    throw df::ValidationError("field 'samples': instance needs samples or a signal");
  }
  if (y.size() != matrix->rows()) throw df::ValidationError("field 'samples': length != N");

  df::DecodeResult result;
  if (decoder == "omp") {
    const std::size_t budget = sparsity ? sparsity : (truth ? truth->sparsity() : 0);
    result = df::omp(*matrix, y, {budget, tolerance > 0 ? tolerance : 1e-10 * y.norm()});
  } else if (decoder == "bp") {
    result = df::basis_pursuit(*matrix, y, df::BpConfig{});
  } else {
    throw df::ValidationError("field 'decoder': expected omp or bp");
  }
  df::Json out = df::to_json(result);
  out["decoder"] = decoder;
  if (truth) {
    out["relative_error"] = df::relative_error(*truth, result);
    out["success"] = df::recovery_success(*truth, result);
  }
  return out;
}

df::ExperimentConfig experiment_config(const std::string& path, const std::vector<std::string>& sets,
                                       std::optional<std::uint64_t> seed, const std::string& out_path) {
  df::ExperimentConfig cfg = path.empty() ? df::ExperimentConfig{} : df::load_config(path);
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw df::ValidationError("field 'set': expected key=value, got '" + kv + "'");
    df::apply_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (seed) cfg.seed = seed;
  if (!out_path.empty()) cfg.output = out_path;
  return cfg;
}

template <typename Run>
void run_experiment(const df::ExperimentConfig& cfg, Run run) {
  if (cfg.output.empty()) {
    run(cfg, &std::cout);
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw df::ValidationError("field 'output': cannot open '" + cfg.output + "'");
  run(cfg, &out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic sampling of sparse trigonometric polynomials"};
  app.require_subcommand(1);
  std::string out_path;

  MatrixOptions points_opts;
  auto* points_cmd = app.add_subcommand("points", "emit a sampling set as JSON");
  add_point_flags(points_cmd, points_opts);
  points_cmd->add_option("--out", out_path, "write to file instead of stdout");

  MatrixOptions matrix_opts;
  bool normalized = false;
  bool report_only = false;
  auto* matrix_cmd = app.add_subcommand("matrix", "emit a sampling matrix (or a summary report) as JSON");
  add_matrix_flags(matrix_cmd, matrix_opts);
  matrix_cmd->add_flag("--normalized", normalized, "divide entries by sqrt(N)");
  matrix_cmd->add_flag("--report", report_only, "emit shape, column norms and coherence instead of entries");
  matrix_cmd->add_option("--out", out_path, "write to file instead of stdout");

  MatrixOptions coherence_opts;
  auto* coherence_cmd = app.add_subcommand("coherence", "mutual coherence of F_X/sqrt(N)");
  add_matrix_flags(coherence_cmd, coherence_opts);

  std::uint64_t weil_p = 0;
  std::vector<long long> weil_coeffs;
  std::size_t weil_degree = 0;
  auto* weil_cmd = app.add_subcommand("weil-check", "Weil exponential sum bound");
  weil_cmd->add_option("--p", weil_p, "prime modulus")->required();
  auto* coeff_opt = weil_cmd->add_option("--coeffs", weil_coeffs, "m_1,...,m_d")->delimiter(',');
  auto* exhaustive_opt = weil_cmd->add_option("--exhaustive-degree", weil_degree,
                                              "check every nonzero coefficient vector of this degree");
  coeff_opt->excludes(exhaustive_opt);

  MatrixOptions rip_opts;
  std::size_t rip_order = 0;
  auto* rip_cmd = app.add_subcommand("rip", "brute-force RIP constant of F_X/sqrt(N)");
  add_matrix_flags(rip_cmd, rip_opts);
  rip_cmd->add_option("--k", rip_order, "RIP order")->required();

  MatrixOptions strip_opts;
  std::size_t strip_order = 0;
  double strip_delta = 0.5;
  std::size_t strip_trials = 10'000;
  auto* strip_cmd = app.add_subcommand("strip", "Monte-Carlo StRIP probability");
  add_matrix_flags(strip_cmd, strip_opts);
  strip_cmd->add_option("--k", strip_order, "order (default: the theorem's order for delta)");
  strip_cmd->add_option("--delta", strip_delta, "isometry constant in (0,1)");
  strip_cmd->add_option("--trials", strip_trials, "Monte-Carlo trials");

  std::string instance_path;
  std::string decoder = "omp";
  std::size_t recover_sparsity = 0;
  double recover_tolerance = 0.0;
  auto* recover_cmd = app.add_subcommand("recover", "decode one instance given as JSON");
  recover_cmd->add_option("--instance", instance_path, "instance JSON file")->required();
  recover_cmd->add_option("--decoder", decoder, "omp | bp");
  recover_cmd->add_option("--sparsity", recover_sparsity, "OMP sparsity budget");
  recover_cmd->add_option("--tolerance", recover_tolerance, "OMP residual tolerance");
  recover_cmd->add_option("--out", out_path, "write to file instead of stdout");

  auto* experiment_cmd = app.add_subcommand("experiment", "run a success-rate or eigenvalue experiment");
  experiment_cmd->require_subcommand(1);
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> experiment_seed;
  std::string experiment_out;
  for (auto* sub : {experiment_cmd->add_subcommand("success", "success rate vs sparsity (CSV)"),
                    experiment_cmd->add_subcommand("eigen", "Gram eigenvalue statistics (CSV)")}) {
    sub->add_option("--config", config_path, "key = value config file");
    sub->add_option("--set", overrides, "override one config key: key=value");
    sub->add_option("--seed", experiment_seed, "master seed");
    sub->add_option("--out", experiment_out, "CSV output path (default stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*points_cmd) {
      emit(df::to_json(make_points(points_opts)), out_path);
    } else if (*matrix_cmd) {
      const auto a = make_matrix(matrix_opts, normalized);
      if (report_only) {
        const auto unit = a.normalized_copy();
        double min_norm = INFINITY, max_norm = 0.0;
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
          min_norm = std::min(min_norm, a.column(c).norm());
          max_norm = std::max(max_norm, a.column(c).norm());
        }
        emit({{"rows", a.rows()},
              {"cols", a.cols()},
              {"normalized", a.normalized()},
              {"lattice", df::to_json(a.lattice())},
              {"min_column_norm", min_norm},
              {"max_column_norm", max_norm},
              {"coherence", df::to_json(df::coherence(unit))}},
             out_path);
      } else {
        emit(df::to_json(a), out_path);
      }
    } else if (*coherence_cmd) {
      emit(df::to_json(df::coherence(make_matrix(coherence_opts, true))), {});
    } else if (*weil_cmd) {
      if (weil_degree > 0) {
        std::vector<long long> coeffs(weil_degree, 0);
        std::size_t checked = 0, violations = 0;
        double worst = 0.0;
        const auto p = static_cast<long long>(weil_p);
        while (true) {
          std::size_t t = 0;
          while (t < weil_degree && ++coeffs[t] == p) coeffs[t++] = 0;
          if (t == weil_degree) break;
          const auto check = df::weil_sum_check(weil_p, coeffs);
          ++checked;
          violations += check.holds ? 0 : 1;
          worst = std::max(worst, check.magnitude);
        }
        emit({{"p", weil_p},
              {"degree", weil_degree},
              {"checked", checked},
              {"violations", violations},
              {"max_magnitude", worst},
              {"bound", (static_cast<double>(weil_degree) - 1.0) * std::sqrt(static_cast<double>(weil_p))}},
             {});
      } else {
        if (weil_coeffs.empty()) throw df::ValidationError("field 'coeffs': required");
        emit(df::to_json(df::weil_sum_check(weil_p, weil_coeffs)), {});
      }
    } else if (*rip_cmd) {
      emit(df::to_json(df::rip_bruteforce(make_matrix(rip_opts, true), rip_order)), {});
    } else if (*strip_cmd) {
      if (!strip_opts.seed) throw df::ValidationError("field 'seed': required for strip");
      const auto a = make_matrix(strip_opts, true);
      const std::size_t order = strip_order ? strip_order
                                            : df::strip_theorem_order(strip_delta, static_cast<std::size_t>(a.rows()),
                                                                      static_cast<std::size_t>(a.cols()));
      auto j = df::to_json(df::strip_estimate(a, order, strip_delta, strip_trials, *strip_opts.seed));
      j["target_probability"] = 1.0 - 1.0 / static_cast<double>(a.cols());
      emit(j, {});
    } else if (*recover_cmd) {
      emit(recover_instance(instance_path, decoder, recover_sparsity, recover_tolerance), out_path);
    } else if (*experiment_cmd) {
      const auto cfg = experiment_config(config_path, overrides, experiment_seed, experiment_out);
      if (experiment_cmd->got_subcommand("success")) {
        run_experiment(cfg, [](const auto& c, std::ostream* os) { df::run_success_experiment(c, os); });
      } else {
        run_experiment(cfg, [](const auto& c, std::ostream* os) { df::run_eigen_experiment(c, os); });
      }
    }
  } catch (const df::DegeneracyError& e) {
    std::cerr << "degenerate: " << e.what() << '\n';
    return 2;
  } catch (const df::ValidationError& e) {
    std::cerr << "invalid: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid: " << e.what() << '\n';
    return 1;
  } catch (const df::Json::exception& e) {
    std::cerr << "invalid: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
