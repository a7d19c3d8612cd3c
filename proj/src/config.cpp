#include "detfourier/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "detfourier/errors.hpp"

namespace detfourier {

std::string to_string(DecoderChoice choice) {
  switch (choice) {
    case DecoderChoice::omp: return "omp";
    case DecoderChoice::bp: return "bp";
    case DecoderChoice::both: return "both";
  }
  return "unknown";
}

std::vector<std::size_t> size_range(std::size_t first, std::size_t last) {
  std::vector<std::size_t> out;
  for (auto m = first; m <= last; ++m) out.push_back(m);
  return out;
}

bool ExperimentConfig::uses_bp(std::size_t sparsity) const {
  if (decoder == DecoderChoice::omp) return false;
  return bp_sparsities.empty() ||
         std::find(bp_sparsities.begin(), bp_sparsities.end(), sparsity) != bp_sparsities.end();
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw ValidationError("config field '" + key + "': " + why);
}

template <typename T>
T parse_integer(const std::string& key, const std::string& raw) {
  const std::string s = unquote(trim(raw));
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) bad(key, "expected an integer, got '" + s + "'");
  return value;
}

double parse_real(const std::string& key, const std::string& raw) {
  const std::string s = unquote(trim(raw));
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    bad(key, "expected a number, got '" + s + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& raw) {
  const std::string s = unquote(trim(raw));
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  bad(key, "expected true or false, got '" + s + "'");
}

std::vector<std::string> parse_list(const std::string& raw) {
  std::string s = trim(raw);
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') return {s};
    s = s.substr(1, s.size() - 2);
  }
  std::vector<std::string> items;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = unquote(trim(item));
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::vector<std::size_t> parse_sizes(const std::string& key, const std::string& raw) {
  const std::string s = unquote(trim(raw));
  if (const auto dots = s.find(".."); dots != std::string::npos && s.front() != '[') {
    const auto lo = parse_integer<std::size_t>(key, s.substr(0, dots));
    const auto hi = parse_integer<std::size_t>(key, s.substr(dots + 2));
    if (hi < lo) bad(key, "empty range");
    std::vector<std::size_t> out;
    for (auto m = lo; m <= hi; ++m) out.push_back(m);
    return out;
  }
  std::vector<std::size_t> out;
  for (const auto& item : parse_list(s)) out.push_back(parse_integer<std::size_t>(key, item));
  if (out.empty()) bad(key, "empty list");
  return out;
}

SamplingModel parse_model(const std::string& key, const std::string& raw) {
  try {
    return parse_sampling_model(unquote(trim(raw)));
  } catch (const ValidationError& e) {
    bad(key, e.what());
  }
}

}  // namespace

void apply_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "q") {
    cfg.q = parse_integer<int>(key, value);
  } else if (key == "d") {
    cfg.d = parse_integer<std::size_t>(key, value);
  } else if (key == "n") {
    cfg.n = parse_integer<std::uint64_t>(key, value);
  } else if (key == "m" || key == "sparsities") {
    cfg.sparsities = parse_sizes(key, value);
  } else if (key == "bp_m" || key == "bp_sparsities") {
    cfg.bp_sparsities = parse_sizes(key, value);
  } else if (key == "eigen_m" || key == "eigen_sparsities") {
    cfg.eigen_sparsities = parse_sizes(key, value);
  } else if (key == "trials") {
    cfg.trials = parse_integer<std::size_t>(key, value);
  } else if (key == "decoder") {
    const auto name = unquote(trim(value));
    if (name == "omp") cfg.decoder = DecoderChoice::omp;
    else if (name == "bp") cfg.decoder = DecoderChoice::bp;
    else if (name == "both") cfg.decoder = DecoderChoice::both;
    else bad(key, "expected omp, bp or both, got '" + name + "'");
  } else if (key == "models") {
    cfg.models.clear();
    for (const auto& item : parse_list(value)) cfg.models.push_back(parse_model(key, item));
    if (cfg.models.empty()) bad(key, "empty list");
  } else if (key == "lattice_modulus") {
    cfg.lattice_modulus = parse_integer<std::uint64_t>(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_integer<std::uint64_t>(key, value);
  } else if (key == "tolerance" || key == "success_tolerance") {
    cfg.success_tolerance = parse_real(key, value);
  } else if (key == "output") {
    cfg.output = unquote(trim(value));
  } else if (key == "timing") {
    cfg.record_runtime = parse_bool(key, value);
  } else if (key == "eigen_samples") {
    cfg.eigen_samples = parse_integer<std::size_t>(key, value);
  } else if (key == "eigen_model") {
    cfg.eigen_random_model = parse_model(key, value);
  } else if (key == "bp_rho") {
    cfg.bp.rho = parse_real(key, value);
  } else if (key == "bp_tolerance") {
    cfg.bp.primal_tolerance = cfg.bp.dual_tolerance = parse_real(key, value);
  } else if (key == "bp_max_iterations") {
    cfg.bp.max_iterations = parse_integer<std::size_t>(key, value);
  } else if (key == "bp_relaxation") {
    cfg.bp.relaxation = parse_real(key, value);
  } else {
    throw ValidationError("config field '" + key + "': unknown key");
  }
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::stringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') continue;  // TOML table headers are ignored
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    apply_config_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config file '" + path + "' cannot be opened");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.q < 0) bad("q", "must be >= 0");
  if (cfg.d == 0) bad("d", "must be >= 1");
  if (cfg.n == 0) bad("n", "must be >= 1");
  if (!cfg.seed) bad("seed", "required for randomized experiments");
  if (cfg.trials == 0) bad("trials", "must be >= 1");
  if (cfg.eigen_samples == 0) bad("eigen_samples", "must be >= 1");
  if (!(cfg.success_tolerance > 0.0)) bad("tolerance", "must be > 0");
  if (cfg.models.empty()) bad("models", "empty list");
  const bool deterministic =
      std::find(cfg.models.begin(), cfg.models.end(), SamplingModel::deterministic) != cfg.models.end();
  if (deterministic && !is_prime(cfg.n)) bad("n", std::to_string(cfg.n) + " is not prime");
  const bool lattice = std::find(cfg.models.begin(), cfg.models.end(), SamplingModel::uniform_lattice) !=
                       cfg.models.end();
  if (lattice && cfg.lattice_modulus < 2) bad("lattice_modulus", "must be >= 2 for the lattice model");
  if (cfg.eigen_random_model == SamplingModel::deterministic) {
    bad("eigen_model", "must be a random model");
  }
  if (cfg.eigen_random_model == SamplingModel::uniform_lattice && cfg.lattice_modulus < 2) {
    bad("lattice_modulus", "must be >= 2 for the lattice model");
  }
  const auto lattice_size = FrequencyLattice::uniform(cfg.q, cfg.d).size();
  for (auto m : cfg.sparsities) {
    if (m == 0 || m > lattice_size) bad("m", "sparsity " + std::to_string(m) + " outside [1, D]");
  }
  if (!(cfg.bp.rho > 0.0)) bad("bp_rho", "must be > 0");
  if (!(cfg.bp.primal_tolerance > 0.0)) bad("bp_tolerance", "must be > 0");
  if (!(cfg.bp.relaxation > 0.0 && cfg.bp.relaxation < 2.0)) bad("bp_relaxation", "must be in (0, 2)");
}

void validate_eigen(const ExperimentConfig& cfg) {
  validate(cfg);
  const auto lattice_size = FrequencyLattice::uniform(cfg.q, cfg.d).size();
  for (auto m : cfg.eigen_sparsities) {
    if (m == 0 || m > lattice_size || m > cfg.n) {
      bad("eigen_m", "sparsity " + std::to_string(m) + " outside [1, min(N, D)]");
    }
  }
}

}  // namespace detfourier
