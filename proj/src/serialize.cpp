#include "detfourier/serialize.hpp"

#include "detfourier/errors.hpp"

namespace detfourier {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ValidationError("expected a complex number [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Eigen::VectorXcd complex_vector_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("expected an array of complex numbers");
  Eigen::VectorXcd out(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) out(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return out;
}

Json to_json(const FrequencyLattice& lattice) {
  return {{"dimension", lattice.dimension()},
          {"size", lattice.size()},
          {"lower", lattice.lower_bounds()},
          {"upper", lattice.upper_bounds()}};
}

FrequencyLattice lattice_from_json(const Json& j) {
  return FrequencyLattice(j.at("lower").get<std::vector<int>>(), j.at("upper").get<std::vector<int>>());
}

namespace {

Json provenance_json(const Provenance& p) {
  Json out{{"kind", to_string(p.model)}};
  switch (p.model) {
    case SamplingModel::deterministic: out["N"] = p.modulus; break;
    case SamplingModel::uniform_continuous: out["seed"] = p.seed; break;
    case SamplingModel::uniform_lattice:
      out["seed"] = p.seed;
      out["modulus"] = p.modulus;
      break;
  }
  return out;
}

}  // namespace

Json to_json(const SamplingSet& points) {
  Json rows = Json::array();
  for (std::size_t j = 0; j < points.size(); ++j) {
    Json row = Json::array();
    for (std::size_t t = 0; t < points.dimension(); ++t) {
      if (points.is_rational()) {
        row.push_back(Json::array({points.numerator(j, t), points.denominator()}));
      } else {
        row.push_back(points.coordinate(j, t));
      }
    }
    rows.push_back(std::move(row));
  }
  return {{"dimension", points.dimension()},
          {"count", points.size()},
          {"provenance", provenance_json(points.provenance())},
          {"points", std::move(rows)}};
}

SamplingSet sampling_set_from_json(const Json& j) {
  const auto d = j.at("dimension").get<std::size_t>();
  const auto& prov = j.at("provenance");
  Provenance p;
  p.model = parse_sampling_model(prov.at("kind").get<std::string>());
  if (prov.contains("seed")) p.seed = prov["seed"].get<std::uint64_t>();
  if (p.model == SamplingModel::deterministic) p.modulus = prov.at("N").get<std::uint64_t>();
  if (p.model == SamplingModel::uniform_lattice) p.modulus = prov.at("modulus").get<std::uint64_t>();

  const auto& rows = j.at("points");
  const bool rational = !rows.empty() && !rows[0].empty() && rows[0][0].is_array();
  if (rational) {
    std::vector<std::uint64_t> numerators;
    std::uint64_t denominator = 0;
    for (const auto& row : rows) {
      if (row.size() != d) throw ValidationError("sampling set: point of wrong dimension");
      for (const auto& frac : row) {
        const auto den = frac.at(1).get<std::uint64_t>();
        if (denominator && den != denominator) throw ValidationError("sampling set: mixed denominators");
        denominator = den;
        numerators.push_back(frac.at(0).get<std::uint64_t>());
      }
    }
    return SamplingSet(d, std::move(numerators), denominator, p);
  }
  std::vector<double> coords;
  for (const auto& row : rows) {
    if (row.size() != d) throw ValidationError("sampling set: point of wrong dimension");
    for (const auto& x : row) coords.push_back(x.get<double>());
  }
  return SamplingSet(d, std::move(coords), p);
}

Json to_json(const SamplingMatrix& matrix) {
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < matrix.cols(); ++c) row.push_back(complex_to_json(matrix.entries()(r, c)));
    entries.push_back(std::move(row));
  }
  return {{"rows", matrix.rows()},
          {"cols", matrix.cols()},
          {"normalized", matrix.normalized()},
          {"lattice", to_json(matrix.lattice())},
          {"sampling_set", to_json(matrix.points())},
          {"entries", std::move(entries)}};
}

Json to_json(const SparsePolynomial& f) {
  Json support = Json::array();
  Json coefficients = Json::array();
  for (std::size_t i = 0; i < f.sparsity(); ++i) {
    support.push_back(f.support()[i].coords);
    coefficients.push_back(complex_to_json(f.coefficients()[i]));
  }
  return {{"lattice", to_json(f.lattice())}, {"support", support}, {"coefficients", coefficients}};
}

SparsePolynomial polynomial_from_json(const Json& j, const FrequencyLattice& lattice) {
  std::vector<FrequencyIndex> support;
  for (const auto& k : j.at("support")) support.push_back({k.get<std::vector<int>>()});
  std::vector<Complex> coefficients;
  for (const auto& c : j.at("coefficients")) coefficients.push_back(complex_from_json(c));
  return SparsePolynomial(lattice, SupportSet(std::move(support)), std::move(coefficients));
}

Json to_json(const CoherenceReport& report) {
  return {{"mu", report.mu},
          {"pair", {report.frequency_a.coords, report.frequency_b.coords}},
          {"pair_columns", {report.column_a, report.column_b}},
          {"welch_bound", report.welch_bound},
          {"weil_bound", report.weil_bound},
          {"N", report.rows},
          {"D", report.cols}};
}

Json to_json(const WeilCheck& check) {
  return {{"magnitude", check.magnitude}, {"bound", check.bound}, {"holds", check.holds}};
}

Json to_json(const RipReport& report) {
  Json sizes = Json::array();
  for (std::size_t s = 0; s < report.per_size.size(); ++s) {
    sizes.push_back({{"size", s + 1},
                     {"lambda_min", report.per_size[s].min},
                     {"lambda_max", report.per_size[s].max}});
  }
  return {{"order", report.order},
          {"delta_min", report.delta_min},
          {"supports_checked", report.supports_checked},
          {"per_size", sizes}};
}

Json to_json(const StripEstimate& estimate) {
  return {{"order", estimate.order},         {"delta", estimate.delta},
          {"trials", estimate.trials},       {"successes", estimate.successes},
          {"probability", estimate.probability}, {"ci_low", estimate.ci_low},
          {"ci_high", estimate.ci_high}};
}

Json to_json(const DecodeResult& result) {
  Json support = Json::array();
  for (const auto& k : result.support) support.push_back(k.coords);
  Json coefficients = Json::array();
  for (const auto& c : result.coefficients) coefficients.push_back(complex_to_json(c));
  return {{"support", support},
          {"support_columns", result.columns},
          {"coefficients", coefficients},
          {"residual_history", result.residual_history},
          {"iterations", result.iterations},
          {"converged", result.converged}};
}

}  // namespace detfourier
