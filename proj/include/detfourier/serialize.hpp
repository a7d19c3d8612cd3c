#pragma once

// JSON wire formats. Complex numbers are [re, im]; frequencies are integer
// arrays; rational points are [numerator, denominator] pairs.

#include <json.hpp>

#include "detfourier/decoders.hpp"
#include "detfourier/frames.hpp"
#include "detfourier/sampling.hpp"

namespace detfourier {

using Json = nlohmann::json;

Json to_json(const FrequencyLattice& lattice);
FrequencyLattice lattice_from_json(const Json& j);

Json to_json(const SamplingSet& points);
SamplingSet sampling_set_from_json(const Json& j);

Json to_json(const SamplingMatrix& matrix);

Json to_json(const SparsePolynomial& f);
SparsePolynomial polynomial_from_json(const Json& j, const FrequencyLattice& lattice);

Json to_json(const CoherenceReport& report);
Json to_json(const WeilCheck& check);
Json to_json(const RipReport& report);
Json to_json(const StripEstimate& estimate);
Json to_json(const DecodeResult& result);

Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);
Eigen::VectorXcd complex_vector_from_json(const Json& j);

}  // namespace detfourier
