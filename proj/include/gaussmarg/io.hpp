#pragma once

#include "json.hpp"
#include <vector>

#include "gaussmarg/density.hpp"
#include "gaussmarg/marginals.hpp"
#include "gaussmarg/polynomial.hpp"
#include "gaussmarg/verify.hpp"

namespace gmarg::io {

using nlohmann::json;

/// { "dimension": n, "terms": [ { "coeff": c, "exponents": [m1..mn] }, ... ] },
/// terms in lexicographic exponent order.
json to_json(const MultiPoly& p);
MultiPoly polynomial_from_json(const json& j);

/// { "bound_K", "certificate": { "argmax", "grid_resolution", "search_radius" },
///   "epsilon", "polynomial", "sigma" }
json to_json(const DensitySpec& spec);
/// Rebuilds a spec from its stored bound without re-optimizing.
DensitySpec spec_from_json(const json& j);

json to_json(const BoundResult& bound);
BoundResult bound_from_json(const json& j);

/// Either a bare array of vectors or { "normals": [...] }.
std::vector<Direction> normals_from_json(const json& j);

json to_json(const MarginalLaw& law, const ModalityReport& report);
json to_json(const VerificationReport& report);

/// Parses a file, throwing ArgumentError with the path on failure.
json read_json_file(const std::string& path);

}  // namespace gmarg::io
