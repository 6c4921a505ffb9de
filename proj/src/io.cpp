#include "gaussmarg/io.hpp"

#include <fstream>

#include "gaussmarg/errors.hpp"

namespace gmarg::io {

json to_json(const MultiPoly& p) {
  json terms = json::array();
  for (const auto& [exponents, coefficient] : p.terms()) {
    terms.push_back({{"exponents", exponents}, {"coeff", coefficient}});
  }
  return {{"dimension", p.dimension()}, {"terms", terms}};
}

MultiPoly polynomial_from_json(const json& j) {
  try {
    const auto n = j.at("dimension").get<std::size_t>();
    MultiPoly p(n);
    for (const auto& term : j.at("terms")) {
      p.add_term(term.at("exponents").get<Exponents>(), term.at("coeff").get<double>());
    }
    return p;
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed polynomial JSON: ") + e.what());
  }
}

json to_json(const BoundResult& bound) {
  return {{"bound_K", bound.K},
          {"certificate",
           {{"argmax", bound.certificate.argmax},
            {"search_radius", bound.certificate.search_radius},
            {"grid_resolution", bound.certificate.grid_resolution}}}};
}

BoundResult bound_from_json(const json& j) {
  try {
    BoundResult bound;
    bound.K = j.at("bound_K").get<double>();
    const auto& c = j.at("certificate");
    bound.certificate.argmax = c.at("argmax").get<std::vector<double>>();
    bound.certificate.search_radius = c.at("search_radius").get<double>();
    bound.certificate.grid_resolution = c.at("grid_resolution").get<double>();
    return bound;
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed bound JSON: ") + e.what());
  }
}

json to_json(const DensitySpec& spec) {
  json j = to_json(BoundResult{spec.bound_K(), spec.certificate()});
  j["epsilon"] = spec.epsilon();
  j["sigma"] = spec.sigma();
  j["polynomial"] = to_json(spec.polynomial());
  return j;
}

DensitySpec spec_from_json(const json& j) {
  double epsilon = 0.0;
  double sigma = 0.0;
  try {
    epsilon = j.at("epsilon").get<double>();
    sigma = j.at("sigma").get<double>();
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed spec JSON: ") + e.what());
  }
  if (!j.contains("polynomial")) throw ArgumentError("malformed spec JSON: missing polynomial");
  return make_spec_with_bound(epsilon, sigma, polynomial_from_json(j["polynomial"]), bound_from_json(j));
}

std::vector<Direction> normals_from_json(const json& j) {
  const json& list = j.is_object() && j.contains("normals") ? j["normals"] : j;
  if (!list.is_array()) throw ArgumentError("normals JSON must be an array of vectors");
  std::vector<Direction> normals;
  try {
    for (const auto& v : list) normals.emplace_back(v.get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed normals JSON: ") + e.what());
  }
  return normals;
}

json to_json(const MarginalLaw& law, const ModalityReport& report) {
  std::vector<double> direction(law.direction().components().begin(), law.direction().components().end());
  json kinds = json::array();
  for (bool m : report.is_maximum) kinds.push_back(m ? "max" : "min");
  return {{"theta_or_direction", direction},
          {"P_of_a", law.pa()},
          {"classification", to_string(report.classification)},
          {"critical_points", report.critical_points},
          {"critical_kinds", kinds},
          {"density_at_critical", report.density_at_critical},
          {"density_at_zero", report.density_at_zero},
          {"equation_at_zero", report.equation_at_zero},
          {"search_limit", report.search_limit},
          {"tangential_root_flagged", report.tangential_root_flagged}};
}

json to_json(const VerificationReport& report) {
  json out = json::array();
  for (const auto& e : report) {
    out.push_back({{"test", e.test},
                   {"null", e.result.null_label},
                   {"N", e.result.n},
                   {"statistic", e.result.statistic},
                   {"p_value", e.result.p_value},
                   {"pass", e.pass()},
                   {"alpha", e.alpha}});
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ArgumentError("cannot parse " + path + ": " + e.what());
  }
}

}  // namespace gmarg::io
