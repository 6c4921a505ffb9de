#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "doctest.h"
#include "gaussmarg/errors.hpp"
#include "gaussmarg/io.hpp"
#include "gaussmarg/scenario.hpp"

using namespace gmarg;
using gmarg::io::json;

TEST_CASE("polynomial JSON round trip and layout") {
  const auto p = vandermonde_antisym(4);
  const json j = io::to_json(p);
  CHECK(j["dimension"] == 4);
  CHECK(io::polynomial_from_json(j) == p);
  // Terms come out in lexicographic exponent order.
  const auto& terms = j["terms"];
  for (std::size_t i = 1; i < terms.size(); ++i) {
    CHECK(terms[i - 1]["exponents"].get<Exponents>() < terms[i]["exponents"].get<Exponents>());
  }
  CHECK_THROWS_AS(io::polynomial_from_json(json{{"dimension", 2}}), ArgumentError);
  CHECK_THROWS_AS(io::polynomial_from_json(json::parse(R"({"dimension":2,"terms":[{"exponents":[1],"coeff":1}]})")),
                  ArgumentError);
}

TEST_CASE("spec JSON round trip is exact and canonical") {
  const auto spec = example26::spec_for_eta(example26::kMaxEta);
  const json j = io::to_json(spec);
  const std::string text = j.dump();
  CHECK(text.find("\"bound_K\"") < text.find("\"certificate\""));
  CHECK(text.find("\"certificate\"") < text.find("\"epsilon\""));
  CHECK(text.find("\"polynomial\"") < text.find("\"sigma\""));

  const auto back = io::spec_from_json(json::parse(text));
  CHECK(back.epsilon() == spec.epsilon());
  CHECK(back.sigma() == spec.sigma());
  CHECK(back.bound_K() == spec.bound_K());
  CHECK(back.polynomial() == spec.polynomial());
  CHECK(back.renormalized() == spec.renormalized());
  CHECK(back.certificate().argmax == spec.certificate().argmax);
  CHECK(io::to_json(back).dump() == text);

  json bad = j;
  bad["epsilon"] = 2.0 * spec.epsilon();
  CHECK_THROWS_AS(io::spec_from_json(bad), ValidityError);
  bad = j;
  bad.erase("sigma");
  CHECK_THROWS_AS(io::spec_from_json(bad), ArgumentError);
}

TEST_CASE("normals JSON accepts both layouts") {
  const auto bare = io::normals_from_json(json::parse("[[1, 0], [0, 2]]"));
  REQUIRE(bare.size() == 2);
  CHECK(bare[1][1] == 1.0);
  const auto wrapped = io::normals_from_json(json::parse(R"({"normals": [[3, 4]]})"));
  REQUIRE(wrapped.size() == 1);
  CHECK(wrapped[0][0] == doctest::Approx(0.6));
  CHECK_THROWS_AS(io::normals_from_json(json::parse(R"({"normals": 3})")), ArgumentError);
  CHECK_THROWS_AS(io::normals_from_json(json::parse(R"([["a"]])")), ArgumentError);
}

TEST_CASE("modality and verification report JSON") {
  const auto spec = example26::spec_for_eta(example26::kMaxEta);
  const MarginalLaw law(spec, example26::direction(std::numbers::pi / 8.0));
  const json m = io::to_json(law, critical_points(law));
  for (const char* key : {"theta_or_direction", "P_of_a", "classification", "critical_points"}) CHECK(m.contains(key));
  CHECK(m["classification"] == "nonunimodal");
  CHECK(m["critical_kinds"][0] == "max");

  VerificationReport report{{"marginal (1, 0)", GofResult{0.01, 0.5, 100, "N(0,1)"}, 0.01},
                            {"symmetric |x|^2", GofResult{0.2, 0.001, 100, "chi-square(2)"}, 0.01}};
  const json r = io::to_json(report);
  REQUIRE(r.size() == 2);
  CHECK(r[0]["test"] == "marginal (1, 0)");
  CHECK(r[0]["null"] == "N(0,1)");
  CHECK(r[0]["N"] == 100);
  CHECK(r[0]["pass"] == true);
  CHECK(r[1]["pass"] == false);
  CHECK(r[1]["alpha"] == 0.01);
}

TEST_CASE("read_json_file") {
  CHECK_THROWS_AS(io::read_json_file("/nonexistent/spec.json"), ArgumentError);
  const std::string path = "test_io_tmp.json";
  {
    std::ofstream out(path);
    out << "{not json";
  }
  CHECK_THROWS_AS(io::read_json_file(path), ArgumentError);
  {
    std::ofstream out(path);
    out << R"({"a": [1, 2]})";
  }
  CHECK(io::read_json_file(path)["a"][1] == 2);
  std::remove(path.c_str());
}
