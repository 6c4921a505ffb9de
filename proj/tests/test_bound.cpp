#include <chrono>
#include <cmath>
#include <random>

#include "doctest.h"
#include "gaussmarg/bound.hpp"
#include "gaussmarg/errors.hpp"
#include "gaussmarg/hermite.hpp"
#include "gaussmarg/kernels.hpp"

using namespace gmarg;

namespace {

const double kSigma = std::sqrt(0.5);

MultiPoly antisym2() { return MultiPoly(2, {{{3, 1}, 1.0}, {{1, 3}, -1.0}}); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("reference bound 128 e^-2") {
  const auto p = antisym2();
  const auto start = std::chrono::steady_clock::now();
  const auto result = bound_K(kSigma, p, renormalize(p));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(rel(result.K, 128.0 * std::exp(-2.0)) <= 1e-6);
  CHECK(seconds < 5.0);
  // The maximizers sit on the circle |y|^2 = 8.
  const auto& x = result.certificate.argmax;
  CHECK(x[0] * x[0] + x[1] * x[1] == doctest::Approx(8.0).epsilon(1e-5));
}

TEST_CASE("t1^2 in two variables against a brute-force grid") {
  const MultiPoly p(2, {{{2, 0}, 1.0}});
  const auto result = bound_K(kSigma, p, renormalize(p));

  // Oracle: |y1^2 - 1| exp(-|y|^2/4) / sigma^4 on a 1e-3 grid over [-6, 6]^2.
  const double a = 1.0 - kSigma * kSigma;
  const double scale = 1.0 / std::pow(kSigma, 4);
  double brute = 0.0;
  const int steps = 12000;
  for (int i = 0; i <= steps; ++i) {
    const double y1 = -6.0 + 12.0 * i / steps;
    const double g1 = std::abs(y1 * y1 - 1.0) * std::exp(-0.5 * a * y1 * y1);
    for (int j = 0; j <= steps; ++j) {
      const double y2 = -6.0 + 12.0 * j / steps;
      brute = std::max(brute, scale * g1 * std::exp(-0.5 * a * y2 * y2));
    }
  }
  CHECK(rel(result.K, brute) <= 1e-4);
  CHECK(rel(result.K, 16.0 * std::exp(-1.25)) <= 1e-6);
}

TEST_CASE("property: bound scales linearly with the polynomial") {
  const double r = 1.0 / std::sqrt(2.0);
  const auto p = from_subspace_normals({Direction({1.0, 0.3}), Direction({0.2, 1.0}), Direction({r, -r})});
  const double sigma = 0.6;
  const double base = bound_K(sigma, p, renormalize(p)).K;
  for (double c : {0.5, 2.0, 10.0}) {
    const auto scaled = c * p;
    CHECK(rel(bound_K(sigma, scaled, renormalize(scaled)).K, c * base) <= 1e-9);
  }
}

TEST_CASE("certificate is valid") {
  const double r = 1.0 / std::sqrt(2.0);
  const auto p = from_subspace_normals({Direction({1.0, 0.0}), Direction({r, r}), Direction({0.3, -1.0}), Direction({0.0, 1.0})});
  const double sigma = 0.8;
  const auto renorm = renormalize(p);
  const auto result = bound_K(sigma, p, renorm);
  CHECK(rel(bound_objective(sigma, p, renorm, result.certificate.argmax), result.K) <= 1e-12);
  CHECK(result.certificate.search_radius > 0.0);
  CHECK(result.certificate.grid_resolution > 0.0);

  const double R = result.certificate.search_radius;
  const kernels::Axis axis{-R, R, 201};
  double audit = 0.0;
  std::vector<double> y(2);
  for (std::size_t i = 0; i < axis.count * axis.count; ++i) {
    kernels::grid_point(axis, i, y);
    audit = std::max(audit, bound_objective(sigma, p, renorm, y));
  }
  CHECK(audit <= result.K * (1.0 + 1e-6));
}

TEST_CASE("four-variable Vandermonde bound: determinant and expanded paths, random-search oracle") {
  const auto p = vandermonde_antisym(4);
  const auto renorm = renormalize(p);
  const double sigma = kSigma;
  const auto expanded = bound_K(sigma, p, renorm);
  const auto determinant =
      bound_K(sigma, p, renorm, [](std::span<const double> y) { return renorm_vandermonde_eval(4, y); });
  CHECK(rel(determinant.K, expanded.K) <= 1e-6);

  std::mt19937_64 gen(7);
  std::normal_distribution<double> z(0.0, 2.5);
  double best = 0.0;
  std::vector<double> y(4);
  for (int i = 0; i < 200000; ++i) {
    for (double& c : y) c = z(gen);
    best = std::max(best, bound_objective(sigma, p, renorm, y));
  }
  CHECK(best <= expanded.K * (1.0 + 1e-6));
  CHECK(best >= 0.9 * expanded.K);
}

TEST_CASE("bound argument errors") {
  const auto p = antisym2();
  const auto renorm = renormalize(p);
  CHECK_THROWS_AS(bound_K(0.0, p, renorm), ArgumentError);
  CHECK_THROWS_AS(bound_K(1.0, p, renorm), ArgumentError);
  const MultiPoly mixed(2, {{{2, 0}, 1.0}, {{1, 0}, 1.0}});
  CHECK_THROWS_AS(bound_K(0.5, mixed, renormalize(mixed)), ArgumentError);
  const MultiPoly odd(2, {{{2, 1}, 1.0}});
  CHECK_THROWS_AS(bound_K(0.5, odd, renormalize(odd)), ArgumentError);
}

TEST_CASE("nelder-mead finds a shifted quadratic minimum") {
  auto f = [](std::span<const double> x) {
    return (x[0] - 1.5) * (x[0] - 1.5) + 3.0 * (x[1] + 0.25) * (x[1] + 0.25) + 0.5 * x[0] * x[1];
  };
  // Stationary point of the quadratic, solved by hand.
  const double x0 = 3.125 / (2.0 - 1.0 / 24.0);
  const auto x = nelder_mead_minimize(f, {0.0, 0.0}, 0.5, 1e-10);
  const double y0 = (-1.5 - 0.5 * x0) / 6.0;
  CHECK(x[0] == doctest::Approx(x0).epsilon(1e-7));
  CHECK(x[1] == doctest::Approx(y0).epsilon(1e-7));
}

TEST_CASE("halton sequence") {
  const auto p0 = halton_point(0, 3);
  CHECK(p0[0] == 0.5);
  CHECK(p0[1] == doctest::Approx(1.0 / 3.0));
  CHECK(p0[2] == doctest::Approx(1.0 / 5.0));
  const auto p1 = halton_point(1, 2);
  CHECK(p1[0] == 0.25);
  CHECK(p1[1] == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(halton_point(0, 17), CapacityError);
}
