#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "gaussmarg/kernels.hpp"

using namespace gmarg::kernels;

namespace {

double bump(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::exp(-0.5 * s) * (1.0 + 0.1 * x[0]);
}

}  // namespace

TEST_CASE("grid layout") {
  const Axis axis{-1.0, 1.0, 3};
  CHECK(axis.step() == 1.0);
  CHECK(grid_size(axis, 2) == 9);
  std::vector<double> x(2);
  grid_point(axis, 5, x);
  CHECK(x[0] == 0.0);
  CHECK(x[1] == 1.0);
  CHECK(grid_weight(axis, 2, 4) == 1.0);
  CHECK(grid_weight(axis, 2, 0) == 0.25);
  CHECK_THROWS_AS(grid_size(Axis{0.0, 1.0, 1u << 20}, 4), std::length_error);
}

TEST_CASE("trapezoid: serial and parallel agree, and integrate a gaussian") {
  const int saved = max_threads();
  for (std::size_t dim : {1u, 2u, 3u}) {
    const Axis axis{-8.0, 8.0, 129};
    const double serial = trapezoid_serial(bump, dim, axis);
    CHECK(serial == doctest::Approx(std::pow(2.0 * std::numbers::pi, 0.5 * dim)).epsilon(1e-10));
    for (int cap : {1, 2, 4}) {
      set_thread_cap(cap);
      const double parallel = trapezoid_parallel(bump, dim, axis);
      CHECK(std::abs(parallel - serial) <= 1e-10 * serial);
      // Partial sums are reduced in a fixed order.
      CHECK(parallel == trapezoid_parallel(bump, dim, axis));
    }
  }
  set_thread_cap(saved);
}

TEST_CASE("tabulate: parallel is bit-identical to serial") {
  const int saved = max_threads();
  const Axis axis{-3.0, 3.0, 101};
  const auto serial = tabulate_serial(bump, 2, axis);
  for (int cap : {1, 3}) {
    set_thread_cap(cap);
    CHECK(tabulate_parallel(bump, 2, axis) == serial);
  }
  set_thread_cap(saved);
}

TEST_CASE("top_k: rank order with index tie-breaks") {
  const int saved = max_threads();
  // Plateaus of equal values exercise the tie rule.
  auto value = [](std::size_t i) { return std::floor(std::sin(0.01 * static_cast<double>(i)) * 20.0); };
  const auto serial = top_k_serial(value, 5000, 16);
  REQUIRE(serial.size() == 16);
  for (std::size_t i = 1; i < serial.size(); ++i) CHECK(ranks_before(serial[i - 1], serial[i]));
  for (int cap : {1, 2, 4, 7}) {
    set_thread_cap(cap);
    const auto parallel = top_k_parallel(value, 5000, 16);
    REQUIRE(parallel.size() == serial.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      CHECK(parallel[i].index == serial[i].index);
      CHECK(parallel[i].value == serial[i].value);
    }
  }
  set_thread_cap(saved);
  CHECK(top_k_serial(value, 5, 16).size() == 5);
  CHECK(top_k_parallel(value, 5, 16).size() == 5);
}
