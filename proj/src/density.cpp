#include "gaussmarg/density.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "gaussmarg/errors.hpp"
#include "gaussmarg/hermite.hpp"
#include "gaussmarg/kernels.hpp"

namespace gmarg {

namespace {

// exp(-q) underflows to zero well before q reaches this.
constexpr double kLogFormThreshold = 600.0;

double norm_sq(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

void check_dimension(const DensitySpec& spec, std::span<const double> x) {
  if (x.size() != spec.dimension()) {
    throw ArgumentError("point has dimension " + std::to_string(x.size()) + ", density has " +
                        std::to_string(spec.dimension()));
  }
}

int detect_vandermonde(const MultiPoly& p) {
  const auto n = static_cast<int>(p.dimension());
  if (n < 2 || n % 2 != 0 || n > kMaxVandermondeDimension) return 0;
  if (p.homogeneous_degree() != n * n) return 0;
  return p == vandermonde_antisym(n) ? n : 0;
}

}  // namespace

DensitySpec::DensitySpec(double epsilon, double sigma, MultiPoly p, MultiPoly renorm_p, BoundResult bound)
    : epsilon_(epsilon),
      sigma_(sigma),
      p_(std::move(p)),
      renorm_p_(std::move(renorm_p)),
      k_(*p_.homogeneous_degree() / 2),
      bound_(std::move(bound)),
      vandermonde_n_(detect_vandermonde(p_)) {}

double DensitySpec::renorm_eval(std::span<const double> y) const {
  if (vandermonde_n_ > 0) return renorm_vandermonde_eval(vandermonde_n_, y);
  return renorm_p_(y);
}

namespace {

void validate_inputs(double epsilon, double sigma, const MultiPoly& p) {
  if (!std::isfinite(epsilon)) throw ArgumentError("epsilon must be finite");
  if (!(sigma > 0.0 && sigma < 1.0)) throw ArgumentError("sigma must lie in (0, 1), got " + std::to_string(sigma));
  const auto degree = p.homogeneous_degree();
  if (!degree) throw ArgumentError("perturbation polynomial must be homogeneous and nonzero");
  if (*degree < 2 || *degree % 2 != 0) {
    throw ArgumentError("perturbation polynomial must have even degree >= 2, got " + std::to_string(*degree));
  }
}

void validate_epsilon(double epsilon, double K) {
  if (!(K > 0.0) || !std::isfinite(K)) throw ArgumentError("bound K must be positive and finite");
  if (std::abs(epsilon) * K > 1.0 + kValiditySlack) {
    const double limit = 1.0 / K;
    char msg[128];
    std::snprintf(msg, sizeof msg, "epsilon = %.17g lies outside the admissible interval [%.17g, %.17g]", epsilon,
                  -limit, limit);
    throw ValidityError(msg, -limit, limit);
  }
}

}  // namespace

DensitySpec make_spec(double epsilon, double sigma, MultiPoly p) {
  validate_inputs(epsilon, sigma, p);
  MultiPoly renorm_p = renormalize(p);
  const int vn = detect_vandermonde(p);
  RenormEvaluator evaluator;
  if (vn > 0) evaluator = [vn](std::span<const double> y) { return renorm_vandermonde_eval(vn, y); };
  BoundResult bound = bound_K(sigma, p, renorm_p, evaluator);
  validate_epsilon(epsilon, bound.K);
  return DensitySpec(epsilon, sigma, std::move(p), std::move(renorm_p), std::move(bound));
}

DensitySpec make_spec_with_bound(double epsilon, double sigma, MultiPoly p, BoundResult bound) {
  validate_inputs(epsilon, sigma, p);
  if (bound.certificate.argmax.size() != p.dimension()) {
    throw ArgumentError("bound certificate dimension differs from polynomial dimension");
  }
  validate_epsilon(epsilon, bound.K);
  MultiPoly renorm_p = renormalize(p);
  return DensitySpec(epsilon, sigma, std::move(p), std::move(renorm_p), std::move(bound));
}

double cf_phi(const DensitySpec& spec, std::span<const double> t) {
  check_dimension(spec, t);
  const double r2 = norm_sq(t);
  const double s2 = spec.sigma() * spec.sigma();
  return std::exp(-0.5 * r2) + spec.epsilon() * std::exp(-0.5 * s2 * r2) * spec.polynomial()(t);
}

double gaussian_density(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  return std::exp(-0.5 * norm_sq(x) - 0.5 * n * std::log(2.0 * std::numbers::pi));
}

double perturbation_factor(const DensitySpec& spec, std::span<const double> x) {
  check_dimension(spec, x);
  if (spec.epsilon() == 0.0) return 1.0;
  const std::size_t n = spec.dimension();
  const double sigma = spec.sigma();
  std::vector<double> y(x.begin(), x.end());
  for (double& v : y) v /= sigma;
  const double q = 0.5 * (1.0 - sigma * sigma) * norm_sq(y);
  const double renorm = spec.renorm_eval(y);
  if (renorm == 0.0) return 1.0;
  const double sign = (spec.k() % 2 == 0) ? 1.0 : -1.0;
  const double log_prefactor = std::log(std::abs(spec.epsilon())) -
                               (static_cast<double>(n) + 2.0 * spec.k()) * std::log(sigma);
  if (q < kLogFormThreshold && std::isfinite(renorm)) {
    const double prefactor = sign * spec.epsilon() *
                             std::pow(sigma, -(static_cast<double>(n) + 2.0 * spec.k()));
    return 1.0 + prefactor * renorm * std::exp(-q);
  }
  if (!std::isfinite(renorm)) return 1.0;
  const double magnitude = std::exp(std::log(std::abs(renorm)) + log_prefactor - q);
  const double term_sign = sign * (spec.epsilon() > 0 ? 1.0 : -1.0) * (renorm > 0 ? 1.0 : -1.0);
  return 1.0 + term_sign * magnitude;
}

double density_f(const DensitySpec& spec, std::span<const double> x) {
  const double value = gaussian_density(x) * perturbation_factor(spec, x);
  return value > 0.0 ? value : 0.0;
}

double quadrature_mass(const DensitySpec& spec, double box_halfwidth, std::size_t points_per_axis) {
  if (spec.dimension() > 3) throw CapacityError("tensor quadrature is limited to n <= 3");
  if (points_per_axis < 33) throw ArgumentError("quadrature needs at least 33 points per axis");
  if (!(box_halfwidth > 0.0)) throw ArgumentError("box half-width must be positive");
  const kernels::Axis axis{-box_halfwidth, box_halfwidth, points_per_axis};
  return kernels::trapezoid_parallel(
      [&spec](std::span<const double> x) { return gaussian_density(x) * perturbation_factor(spec, x); },
      spec.dimension(), axis);
}

}  // namespace gmarg
