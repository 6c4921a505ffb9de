#include "gaussmarg/marginals.hpp"

#include <cmath>
#include <numbers>

#include "gaussmarg/errors.hpp"
#include "gaussmarg/hermite.hpp"

namespace gmarg {

namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

// H_{2k+1}(y) / y for y != 0, and its limit (2k+1) H_{2k}(0) at y = 0.
double odd_hermite_over_y(int order, double y) {
  if (y != 0.0) return hermite_eval(order, y) / y;
  return HermiteTable::shared().coefficients(order)[1];
}

}  // namespace

MarginalLaw::MarginalLaw(const DensitySpec& spec, Direction direction)
    : direction_(std::move(direction)),
      pa_(0.0),
      epsilon_(spec.epsilon()),
      sigma_(spec.sigma()),
      k_(spec.k()),
      coefficient_(0.0) {
  if (direction_.dimension() != spec.dimension()) {
    throw ArgumentError("direction dimension differs from density dimension");
  }
  pa_ = spec.polynomial()(direction_.components());
  const double sign = (k_ % 2 == 0) ? 1.0 : -1.0;
  coefficient_ = sign * epsilon_ * pa_ / std::pow(sigma_, 2 * k_ + 1);
}

double marginal_cf(const MarginalLaw& law, double t) {
  const double t2 = t * t;
  return std::exp(-0.5 * t2) +
         law.epsilon() * law.pa() * std::exp(-0.5 * law.sigma() * law.sigma() * t2) * std::pow(t2, law.k());
}

double marginal_density(const MarginalLaw& law, double x) {
  double value = std::exp(-0.5 * x * x);
  if (!law.is_gaussian()) {
    const double y = x / law.sigma();
    value += law.coefficient() * hermite_eval(2 * law.k(), y) * std::exp(-0.5 * y * y);
  }
  value *= kInvSqrt2Pi;
  return value > 0.0 ? value : 0.0;
}

double critical_equation(const MarginalLaw& law, double x) {
  const double s = law.sigma();
  const double growth = std::exp(0.5 * x * x * (1.0 / (s * s) - 1.0));
  if (law.is_gaussian()) return growth;
  return growth + (law.coefficient() / s) * odd_hermite_over_y(2 * law.k() + 1, x / s) / s;
}

double marginal_density_derivative(const MarginalLaw& law, double x) {
  const double s = law.sigma();
  const double y = x / s;
  double value = -x * std::exp(-0.5 * x * x);
  if (!law.is_gaussian()) value -= (law.coefficient() / s) * hermite_eval(2 * law.k() + 1, y) * std::exp(-0.5 * y * y);
  return kInvSqrt2Pi * value;
}

std::string to_string(Modality m) {
  switch (m) {
    case Modality::gaussian_exact:
      return "gaussian-exact";
    case Modality::unimodal:
      return "unimodal";
    case Modality::nonunimodal:
      return "nonunimodal";
  }
  return "unknown";
}

namespace {

// Smallest x beyond which exp(alpha x^2) > |c'| S (1 + x/sigma)^{2k} / sigma for good,
// where S bounds the coefficients of H_{2k+1}(y)/y.
double scan_limit(const MarginalLaw& law) {
  const double s = law.sigma();
  const double alpha = 0.5 * (1.0 / (s * s) - 1.0);
  const int order = 2 * law.k() + 1;
  const auto& row = HermiteTable::shared().coefficients(order);
  double coeff_sum = 0.0;
  for (std::size_t j = 1; j < row.size(); ++j) coeff_sum += std::abs(row[j]);
  const double log_poly_scale = std::log(std::abs(law.coefficient() / s) * coeff_sum / s);
  const double degree = 2.0 * law.k();
  double x = 0.0;
  for (;;) {
    x += 1e-2;
    const bool dominates = alpha * x * x > log_poly_scale + degree * std::log1p(x / s);
    const bool increasing = 2.0 * alpha * x > degree / (s + x);
    if (dominates && increasing) return x;
  }
}

double bisect(const MarginalLaw& law, double lo, double hi, double f_lo) {
  while (hi - lo > kCriticalRootTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = critical_equation(law, mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Golden-section minimum of |B| on [lo, hi].
double min_abs_equation(const MarginalLaw& law, double lo, double hi) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  for (int i = 0; i < 80 && b - a > 1e-14; ++i) {
    if (std::abs(critical_equation(law, c)) < std::abs(critical_equation(law, d))) {
      b = d;
    } else {
      a = c;
    }
    c = b - ratio * (b - a);
    d = a + ratio * (b - a);
  }
  return std::abs(critical_equation(law, 0.5 * (a + b)));
}

}  // namespace

ModalityReport critical_points(const MarginalLaw& law) {
  ModalityReport report;
  report.density_at_zero = marginal_density(law, 0.0);
  report.equation_at_zero = critical_equation(law, 0.0);
  if (law.is_gaussian()) {
    report.classification = Modality::gaussian_exact;
    return report;
  }

  report.search_limit = scan_limit(law);
  const auto steps = static_cast<std::size_t>(std::ceil(report.search_limit / kCriticalScanStep));
  double x_prev = 0.0;
  double b_prev = report.equation_at_zero;
  double b_prev2 = b_prev;
  for (std::size_t i = 1; i <= steps; ++i) {
    const double x = static_cast<double>(i) * kCriticalScanStep;
    const double b = critical_equation(law, x);
    if (b == 0.0) {
      report.critical_points.push_back(x);
      report.is_maximum.push_back(b_prev < 0.0);
    } else if (b_prev != 0.0 && (b < 0.0) != (b_prev < 0.0)) {
      const double root = bisect(law, x_prev, x, b_prev);
      report.critical_points.push_back(root);
      // g' = -(positive) x B, so B rising through zero turns g from increasing to decreasing.
      report.is_maximum.push_back(b_prev < 0.0);
    } else if (i >= 2 && std::abs(b_prev) <= std::abs(b_prev2) && std::abs(b_prev) <= std::abs(b) &&
               (b_prev < 0.0) == (b < 0.0) && (b_prev2 < 0.0) == (b < 0.0)) {
      if (min_abs_equation(law, x_prev - kCriticalScanStep, x) <= 1e-10) report.tangential_root_flagged = true;
    }
    b_prev2 = b_prev;
    b_prev = b;
    x_prev = x;
  }

  for (double c : report.critical_points) report.density_at_critical.push_back(marginal_density(law, c));

  bool positive_maximum = false;
  for (bool m : report.is_maximum) positive_maximum = positive_maximum || m;
  if (report.equation_at_zero == 0.0) report.tangential_root_flagged = true;
  // g is even: a positive maximum has a mirror image, so either way there are >= 2 modes.
  report.classification =
      (report.equation_at_zero < 0.0 || positive_maximum) ? Modality::nonunimodal : Modality::unimodal;
  return report;
}

std::vector<std::pair<double, double>> marginal_grid(const MarginalLaw& law, const std::vector<double>& xs) {
  std::vector<std::pair<double, double>> out;
  out.reserve(xs.size());
  for (double x : xs) {
    if (!std::isfinite(x)) throw ArgumentError("marginal grid points must be finite");
    out.emplace_back(x, marginal_density(law, x));
  }
  return out;
}

}  // namespace gmarg
