#include "gaussmarg/ks.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "gaussmarg/errors.hpp"

namespace gmarg {

namespace {
constexpr int kMaxSeriesTerms = 100;
constexpr double kSeriesCutoff = 1e-12;
}  // namespace

double kolmogorov_survival(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  if (lambda < 1.18) {
    // Theta-function form of the CDF; converges fast for small lambda.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double cdf = 0.0;
    for (int j = 1; j <= kMaxSeriesTerms; ++j) {
      const double odd = 2.0 * j - 1.0;
      const double term = std::exp(-odd * odd * pi2 / (8.0 * lambda * lambda));
      cdf += term;
      if (term < kSeriesCutoff) break;
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int j = 1; j <= kMaxSeriesTerms; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1) ? term : -term;
    if (term < kSeriesCutoff) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

GofResult ks_test(std::span<const double> sorted, const std::function<double(double)>& cdf, std::string null_label) {
  if (sorted.empty()) throw ArgumentError("KS test needs at least one sample");
  if (!std::is_sorted(sorted.begin(), sorted.end())) throw ArgumentError("KS test samples must be sorted");
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  GofResult result;
  result.statistic = d;
  result.n = sorted.size();
  result.p_value = kolmogorov_survival(std::sqrt(n) * d);
  result.null_label = std::move(null_label);
  return result;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double chi_square_cdf(double u, int dof) {
  if (dof < 1) throw ArgumentError("chi-square needs at least one degree of freedom");
  if (u <= 0.0) return 0.0;
  return boost::math::gamma_p(0.5 * dof, 0.5 * u);
}

TabulatedCdf::TabulatedCdf(const std::function<double(double)>& density, double lo, double hi, std::size_t points)
    : lo_(lo), step_((hi - lo) / static_cast<double>(points - 1)), cumulative_(points, 0.0), density_(points) {
  if (points < 4 || !(hi > lo)) throw ArgumentError("tabulated CDF needs hi > lo and at least four points");
  for (std::size_t i = 0; i < points; ++i) density_[i] = density(lo + step_ * static_cast<double>(i));
  for (std::size_t i = 1; i < points; ++i) {
    cumulative_[i] = cumulative_[i - 1] + 0.5 * step_ * (density_[i - 1] + density_[i]);
  }
  // Trapezoid error on [lo, x_i] is -(h^2/12)(g'(x_i) - g'(lo)) to leading order.
  const auto& g = density_;
  const std::size_t m = points - 1;
  auto slope = [&](std::size_t i) {
    if (i == 0) return (-3.0 * g[0] + 4.0 * g[1] - g[2]) / (2.0 * step_);
    if (i == m) return (3.0 * g[m] - 4.0 * g[m - 1] + g[m - 2]) / (2.0 * step_);
    return (g[i + 1] - g[i - 1]) / (2.0 * step_);
  };
  const double h2 = step_ * step_ / 12.0;
  const double slope0 = slope(0);
  for (std::size_t i = 1; i < points; ++i) cumulative_[i] -= h2 * (slope(i) - slope0);
}

double TabulatedCdf::operator()(double x) const {
  const double pos = (x - lo_) / step_;
  if (pos <= 0.0) return 0.0;
  const auto last = static_cast<double>(cumulative_.size() - 1);
  if (pos >= last) return 1.0;
  const auto i = static_cast<std::size_t>(pos);
  const double s = pos - static_cast<double>(i);
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double value = (2.0 * s3 - 3.0 * s2 + 1.0) * cumulative_[i] + (s3 - 2.0 * s2 + s) * step_ * density_[i] +
                       (-2.0 * s3 + 3.0 * s2) * cumulative_[i + 1] + (s3 - s2) * step_ * density_[i + 1];
  return std::clamp(value, 0.0, 1.0);
}

}  // namespace gmarg
