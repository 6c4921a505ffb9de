#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace gmarg {

struct GofResult {
  double statistic = 0.0;  // D_N
  double p_value = 1.0;    // asymptotic, from sqrt(N) D_N
  std::size_t n = 0;
  std::string null_label;
};

/// P(K > lambda) for the limiting Kolmogorov distribution of sqrt(N) D_N.
double kolmogorov_survival(double lambda);

/// Two-sided one-sample KS test. `sorted` must be nonempty and ascending.
GofResult ks_test(std::span<const double> sorted, const std::function<double(double)>& cdf,
                  std::string null_label = {});

double normal_cdf(double x);
/// Chi-square CDF with `dof` degrees of freedom.
double chi_square_cdf(double u, int dof);

/// CDF of a 1-d density by cumulative trapezoid on [lo, hi] with an Euler-Maclaurin
/// end correction, interpolated by cubic Hermite using the density as slope.
/// Both steps are O(h^4). 0 below lo, 1 above hi.
class TabulatedCdf {
 public:
  TabulatedCdf(const std::function<double(double)>& density, double lo, double hi, std::size_t points);
  double operator()(double x) const;
  double total_mass() const noexcept { return cumulative_.back(); }

 private:
  double lo_;
  double step_;
  std::vector<double> cumulative_;
  std::vector<double> density_;
};

}  // namespace gmarg
