#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gaussmarg/density.hpp"
#include "gaussmarg/polynomial.hpp"

namespace gmarg {

/// Law of the linear functional x -> a^T x under a DensitySpec.
///
///   phi_a(t) = exp(-t^2/2) + epsilon P(a) exp(-sigma^2 t^2/2) t^{2k}
///   g_a(x)   = (2 pi)^{-1/2} { exp(-x^2/2) + c H_{2k}(x/sigma) exp(-x^2/(2 sigma^2)) },
///   c        = (-1)^k epsilon P(a) / sigma^{2k+1}.
class MarginalLaw {
 public:
  MarginalLaw(const DensitySpec& spec, Direction direction);

  const Direction& direction() const noexcept { return direction_; }
  /// P(a), cached at construction.
  double pa() const noexcept { return pa_; }
  double epsilon() const noexcept { return epsilon_; }
  double sigma() const noexcept { return sigma_; }
  int k() const noexcept { return k_; }
  /// The coefficient c multiplying H_{2k}(x/sigma) exp(-x^2/(2 sigma^2)).
  double coefficient() const noexcept { return coefficient_; }
  bool is_gaussian() const noexcept { return coefficient_ == 0.0; }

 private:
  Direction direction_;
  double pa_;
  double epsilon_;
  double sigma_;
  int k_;
  double coefficient_;
};

double marginal_cf(const MarginalLaw& law, double t);
double marginal_density(const MarginalLaw& law, double x);
/// Analytic g_a'(x) = -(x / sqrt(2 pi)) exp(-x^2/(2 sigma^2)) B(x).
double marginal_density_derivative(const MarginalLaw& law, double x);

/// B(x) = exp((x^2/2)(1/sigma^2 - 1)) + ((-1)^k epsilon P(a) / sigma^{2k+2}) H_{2k+1}(x/sigma) / x,
/// extended continuously to x = 0. Nonzero critical points of g_a are the roots of B.
double critical_equation(const MarginalLaw& law, double x);

enum class Modality { gaussian_exact, unimodal, nonunimodal };

std::string to_string(Modality m);

struct ModalityReport {
  /// Positive roots of B in increasing order; the mirror images are critical too.
  std::vector<double> critical_points;
  /// true where g_a has a local maximum at the matching critical point.
  std::vector<bool> is_maximum;
  std::vector<double> density_at_critical;
  double density_at_zero = 0.0;
  /// B(0); 0 is a mode when positive, a local minimum when negative.
  double equation_at_zero = 0.0;
  Modality classification = Modality::gaussian_exact;
  /// Upper end of the scan window; B > 0 everywhere beyond it.
  double search_limit = 0.0;
  /// A non-crossing (tangential) root of B within 1e-10 was seen; multiplicity not resolved.
  bool tangential_root_flagged = false;
};

inline constexpr double kCriticalScanStep = 1e-3;
inline constexpr double kCriticalRootTolerance = 1e-12;

/// Brackets every positive root of B on a 1e-3 grid over (0, x_max], refines each
/// by bisection to 1e-12, and classifies modality. x_max is chosen so that the
/// exponential term of B dominates the polynomial term beyond it.
ModalityReport critical_points(const MarginalLaw& law);

std::vector<std::pair<double, double>> marginal_grid(const MarginalLaw& law, const std::vector<double>& xs);

}  // namespace gmarg
