#pragma once

#include <cstddef>
#include <span>

#include "gaussmarg/bound.hpp"
#include "gaussmarg/polynomial.hpp"

namespace gmarg {

/// A validated perturbation (epsilon, sigma, P) of the standard gaussian on R^n.
///
/// Characteristic function
///   Phi(t) = exp(-|t|^2/2) + epsilon exp(-sigma^2 |t|^2/2) P(t),
/// density
///   f(x) = (2 pi)^{-n/2} exp(-|x|^2/2) { 1 + (-1)^k epsilon sigma^{-(n+2k)} :P:(x/sigma)
///                                            exp(-|x|^2 (1 - sigma^2) / (2 sigma^2)) },
/// with P homogeneous of degree 2k and |epsilon| <= 1/K(sigma, P).
class DensitySpec {
 public:
  double epsilon() const noexcept { return epsilon_; }
  double sigma() const noexcept { return sigma_; }
  const MultiPoly& polynomial() const noexcept { return p_; }
  const MultiPoly& renormalized() const noexcept { return renorm_p_; }
  int k() const noexcept { return k_; }
  std::size_t dimension() const noexcept { return p_.dimension(); }
  double bound_K() const noexcept { return bound_.K; }
  const BoundCertificate& certificate() const noexcept { return bound_.certificate; }

  /// :P:(y). Uses the determinant form when P is the antisymmetric Vandermonde product.
  double renorm_eval(std::span<const double> y) const;
  bool uses_determinant_path() const noexcept { return vandermonde_n_ > 0; }

  friend DensitySpec make_spec(double epsilon, double sigma, MultiPoly p);
  friend DensitySpec make_spec_with_bound(double epsilon, double sigma, MultiPoly p, BoundResult bound);

 private:
  DensitySpec(double epsilon, double sigma, MultiPoly p, MultiPoly renorm_p, BoundResult bound);

  double epsilon_;
  double sigma_;
  MultiPoly p_;
  MultiPoly renorm_p_;
  int k_;
  BoundResult bound_;
  int vandermonde_n_ = 0;
};

/// Relative slack on |epsilon| K <= 1, absorbing round-off when epsilon is the exact boundary value.
inline constexpr double kValiditySlack = 1e-12;

/// Computes :P: and K(sigma, P), then checks |epsilon| K <= 1.
/// Throws ArgumentError (sigma, P) or ValidityError (epsilon, carrying [-1/K, 1/K]).
DensitySpec make_spec(double epsilon, double sigma, MultiPoly p);

/// As make_spec, but trusts a previously computed bound instead of re-optimizing.
DensitySpec make_spec_with_bound(double epsilon, double sigma, MultiPoly p, BoundResult bound);

/// Phi(t). Phi(0) = 1 and Phi(-t) = Phi(t) hold exactly.
double cf_phi(const DensitySpec& spec, std::span<const double> t);

/// Standard gaussian density on R^n.
double gaussian_density(std::span<const double> x);

/// The braced factor of f; lies in [1 - |epsilon| K, 1 + |epsilon| K]. Not clamped.
double perturbation_factor(const DensitySpec& spec, std::span<const double> x);

/// f(x), with round-off negatives at the boundary epsilon clamped to 0.
double density_f(const DensitySpec& spec, std::span<const double> x);

/// Tensor trapezoid integral of f over [-b, b]^n. n <= 3, points_per_axis >= 33.
double quadrature_mass(const DensitySpec& spec, double box_halfwidth, std::size_t points_per_axis);

}  // namespace gmarg
