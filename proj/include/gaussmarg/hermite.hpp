#pragma once

#include <span>
#include <vector>

#include "gaussmarg/polynomial.hpp"

namespace gmarg {

// Probabilists' convention throughout: H_m is monic and orthogonal under the
// standard normal weight, with d^m/dx^m N(x) = (-1)^m H_m(x) N(x).
// H_0 = 1, H_1 = x, H_2 = x^2 - 1, H_3 = x^3 - 3x, H_4 = x^4 - 6x^2 + 3.
// The physicists' H_m differ by a factor 2^{m/2} and a sqrt(2) rescaling of x.

inline constexpr int kMaxHermiteOrder = 64;

/// H_m(x) by the upward recurrence H_{m+1} = x H_m - m H_{m-1}.
/// Throws CapacityError for m > kMaxHermiteOrder.
double hermite_eval(int m, double x);

/// Fills out[0..size) with H_0(x) .. H_{size-1}(x).
void hermite_values(double x, std::span<double> out);

/// Monomial-basis coefficients of H_0 .. H_M; row m has m + 1 entries,
/// entry j being the coefficient of x^j.
class HermiteTable {
 public:
  explicit HermiteTable(int max_order);

  int max_order() const noexcept { return static_cast<int>(rows_.size()) - 1; }
  const std::vector<double>& coefficients(int m) const { return rows_.at(static_cast<std::size_t>(m)); }

  /// Shared table up to kMaxHermiteOrder.
  static const HermiteTable& shared();

 private:
  std::vector<std::vector<double>> rows_;
};

/// :P:, obtained by replacing every monomial t_1^{m_1}...t_n^{m_n} with
/// H_{m_1}(x_1)...H_{m_n}(x_n). Linear in P. Throws ArgumentError on the zero polynomial.
MultiPoly renormalize(const MultiPoly& p);

/// :P:(x) for P = vandermonde_antisym(n), as the determinant of the n x n matrix
/// whose row r holds H_{2(n-1-r)+1}(x_1), ..., H_{2(n-1-r)+1}(x_n) (odd orders,
/// highest first). Works for any even n; no expansion is formed.
double renorm_vandermonde_eval(int n, std::span<const double> x);

}  // namespace gmarg
