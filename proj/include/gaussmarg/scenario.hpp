#pragma once

#include <cmath>
#include <numbers>

#include "gaussmarg/density.hpp"
#include "gaussmarg/polynomial.hpp"

namespace gmarg::example26 {

// Reference scenario: n = 2, sigma = 2^{-1/2}, P(t) = t1 t2 (t1^2 - t2^2).
// There :P:(x) = x1^3 x2 - x1 x2^3, K = 128 e^{-2}, and with eta = 32 epsilon
//   f_eta(x) = (2 pi)^{-1} e^{-|x|^2/2} { 1 + eta (x1^3 x2 - x1 x2^3) e^{-|x|^2/2} },  |eta| <= e^2/4.

inline const double kSigma = std::numbers::sqrt2 / 2.0;
inline const double kExactK = 128.0 * std::exp(-2.0);
inline const double kMaxEta = std::exp(2.0) / 4.0;
inline constexpr double kEtaPerEpsilon = 32.0;

inline MultiPoly polynomial() { return vandermonde_antisym(2); }

inline double epsilon_from_eta(double eta) { return eta / kEtaPerEpsilon; }

inline DensitySpec spec_for_eta(double eta) { return make_spec(epsilon_from_eta(eta), kSigma, polynomial()); }

/// a = (sin theta, cos theta).
inline Direction direction(double theta) { return Direction({std::sin(theta), std::cos(theta)}); }

}  // namespace gmarg::example26
