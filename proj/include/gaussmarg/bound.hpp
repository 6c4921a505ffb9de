#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gaussmarg/polynomial.hpp"

namespace gmarg {

/// Where and how the supremum was located, so it can be audited without re-optimizing.
struct BoundCertificate {
  std::vector<double> argmax;
  double search_radius = 0.0;
  double grid_resolution = 0.0;
};

struct BoundResult {
  double K = 0.0;
  BoundCertificate certificate;
};

/// :P: evaluator; defaults to evaluating the expanded renormalized polynomial.
using RenormEvaluator = std::function<double(std::span<const double>)>;

/// sup_y |:P:(y)| exp(-(1 - sigma^2)|y|^2 / 2) / sigma^(n + 2k).
///
/// Search: an outer radius R outside which the objective is provably below the
/// best probe value (from |:P:(y)| <= C (1 + |y|)^{2k}, C = sum |coeffs of :P:|),
/// a coarse scan of [-R, R]^n (41 nodes per axis for n <= 3, 10^5 Halton points
/// otherwise), and Nelder-Mead refinement on the log objective from the 16 best
/// scan points.
///
/// Throws ArgumentError for sigma outside (0, 1) or P not homogeneous of even degree >= 2.
BoundResult bound_K(double sigma, const MultiPoly& p, const MultiPoly& renorm_p,
                    const RenormEvaluator& evaluator = {});

/// The objective whose supremum bound_K returns, at the point y.
double bound_objective(double sigma, const MultiPoly& p, const MultiPoly& renorm_p,
                       std::span<const double> y);

/// Minimizes f over R^n from `start` with initial simplex edge `step`.
/// Stops when every vertex lies within `tolerance` of the best one.
std::vector<double> nelder_mead_minimize(const std::function<double(std::span<const double>)>& f,
                                         std::vector<double> start, double step, double tolerance,
                                         int max_iterations = 20000);

/// Point `index` of the Halton sequence in [0, 1)^dim (bases 2, 3, 5, ...).
std::vector<double> halton_point(std::size_t index, std::size_t dim);

}  // namespace gmarg
