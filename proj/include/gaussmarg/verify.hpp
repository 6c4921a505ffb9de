#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gaussmarg/density.hpp"
#include "gaussmarg/ks.hpp"
#include "gaussmarg/polynomial.hpp"

namespace gmarg {

inline constexpr double kDefaultAlpha = 0.01;
/// zero_set_member tolerance deciding whether a direction gets the N(0,1) null.
inline constexpr double kZeroSetTolerance = 1e-9;
inline constexpr double kPerturbedCdfHalfwidth = 10.0;
inline constexpr std::size_t kPerturbedCdfPoints = 8193;

inline const std::string kNullStandardNormal = "N(0,1)";
inline const std::string kNullPerturbedMarginal = "perturbed marginal";

/// Samples f, projects onto `a` and KS-tests the projection. Directions in the
/// zero set of P are tested against N(0,1); any other direction is tested against
/// the CDF of its perturbed marginal density.
GofResult verify_gaussian_marginal(const DensitySpec& spec, const Direction& a, std::size_t n_samples,
                                   std::uint64_t seed);

struct SymmetricInvarianceResult {
  GofResult norm_squared;  // |x|^2 against chi-square with n degrees of freedom
  GofResult max_abs;       // max_i |x_i| against (2 Phi(u) - 1)^n
};

/// Throws PreconditionError naming the first point where :P: fails to change sign
/// under a transposition of two coordinates. Checks `points` random points.
void check_renorm_antisymmetric(const DensitySpec& spec, std::uint64_t seed, int points = 20);

/// KS tests of two symmetric statistics whose law is unchanged by an antisymmetric perturbation.
SymmetricInvarianceResult verify_symmetric_invariance(const DensitySpec& spec, std::size_t n_samples,
                                                      std::uint64_t seed);

struct VerificationEntry {
  std::string test;
  GofResult result;
  double alpha = kDefaultAlpha;

  bool pass() const noexcept { return result.p_value > alpha; }
};

using VerificationReport = std::vector<VerificationEntry>;

/// Default suite for a spec: the coordinate axes and (e_i +- e_j)/sqrt(2) against their
/// respective nulls, plus symmetric invariance when :P: is antisymmetric.
/// Each test draws from its own sub-seed of `seed`.
VerificationReport run_verification(const DensitySpec& spec, std::size_t n_samples, std::uint64_t seed,
                                    double alpha, const std::vector<Direction>& extra_directions = {});

bool all_pass(const VerificationReport& report);

}  // namespace gmarg
