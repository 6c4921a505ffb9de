#include "gaussmarg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "gaussmarg/errors.hpp"
#include "gaussmarg/marginals.hpp"
#include "gaussmarg/sampling.hpp"

namespace gmarg {

namespace {

// Sub-stream tags for run_verification.
constexpr std::uint64_t kMarginalStream = 0x100;
constexpr std::uint64_t kSymmetricStream = 0x200;
constexpr std::uint64_t kAntisymmetryStream = 0x300;

std::string format_point(const std::vector<double>& x) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ')';
  return os.str();
}

std::string format_direction(const Direction& a) {
  std::vector<double> c(a.components().begin(), a.components().end());
  return format_point(c);
}

}  // namespace

GofResult verify_gaussian_marginal(const DensitySpec& spec, const Direction& a, std::size_t n_samples,
                                   std::uint64_t seed) {
  if (a.dimension() != spec.dimension()) throw ArgumentError("direction dimension differs from density dimension");
  const SampleBatch batch = sample(spec, n_samples, seed);
  std::vector<double> projected(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto x = batch.point(i);
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += a[j] * x[j];
    projected[i] = s;
  }
  std::sort(projected.begin(), projected.end());

  if (zero_set_member(spec.polynomial(), a.components(), kZeroSetTolerance)) {
    return ks_test(projected, normal_cdf, kNullStandardNormal);
  }
  const MarginalLaw law(spec, a);
  const TabulatedCdf cdf([&law](double x) { return marginal_density(law, x); }, -kPerturbedCdfHalfwidth,
                         kPerturbedCdfHalfwidth, kPerturbedCdfPoints);
  return ks_test(projected, [&cdf](double x) { return cdf(x); }, kNullPerturbedMarginal);
}

void check_renorm_antisymmetric(const DensitySpec& spec, std::uint64_t seed, int points) {
  const std::size_t n = spec.dimension();
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::vector<double> x(n);
  std::vector<double> swapped(n);
  for (int p = 0; p < points; ++p) {
    for (double& v : x) v = coord(gen);
    const double value = spec.renorm_eval(x);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        swapped = x;
        std::swap(swapped[i], swapped[j]);
        const double mirrored = spec.renorm_eval(swapped);
        const double scale = std::max({std::abs(value), std::abs(mirrored), 1e-300});
        if (std::abs(value + mirrored) > 1e-9 * scale) {
          throw PreconditionError(":P: is not antisymmetric: swapping coordinates " + std::to_string(i + 1) +
                                  " and " + std::to_string(j + 1) + " at " + format_point(x) +
                                  " does not negate its value");
        }
      }
    }
  }
}

SymmetricInvarianceResult verify_symmetric_invariance(const DensitySpec& spec, std::size_t n_samples,
                                                      std::uint64_t seed) {
  check_renorm_antisymmetric(spec, derive_seed(seed, kAntisymmetryStream));
  const std::size_t n = spec.dimension();
  const SampleBatch batch = sample(spec, n_samples, seed);
  std::vector<double> norm_sq(batch.size());
  std::vector<double> max_abs(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    double s = 0.0;
    double m = 0.0;
    for (double v : batch.point(i)) {
      s += v * v;
      m = std::max(m, std::abs(v));
    }
    norm_sq[i] = s;
    max_abs[i] = m;
  }
  std::sort(norm_sq.begin(), norm_sq.end());
  std::sort(max_abs.begin(), max_abs.end());

  const int dof = static_cast<int>(n);
  SymmetricInvarianceResult result;
  result.norm_squared = ks_test(norm_sq, [dof](double u) { return chi_square_cdf(u, dof); },
                                "chi-square(" + std::to_string(n) + ")");
  result.max_abs = ks_test(
      max_abs,
      [dof](double u) { return u <= 0.0 ? 0.0 : std::pow(2.0 * normal_cdf(u) - 1.0, dof); },
      "max|x_i| under N(0,I_" + std::to_string(n) + ")");
  return result;
}

VerificationReport run_verification(const DensitySpec& spec, std::size_t n_samples, std::uint64_t seed,
                                    double alpha, const std::vector<Direction>& extra_directions) {
  const std::size_t n = spec.dimension();
  std::vector<Direction> directions;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    directions.emplace_back(e);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (double sign : {1.0, -1.0}) {
        std::vector<double> e(n, 0.0);
        e[i] = 1.0;
        e[j] = sign;
        directions.emplace_back(e);
      }
    }
  }
  directions.insert(directions.end(), extra_directions.begin(), extra_directions.end());

  VerificationReport report;
  for (std::size_t d = 0; d < directions.size(); ++d) {
    const auto& a = directions[d];
    VerificationEntry entry;
    entry.test = "marginal " + format_direction(a);
    entry.result = verify_gaussian_marginal(spec, a, n_samples, derive_seed(seed, kMarginalStream + d));
    entry.alpha = alpha;
    report.push_back(std::move(entry));
  }

  bool antisymmetric = n >= 2;
  if (antisymmetric) {
    try {
      check_renorm_antisymmetric(spec, derive_seed(seed, kAntisymmetryStream));
    } catch (const PreconditionError&) {
      antisymmetric = false;
    }
  }
  if (antisymmetric) {
    const auto sym = verify_symmetric_invariance(spec, n_samples, derive_seed(seed, kSymmetricStream));
    report.push_back({"symmetric |x|^2", sym.norm_squared, alpha});
    report.push_back({"symmetric max|x_i|", sym.max_abs, alpha});
  }
  return report;
}

bool all_pass(const VerificationReport& report) {
  return std::all_of(report.begin(), report.end(), [](const VerificationEntry& e) { return e.pass(); });
}

}  // namespace gmarg
