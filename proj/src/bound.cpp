#include "gaussmarg/bound.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "gaussmarg/errors.hpp"
#include "gaussmarg/kernels.hpp"

namespace gmarg {

namespace {

constexpr std::size_t kGridNodesPerAxis = 41;
constexpr std::size_t kMaxGridDimension = 3;
constexpr std::size_t kHaltonScanPoints = 100000;
constexpr std::size_t kProbePoints = 4096;
constexpr std::size_t kStarts = 16;
constexpr double kSimplexTolerance = 1e-10;
constexpr double kRadiusStep = 1e-2;

constexpr std::array<int, 16> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

int validated_degree(double sigma, const MultiPoly& p) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw ArgumentError("sigma must lie in (0, 1)");
  const auto degree = p.homogeneous_degree();
  if (!degree) throw ArgumentError("perturbation polynomial must be homogeneous and nonzero");
  if (*degree < 2 || *degree % 2 != 0) {
    throw ArgumentError("perturbation polynomial must have even degree >= 2, got " + std::to_string(*degree));
  }
  return *degree;
}

double norm_sq(std::span<const double> y) {
  double s = 0.0;
  for (double v : y) s += v * v;
  return s;
}

}  // namespace

std::vector<double> halton_point(std::size_t index, std::size_t dim) {
  if (dim > kPrimes.size()) throw CapacityError("Halton sequence limited to 16 dimensions");
  std::vector<double> out(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    const auto base = static_cast<std::size_t>(kPrimes[d]);
    double f = 1.0;
    double r = 0.0;
    std::size_t i = index + 1;
    while (i > 0) {
      f /= static_cast<double>(base);
      r += f * static_cast<double>(i % base);
      i /= base;
    }
    out[d] = r;
  }
  return out;
}

std::vector<double> nelder_mead_minimize(const std::function<double(std::span<const double>)>& f,
                                         std::vector<double> start, double step, double tolerance,
                                         int max_iterations) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> v(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) v[i + 1][i] += step;
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fv[i] = f(v[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto point_along = [&](double t, std::vector<double>& out, const std::vector<double>& worst) {
    for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + t * (worst[j] - centroid[j]);
  };

  for (int iter = 0; iter < max_iterations; ++iter) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];

    double spread = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j < n; ++j) spread = std::max(spread, std::abs(v[i][j] - v[best][j]));
    }
    if (spread <= tolerance) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += v[i][j] / static_cast<double>(n);
    }

    point_along(-1.0, trial, v[worst]);
    const double fr = f(trial);
    if (fr < fv[best]) {
      point_along(-2.0, trial2, v[worst]);
      const double fe = f(trial2);
      if (fe < fr) {
        v[worst] = trial2;
        fv[worst] = fe;
      } else {
        v[worst] = trial;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      v[worst] = trial;
      fv[worst] = fr;
      continue;
    }
    // Contraction: outside if the reflection improved on the worst point, inside otherwise.
    const bool outside = fr < fv[worst];
    point_along(outside ? -0.5 : 0.5, trial2, v[worst]);
    const double fc = f(trial2);
    if (fc < (outside ? fr : fv[worst])) {
      v[worst] = trial2;
      fv[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j) v[i][j] = v[best][j] + 0.5 * (v[i][j] - v[best][j]);
      fv[i] = f(v[i]);
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  return v[best];
}

double bound_objective(double sigma, const MultiPoly& p, const MultiPoly& renorm_p,
                       std::span<const double> y) {
  const int degree = validated_degree(sigma, p);
  const double n = static_cast<double>(p.dimension());
  return std::abs(renorm_p(y)) * std::exp(-0.5 * (1.0 - sigma * sigma) * norm_sq(y)) /
         std::pow(sigma, n + degree);
}

BoundResult bound_K(double sigma, const MultiPoly& p, const MultiPoly& renorm_p,
                    const RenormEvaluator& evaluator) {
  const int degree = validated_degree(sigma, p);
  if (renorm_p.dimension() != p.dimension()) throw ArgumentError(":P: dimension differs from P");
  const std::size_t n = p.dimension();
  const double a = 1.0 - sigma * sigma;
  const double log_scale = -(static_cast<double>(n) + degree) * std::log(sigma);
  const double d = degree;

  auto renorm = [&](std::span<const double> y) { return evaluator ? evaluator(y) : renorm_p(y); };
  auto log_objective = [&](std::span<const double> y) {
    const double v = renorm(y);
    if (v == 0.0 || !std::isfinite(v)) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(v)) - 0.5 * a * norm_sq(y) + log_scale;
  };

  // Probe around the radial peak of |y|^{2k} exp(-a|y|^2/2) for a first lower bound.
  const double probe_half = std::sqrt(d / a) + 2.0;
  auto probe_value = [&](std::size_t i) {
    auto y = halton_point(i, n);
    for (double& c : y) c = probe_half * (2.0 * c - 1.0);
    return log_objective(y);
  };
  const auto probe = kernels::top_k_parallel(probe_value, kProbePoints, 1);
  const double floor_value = probe.front().value;
  if (!std::isfinite(floor_value)) throw ArgumentError(":P: vanished on every probe point");

  // Outside radius R the envelope C (1 + r)^{2k} exp(-a r^2/2) is below the probe value.
  const double log_c = std::log(renorm_p.l1_norm());
  auto log_envelope = [&](double r) { return log_c + d * std::log1p(r) - 0.5 * a * r * r + log_scale; };
  double radius = (-a + std::sqrt(a * a + 4.0 * a * d)) / (2.0 * a);
  while (log_envelope(radius) >= floor_value) radius += kRadiusStep;

  std::size_t scan_count = 0;
  double resolution = 0.0;
  std::function<std::vector<double>(std::size_t)> scan_point;
  if (n <= kMaxGridDimension) {
    const kernels::Axis axis{-radius, radius, kGridNodesPerAxis};
    scan_count = kernels::grid_size(axis, n);
    resolution = axis.step();
    scan_point = [axis, n](std::size_t i) {
      std::vector<double> y(n);
      kernels::grid_point(axis, i, y);
      return y;
    };
  } else {
    scan_count = kHaltonScanPoints;
    resolution = 2.0 * radius / std::pow(static_cast<double>(scan_count), 1.0 / static_cast<double>(n));
    scan_point = [radius, n](std::size_t i) {
      auto y = halton_point(i, n);
      for (double& c : y) c = radius * (2.0 * c - 1.0);
      return y;
    };
  }
  const auto starts = kernels::top_k_parallel([&](std::size_t i) { return log_objective(scan_point(i)); },
                                              scan_count, kStarts);

  std::vector<kernels::Candidate> refined(starts.size());
  std::vector<std::vector<double>> points(starts.size());
  const auto start_count = static_cast<long long>(starts.size());
  auto negated = [&](std::span<const double> y) { return -log_objective(y); };
#pragma omp parallel for schedule(dynamic)
  for (long long s = 0; s < start_count; ++s) {
    const auto& start = starts[static_cast<std::size_t>(s)];
    std::vector<double> x = scan_point(start.index);
    double value = start.value;
    double step = 0.5 * resolution;
    // Restart from the converged point until it stops improving.
    for (int round = 0; round < 4; ++round) {
      auto candidate = nelder_mead_minimize(negated, x, step, kSimplexTolerance);
      const double cv = log_objective(candidate);
      if (!(cv > value)) break;
      value = cv;
      x = std::move(candidate);
      step = std::max(1e-4 * resolution, 1e-6);
    }
    refined[static_cast<std::size_t>(s)] = {value, static_cast<std::size_t>(s)};
    points[static_cast<std::size_t>(s)] = std::move(x);
  }
  const auto best = *std::min_element(refined.begin(), refined.end(), kernels::ranks_before);

  BoundResult result;
  result.K = std::exp(best.value);
  result.certificate.argmax = points[best.index];
  result.certificate.search_radius = radius;
  result.certificate.grid_resolution = resolution;
  return result;
}

}  // namespace gmarg
