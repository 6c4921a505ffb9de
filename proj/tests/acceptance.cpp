// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <random>
#include <string>

#include "gaussmarg/bound.hpp"
#include "gaussmarg/density.hpp"
#include "gaussmarg/hermite.hpp"
#include "gaussmarg/kernels.hpp"
#include "gaussmarg/marginals.hpp"
#include "gaussmarg/sampling.hpp"
#include "gaussmarg/scenario.hpp"
#include "gaussmarg/verify.hpp"

using namespace gmarg;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, bool pass, const std::string& name, const std::string& detail) {
  std::printf("%s %d %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string num(double v, const char* f = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const double kSigma = example26::kSigma;

void bound_reproduction() {
  const auto p = example26::polynomial();
  const auto t0 = Clock::now();
  const auto result = bound_K(kSigma, p, renormalize(p));
  const double secs = seconds_since(t0);
  const double rel = std::abs(result.K - example26::kExactK) / example26::kExactK;
  report(1, rel <= 1e-3 && secs < 5.0, "bound reproduction",
         "K = " + num(result.K, "%.10g") + ", relative error " + num(rel) + ", " + num(secs) + " s");
}

void renormalization_exactness() {
  const MultiPoly expected(2, {{{3, 1}, 1.0}, {{1, 3}, -1.0}});
  const auto got = renormalize(example26::polynomial());
  bool exact = got.terms().size() == expected.terms().size();
  for (const auto& [e, c] : expected.terms()) {
    const auto it = got.terms().find(e);
    exact = exact && it != got.terms().end() && it->second == c;
  }
  report(2, exact, "renormalization exactness", exact ? ":P: = x1^3 x2 - x1 x2^3" : "coefficients differ");
}

void normalization() {
  const double k = make_spec(0.0, kSigma, example26::polynomial()).bound_K();
  bool pass = true;
  std::string detail;
  for (double eps : {0.0, 1.0 / k, -1.0 / k}) {
    const double mass = quadrature_mass(make_spec(eps, kSigma, example26::polynomial()), 8.0, 257);
    pass = pass && std::abs(mass - 1.0) <= 1e-8;
    detail += "eps=" + num(eps) + ": |mass-1| = " + num(std::abs(mass - 1.0)) + "; ";
  }
  report(3, pass, "normalization", detail);
}

void boundary_positivity() {
  const double k = make_spec(0.0, kSigma, example26::polynomial()).bound_K();
  const kernels::Axis axis{-6.0, 6.0, 201};
  bool pass = true;
  std::string detail;
  for (double eps : {1.0 / k, -1.0 / k}) {
    const auto spec = make_spec(eps, kSigma, example26::polynomial());
    // Unclamped f, so round-off negatives would show.
    const auto values = kernels::tabulate_parallel(
        [&](std::span<const double> x) { return gaussian_density(x) * perturbation_factor(spec, x); }, 2, axis);
    const double lowest = *std::min_element(values.begin(), values.end());
    pass = pass && lowest >= -1e-12;
    detail += "eps=" + num(eps) + ": min f = " + num(lowest) + "; ";
  }
  report(4, pass, "positivity at the boundary", detail);
}

void gaussian_marginals() {
  const auto spec = example26::spec_for_eta(example26::kMaxEta);
  const double r = 1.0 / std::sqrt(2.0);
  const auto t0 = Clock::now();
  bool pass = true;
  std::string detail;
  std::uint64_t tag = 0;
  for (const auto& a : {Direction({1.0, 0.0}), Direction({0.0, 1.0}), Direction({r, r}), Direction({r, -r})}) {
    const auto g = verify_gaussian_marginal(spec, a, 100000, derive_seed(2026, ++tag));
    pass = pass && g.null_label == kNullStandardNormal && g.p_value > 0.01;
    detail += "p=" + num(g.p_value, "%.3f") + " ";
  }
  const double secs = seconds_since(t0);
  pass = pass && secs < 30.0;
  report(5, pass, "gaussian marginals", detail + "(" + num(secs) + " s)");
}

void symmetric_invariance() {
  const auto two = verify_symmetric_invariance(example26::spec_for_eta(example26::kMaxEta), 100000, 505);
  const auto v4 = vandermonde_antisym(4);
  const auto spec4 = make_spec(1.0 / make_spec(0.0, kSigma, v4).bound_K(), kSigma, v4);
  const auto four = verify_symmetric_invariance(spec4, 100000, 606);
  const bool pass = two.norm_squared.p_value > 0.01 && four.norm_squared.p_value > 0.01 &&
                    spec4.uses_determinant_path();
  report(6, pass, "symmetric-functional invariance",
         "n=2 chi2 p=" + num(two.norm_squared.p_value, "%.3f") + ", n=4 chi2 p=" + num(four.norm_squared.p_value, "%.3f") +
             " (determinant path " + (spec4.uses_determinant_path() ? "on" : "off") + ")");
}

void nonunimodality() {
  const double theta = std::numbers::pi / 8.0;
  const MarginalLaw law(example26::spec_for_eta(example26::kMaxEta), example26::direction(theta));
  const auto rep = critical_points(law);
  bool certified = false;
  double root = 0.0;
  for (double x : rep.critical_points) {
    if (x > 0.5 && x < 1.0 && std::abs(marginal_density_derivative(law, x)) <= 1e-10) {
      certified = true;
      root = x;
    }
  }
  const MarginalLaw small(example26::spec_for_eta(0.01), example26::direction(theta));
  const auto small_rep = critical_points(small);
  const bool pass = rep.classification == Modality::nonunimodal && certified &&
                    small_rep.classification == Modality::unimodal;
  report(7, pass, "nonunimodality",
         to_string(rep.classification) + " with root " + num(root, "%.10f") + "; eta=0.01: " +
             to_string(small_rep.classification));
}

void fourier_consistency() {
  const auto spec = example26::spec_for_eta(example26::kMaxEta);
  const kernels::Axis axis{-8.0, 8.0, 257};
  std::mt19937_64 gen(88);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    double t1 = 0.0, t2 = 0.0;
    do {
      t1 = u(gen);
      t2 = u(gen);
    } while (t1 * t1 + t2 * t2 > 9.0);
    const double numeric = kernels::trapezoid_parallel(
        [&](std::span<const double> x) { return density_f(spec, x) * std::cos(t1 * x[0] + t2 * x[1]); }, 2, axis);
    worst = std::max(worst, std::abs(numeric - cf_phi(spec, std::vector<double>{t1, t2})));
  }
  report(8, worst <= 2e-6, "Fourier consistency", "max |numeric cf - Phi| = " + num(worst));
}

void property_suites() {
  std::string failed;
  // Hermite three-term recurrence.
  for (int m = 1; m <= 20; ++m) {
    for (double x = -5.0; x <= 5.0; x += 0.25) {
      const double lhs = hermite_eval(m + 1, x);
      const double rhs = x * hermite_eval(m, x) - m * hermite_eval(m - 1, x);
      if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(lhs))) failed = "recurrence ";
    }
  }
  // Orthogonality by 20-point Gauss-Hermite (Golub-Welsch).
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(20, 20);
  for (int i = 0; i + 1 < 20; ++i) jacobi(i, i + 1) = jacobi(i + 1, i) = std::sqrt(i + 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gw(jacobi);
  for (int j = 0; j <= 8; ++j) {
    for (int k = 0; k < j; ++k) {
      double s = 0.0;
      for (int i = 0; i < 20; ++i) {
        const double w = gw.eigenvectors()(0, i) * gw.eigenvectors()(0, i);
        s += w * hermite_eval(j, gw.eigenvalues()(i)) * hermite_eval(k, gw.eigenvalues()(i));
      }
      if (std::abs(s) > 1e-8) failed += "orthogonality ";
    }
  }
  // Antisymmetry and homogeneity of the Vandermonde products.
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  for (int n : {2, 4}) {
    const auto p = vandermonde_antisym(n);
    for (int r = 0; r < 100; ++r) {
      std::vector<double> t(static_cast<std::size_t>(n));
      for (double& v : t) v = c(gen);
      auto s = t;
      std::swap(s[0], s[1]);
      const double a = eval_poly(p, t);
      if (std::abs(eval_poly(p, s) + a) > 1e-9 * std::max(1.0, std::abs(a))) failed += "antisymmetry ";
      const double l = 1.7;
      auto scaled = t;
      for (double& v : scaled) v *= l;
      const double expect = std::pow(l, n * n) * a;
      if (std::abs(eval_poly(p, scaled) - expect) > 1e-9 * (1.0 + p.max_term_magnitude(scaled))) {
        failed += "homogeneity ";
      }
    }
  }
  // Envelope soundness over whole proposal blocks.
  const auto spec = example26::spec_for_eta(example26::kMaxEta);
  for (std::uint64_t b = 0; b < 4; ++b) {
    const auto block = propose_block(spec, 17, b);
    for (std::size_t i = 0; i < kProposalBlock; ++i) {
      const std::span<const double> x(block.proposals.data() + 2 * i, 2);
      if (density_f(spec, x) > 2.0 * gaussian_density(x) * (1.0 + 1e-12)) failed += "envelope ";
    }
  }
  // Seed reproducibility, serial against parallel.
  const auto a = sample(spec, 20000, 5);
  const auto b = sample_serial(spec, 20000, 5);
  if (a.points.size() != b.points.size() ||
      std::memcmp(a.points.data(), b.points.data(), a.points.size() * sizeof(double)) != 0) {
    failed += "reproducibility ";
  }
  report(9, failed.empty(), "property suites",
         failed.empty() ? "recurrence, orthogonality, antisymmetry, homogeneity, envelope, reproducibility"
                        : "failed: " + failed);
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  bound_reproduction();
  renormalization_exactness();
  normalization();
  boundary_positivity();
  gaussian_marginals();
  symmetric_invariance();
  nonunimodality();
  fourier_consistency();
  property_suites();
  std::printf("%d of 9 criteria failed; %.2f s\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
