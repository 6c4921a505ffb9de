// gaussmarg: build, inspect, sample and verify perturbed gaussian densities.
//
// Exit status: 0 ok, 1 error, 2 a verification check failed.

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gaussmarg/density.hpp"
#include "gaussmarg/errors.hpp"
#include "gaussmarg/hermite.hpp"
#include "gaussmarg/io.hpp"
#include "gaussmarg/kernels.hpp"
#include "gaussmarg/marginals.hpp"
#include "gaussmarg/sampling.hpp"
#include "gaussmarg/scenario.hpp"
#include "gaussmarg/verify.hpp"

namespace {

using namespace gmarg;
using io::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitVerification = 2;

// Tensor grids larger than this are refused rather than written.
constexpr std::size_t kMaxGridPoints = 50'000'000;

struct Options {
  std::string spec_path;
  std::string poly_path;
  std::string normals_path;
  int vandermonde = 0;
  bool example26 = false;
  std::optional<double> epsilon;
  std::optional<double> eta;
  std::optional<double> sigma;
  std::string direction;
  std::optional<double> theta;
  std::string grid;
  std::size_t n_samples = 0;
  std::uint64_t seed = 1;
  double alpha = kDefaultAlpha;
  std::string out;
};

struct Grid {
  double lo;
  double hi;
  std::size_t count;
};

std::string fmt(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ArgumentError(std::string(flag) + ": cannot parse '" + item + "' as a number");
    }
  }
  if (out.empty()) throw ArgumentError(std::string(flag) + ": empty list");
  return out;
}

Grid parse_grid(const std::string& text, Grid fallback) {
  if (text.empty()) return fallback;
  const auto v = parse_list(text, "--grid");
  if (v.size() != 3) throw ArgumentError("--grid expects min,max,count");
  if (!(v[1] > v[0]) || v[2] < 2 || v[2] != std::floor(v[2])) {
    throw ArgumentError("--grid needs max > min and an integer count >= 2");
  }
  return {v[0], v[1], static_cast<std::size_t>(v[2])};
}

bool explicit_source(const Options& o) {
  return !o.spec_path.empty() || !o.poly_path.empty() || !o.normals_path.empty() || o.vandermonde != 0;
}

MultiPoly polynomial_from_flags(const Options& o) {
  if (!o.poly_path.empty()) return io::polynomial_from_json(io::read_json_file(o.poly_path));
  if (!o.normals_path.empty()) return from_subspace_normals(io::normals_from_json(io::read_json_file(o.normals_path)));
  return vandermonde_antisym(o.vandermonde);
}

// Resolves the density from --spec, an explicit polynomial source, or the reference
// scenario. --eta is only meaningful in the reference scenario.
DensitySpec resolve_spec(const Options& o, bool need_epsilon = true) {
  const int sources = !o.spec_path.empty() + !o.poly_path.empty() + !o.normals_path.empty() + (o.vandermonde != 0) +
                      o.example26;
  if (sources > 1) throw ArgumentError("give exactly one of --spec, --poly, --normals, --vandermonde, --example26");
  if (o.epsilon && o.eta) throw ArgumentError("--epsilon and --eta are mutually exclusive");

  if (!o.spec_path.empty()) {
    if (o.epsilon || o.eta || o.sigma) throw ArgumentError("--spec already fixes epsilon and sigma");
    return io::spec_from_json(io::read_json_file(o.spec_path));
  }
  if (explicit_source(o)) {
    if (o.eta) throw ArgumentError("--eta is only accepted with the reference scenario (--example26)");
    if (!o.sigma) throw ArgumentError("--sigma is required with --poly, --normals or --vandermonde");
    if (need_epsilon && !o.epsilon) throw ArgumentError("--epsilon is required with --poly, --normals or --vandermonde");
    return make_spec(o.epsilon.value_or(0.0), *o.sigma, polynomial_from_flags(o));
  }
  if (o.sigma) throw ArgumentError("--sigma is fixed at 2^{-1/2} in the reference scenario");
  const double eps = o.epsilon ? *o.epsilon : example26::epsilon_from_eta(o.eta.value_or(example26::kMaxEta));
  return make_spec(eps, example26::kSigma, example26::polynomial());
}

Direction resolve_direction(const Options& o, const DensitySpec& spec) {
  if (!o.direction.empty() && o.theta) throw ArgumentError("--direction and --theta are mutually exclusive");
  if (!o.direction.empty()) {
    auto a = parse_list(o.direction, "--direction");
    if (a.size() != spec.dimension()) throw ArgumentError("--direction length differs from the density dimension");
    return Direction(std::move(a));
  }
  if (spec.dimension() != 2) throw ArgumentError("--direction is required when n != 2");
  return example26::direction(o.theta.value_or(std::numbers::pi / 8.0));
}

// Writes to --out, or standard output when empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ArgumentError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int cmd_build(const Options& o) {
  const auto spec = resolve_spec(o);
  Output out(o.out);
  out.stream() << io::to_json(spec).dump(2) << '\n';
  return kExitOk;
}

int cmd_bound(const Options& o) {
  const auto spec = resolve_spec(o, false);
  Output out(o.out);
  out.stream() << io::to_json(BoundResult{spec.bound_K(), spec.certificate()}).dump(2) << '\n';
  return kExitOk;
}

int cmd_eval(const Options& o) {
  const auto spec = resolve_spec(o);
  const Grid g = parse_grid(o.grid, {-3.0, 3.0, 201});
  const kernels::Axis axis{g.lo, g.hi, g.count};
  const std::size_t n = spec.dimension();
  const std::size_t total = kernels::grid_size(axis, n, kMaxGridPoints);
  const auto values = kernels::tabulate_parallel([&](std::span<const double> x) { return density_f(spec, x); }, n, axis);

  Output out(o.out);
  auto& os = out.stream();
  for (std::size_t d = 0; d < n; ++d) os << 'x' << d + 1 << ',';
  os << "f\n";
  std::vector<double> x(n);
  for (std::size_t i = 0; i < total; ++i) {
    kernels::grid_point(axis, i, x);
    for (double c : x) os << fmt(c) << ',';
    os << fmt(values[i]) << '\n';
  }
  return kExitOk;
}

int cmd_marginal(const Options& o) {
  const auto spec = resolve_spec(o);
  const MarginalLaw law(spec, resolve_direction(o, spec));
  const Grid g = parse_grid(o.grid, {-4.0, 4.0, 801});
  const kernels::Axis axis{g.lo, g.hi, g.count};
  std::vector<double> xs(g.count);
  for (std::size_t i = 0; i < g.count; ++i) xs[i] = axis.at(i);
  Output out(o.out);
  auto& os = out.stream();
  os << "x,g\n";
  for (const auto& [x, v] : marginal_grid(law, xs)) os << fmt(x) << ',' << fmt(v) << '\n';
  return kExitOk;
}

int cmd_modes(const Options& o) {
  const auto spec = resolve_spec(o);
  const MarginalLaw law(spec, resolve_direction(o, spec));
  Output out(o.out);
  out.stream() << io::to_json(law, critical_points(law)).dump(2) << '\n';
  return kExitOk;
}

int cmd_sample(const Options& o) {
  const auto spec = resolve_spec(o);
  const auto batch = sample(spec, o.n_samples == 0 ? 10000 : o.n_samples, o.seed);
  Output out(o.out);
  auto& os = out.stream();
  for (std::size_t d = 0; d < batch.dimension; ++d) os << (d ? "," : "") << 'x' << d + 1;
  os << '\n';
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto x = batch.point(i);
    for (std::size_t d = 0; d < x.size(); ++d) os << (d ? "," : "") << fmt(x[d]);
    os << '\n';
  }
  return kExitOk;
}

int cmd_verify(const Options& o) {
  const auto spec = resolve_spec(o);
  std::vector<Direction> extra;
  if (!o.direction.empty() || o.theta) extra.push_back(resolve_direction(o, spec));
  const auto report = run_verification(spec, o.n_samples == 0 ? 100000 : o.n_samples, o.seed, o.alpha, extra);
  Output out(o.out);
  out.stream() << io::to_json(report).dump(2) << '\n';
  return all_pass(report) ? kExitOk : kExitVerification;
}

// Full reference pipeline: sigma = 2^{-1/2}, P = t1 t2 (t1^2 - t2^2).
int cmd_example26(const Options& o) {
  if (explicit_source(o) || o.sigma || o.epsilon) {
    throw ArgumentError("example26 fixes sigma and P; only --eta, --N, --seed, --alpha, --out apply");
  }
  const double eta = o.eta.value_or(example26::kMaxEta);
  const std::size_t n_samples = o.n_samples == 0 ? 100000 : o.n_samples;
  Output out(o.out);
  auto& os = out.stream();
  bool ok = true;
  auto line = [&](bool pass, const std::string& what) {
    os << (pass ? "PASS " : "FAIL ") << what << '\n';
    ok = ok && pass;
  };

  const auto t0 = std::chrono::steady_clock::now();
  const auto spec = example26::spec_for_eta(eta);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double rel = std::abs(spec.bound_K() - example26::kExactK) / example26::kExactK;
  os << "K = " << fmt(spec.bound_K()) << " (exact 128 e^-2 = " << fmt(example26::kExactK) << ")\n";
  line(rel <= 1e-3 && secs < 5.0, "bound within 1e-3 relative, " + fmt(secs) + " s");

  const MultiPoly expected(2, {{{3, 1}, 1.0}, {{1, 3}, -1.0}});
  line(renormalize(spec.polynomial()) == expected, ":P: = x1^3 x2 - x1 x2^3");

  const double mass = quadrature_mass(spec, 8.0, 257);
  line(std::abs(mass - 1.0) <= 1e-8, "mass on [-8,8]^2 = " + fmt(mass));

  const kernels::Axis audit{-6.0, 6.0, 201};
  const auto values =
      kernels::tabulate_parallel([&](std::span<const double> x) { return perturbation_factor(spec, x); }, 2, audit);
  double lowest = 2.0;
  for (double v : values) lowest = std::min(lowest, v);
  line(lowest >= -1e-12, "perturbation factor min on audit grid = " + fmt(lowest));

  const auto report =
      run_verification(spec, n_samples, o.seed, o.alpha, {example26::direction(std::numbers::pi / 8.0)});
  for (const auto& e : report) {
    line(e.pass(), e.test + " vs " + e.result.null_label + ", p = " + fmt(e.result.p_value));
  }

  const MarginalLaw law(spec, example26::direction(o.theta.value_or(std::numbers::pi / 8.0)));
  const auto modes = critical_points(law);
  os << "modality at theta = " << fmt(o.theta.value_or(std::numbers::pi / 8.0)) << ": "
     << to_string(modes.classification) << '\n';
  for (std::size_t i = 0; i < modes.critical_points.size(); ++i) {
    const double x = modes.critical_points[i];
    line(std::abs(marginal_density_derivative(law, x)) <= 1e-10,
         "critical point " + fmt(x) + (modes.is_maximum[i] ? " (max)" : " (min)") + " has |g'| <= 1e-10");
  }
  return ok ? kExitOk : kExitVerification;
}

void apply_thread_cap() {
  const char* env = std::getenv("GC_THREADS");
  if (env == nullptr || *env == '\0') return;
  int threads = 0;
  const auto r = std::from_chars(env, env + std::strlen(env), threads);
  if (r.ec != std::errc{} || *r.ptr != '\0' || threads < 1) {
    throw ArgumentError(std::string("GC_THREADS must be a positive integer, got '") + env + "'");
  }
  kernels::set_thread_cap(threads);
}

void add_source_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--spec", o.spec_path, "DensitySpec JSON written by 'build'");
  cmd->add_option("--poly", o.poly_path, "polynomial JSON file");
  cmd->add_option("--normals", o.normals_path, "JSON list of subspace normals");
  cmd->add_option("--vandermonde", o.vandermonde, "antisymmetric Vandermonde product in n variables");
  cmd->add_flag("--example26", o.example26, "reference scenario (the default when no source is given)");
  cmd->add_option("--epsilon", o.epsilon, "perturbation size");
  cmd->add_option("--eta", o.eta, "reference scenario only: eta = 32 epsilon");
  cmd->add_option("--sigma", o.sigma, "scale in (0, 1)");
}

void add_direction_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--direction", o.direction, "comma-separated direction a (normalized)");
  cmd->add_option("--theta", o.theta, "n = 2 only: a = (sin theta, cos theta)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nongaussian densities with gaussian marginals"};
  app.require_subcommand(1);
  Options o;

  auto* build = app.add_subcommand("build", "write a DensitySpec JSON");
  add_source_flags(build, o);

  auto* bound = app.add_subcommand("bound", "print K(sigma, P) and its certificate");
  add_source_flags(bound, o);

  auto* eval = app.add_subcommand("eval", "joint density on a tensor grid, CSV x1,...,xn,f");
  add_source_flags(eval, o);
  eval->add_option("--grid", o.grid, "min,max,count per axis (default -3,3,201)");

  auto* marginal = app.add_subcommand("marginal", "marginal density of a^T x, CSV x,g");
  add_source_flags(marginal, o);
  add_direction_flags(marginal, o);
  marginal->add_option("--grid", o.grid, "min,max,count (default -4,4,801)");

  auto* modes = app.add_subcommand("modes", "critical points and modality of a^T x, JSON");
  add_source_flags(modes, o);
  add_direction_flags(modes, o);

  auto* smp = app.add_subcommand("sample", "rejection sample, CSV");
  add_source_flags(smp, o);
  smp->add_option("--N", o.n_samples, "number of points (default 10000)");
  smp->add_option("--seed", o.seed, "root seed");

  auto* verify = app.add_subcommand("verify", "KS verification report, JSON; exit 2 on failure");
  add_source_flags(verify, o);
  add_direction_flags(verify, o);
  verify->add_option("--N", o.n_samples, "samples per test (default 100000)");
  verify->add_option("--seed", o.seed, "root seed");
  verify->add_option("--alpha", o.alpha, "significance level")->check(CLI::Range(0.0, 1.0));

  auto* ex = app.add_subcommand("example26", "reference pipeline with PASS/FAIL lines");
  add_source_flags(ex, o);
  ex->add_option("--theta", o.theta, "direction angle for the modality check (default pi/8)");
  ex->add_option("--N", o.n_samples, "samples per test (default 100000)");
  ex->add_option("--seed", o.seed, "root seed");
  ex->add_option("--alpha", o.alpha, "significance level")->check(CLI::Range(0.0, 1.0));

  for (auto* cmd : {build, bound, eval, marginal, modes, smp, verify, ex}) {
    cmd->add_option("--out", o.out, "output file (default stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    apply_thread_cap();
    if (*build) return cmd_build(o);
    if (*bound) return cmd_bound(o);
    if (*eval) return cmd_eval(o);
    if (*marginal) return cmd_marginal(o);
    if (*modes) return cmd_modes(o);
    if (*smp) return cmd_sample(o);
    if (*verify) return cmd_verify(o);
    if (*ex) return cmd_example26(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
