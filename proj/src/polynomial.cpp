#include "gaussmarg/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gaussmarg/errors.hpp"

namespace gmarg {

namespace {

double int_pow(double base, int exponent) {
  double result = 1.0;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

}  // namespace

MultiPoly::MultiPoly(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw ArgumentError("polynomial dimension must be positive");
}

MultiPoly::MultiPoly(std::size_t dimension,
                     const std::vector<std::pair<Exponents, double>>& terms)
    : MultiPoly(dimension) {
  for (const auto& [exponents, coefficient] : terms) add_term(exponents, coefficient);
}

MultiPoly MultiPoly::constant(std::size_t dimension, double value) {
  MultiPoly p(dimension);
  p.add_term(Exponents(dimension, 0), value);
  return p;
}

MultiPoly MultiPoly::linear(std::span<const double> coefficients) {
  MultiPoly p(coefficients.size());
  for (std::size_t r = 0; r < coefficients.size(); ++r) {
    Exponents e(coefficients.size(), 0);
    e[r] = 1;
    p.add_term(e, coefficients[r]);
  }
  return p;
}

void MultiPoly::check_exponents(const Exponents& exponents) const {
  if (exponents.size() != dimension_) {
    throw ArgumentError("monomial has " + std::to_string(exponents.size()) +
                        " exponents, polynomial dimension is " + std::to_string(dimension_));
  }
  for (int m : exponents) {
    if (m < 0) throw ArgumentError("negative exponent in monomial");
  }
}

void MultiPoly::add_term(const Exponents& exponents, double coefficient) {
  check_exponents(exponents);
  if (!std::isfinite(coefficient)) throw ArgumentError("non-finite polynomial coefficient");
  accumulate(exponents, coefficient);
  refresh_degree();
}

void MultiPoly::accumulate(const Exponents& exponents, double coefficient) {
  if (coefficient == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(exponents, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0.0) terms_.erase(it);
  }
}

void MultiPoly::refresh_degree() noexcept {
  homogeneous_degree_.reset();
  if (terms_.empty()) return;
  const int first = total_degree(terms_.begin()->first);
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) != first) return;
  }
  homogeneous_degree_ = first;
}

int MultiPoly::degree() const noexcept {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

double MultiPoly::operator()(std::span<const double> t) const {
  if (t.size() != dimension_) {
    throw ArgumentError("evaluation point has dimension " + std::to_string(t.size()) +
                        ", polynomial has " + std::to_string(dimension_));
  }
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c;
    for (std::size_t r = 0; r < dimension_; ++r) term *= int_pow(t[r], e[r]);
    sum += term;
  }
  return sum;
}

double MultiPoly::max_term_magnitude(std::span<const double> t) const {
  if (t.size() != dimension_) throw ArgumentError("evaluation point dimension mismatch");
  double best = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = std::abs(c);
    for (std::size_t r = 0; r < dimension_; ++r) term *= int_pow(std::abs(t[r]), e[r]);
    best = std::max(best, term);
  }
  return best;
}

double MultiPoly::l1_norm() const noexcept {
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += std::abs(c);
  return s;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  if (other.dimension_ != dimension_) throw ArgumentError("adding polynomials of different dimension");
  for (const auto& [e, c] : other.terms_) accumulate(e, c);
  refresh_degree();
  return *this;
}

MultiPoly& MultiPoly::operator*=(double scale) {
  if (!std::isfinite(scale)) throw ArgumentError("non-finite polynomial scale");
  if (scale == 0.0) {
    terms_.clear();
  } else {
    for (auto& [e, c] : terms_) c *= scale;
  }
  refresh_degree();
  return *this;
}

MultiPoly operator*(const MultiPoly& lhs, const MultiPoly& rhs) {
  if (lhs.dimension_ != rhs.dimension_) {
    throw ArgumentError("multiplying polynomials of different dimension");
  }
  MultiPoly product(lhs.dimension_);
  Exponents e(lhs.dimension_);
  for (const auto& [el, cl] : lhs.terms_) {
    for (const auto& [er, cr] : rhs.terms_) {
      for (std::size_t r = 0; r < e.size(); ++r) e[r] = el[r] + er[r];
      product.accumulate(e, cl * cr);
    }
  }
  product.refresh_degree();
  return product;
}

Direction::Direction(std::vector<double> components) : components_(std::move(components)) {
  if (components_.empty()) throw ArgumentError("direction must have at least one component");
  double norm_sq = 0.0;
  for (double c : components_) {
    if (!std::isfinite(c)) throw ArgumentError("non-finite direction component");
    norm_sq += c * c;
  }
  if (norm_sq == 0.0) throw ArgumentError("direction must be nonzero");
  const double norm = std::sqrt(norm_sq);
  for (double& c : components_) c /= norm;
}

double eval_poly(const MultiPoly& p, std::span<const double> t) { return p(t); }

bool zero_set_member(const MultiPoly& p, std::span<const double> t, double tol) {
  if (!(tol > 0.0)) throw ArgumentError("zero-set tolerance must be positive");
  const double value = p(t);
  return std::abs(value) <= tol * (1.0 + p.max_term_magnitude(t));
}

MultiPoly from_subspace_normals(const std::vector<Direction>& normals) {
  if (normals.empty()) throw ArgumentError("at least one subspace normal is required");
  const std::size_t n = normals.front().dimension();
  if (n < 2) throw ArgumentError("subspace normals must live in dimension >= 2");
  for (const auto& a : normals) {
    if (a.dimension() != n) throw ArgumentError("subspace normals have mixed dimensions");
  }
  MultiPoly p = MultiPoly::constant(n, 1.0);
  for (const auto& a : normals) p = p * MultiPoly::linear(a.components());
  if (normals.size() % 2 == 1) p = p * MultiPoly::linear(normals.back().components());
  return p;
}

MultiPoly vandermonde_antisym(int n) {
  if (n < 2 || n % 2 != 0) {
    throw ArgumentError("antisymmetric Vandermonde construction needs an even n >= 2, got " +
                        std::to_string(n));
  }
  if (n > kMaxVandermondeDimension) {
    throw CapacityError("antisymmetric Vandermonde expansion is limited to n <= " +
                        std::to_string(kMaxVandermondeDimension));
  }
  const auto dim = static_cast<std::size_t>(n);
  Exponents e(dim, 1);
  MultiPoly p(dim, {{e, 1.0}});
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      Exponents ei(dim, 0);
      Exponents ej(dim, 0);
      ei[i] = 2;
      ej[j] = 2;
      p = p * MultiPoly(dim, {{ei, 1.0}, {ej, -1.0}});
    }
  }
  return p;
}

}  // namespace gmarg
