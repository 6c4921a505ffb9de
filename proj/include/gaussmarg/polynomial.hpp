#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace gmarg {

using Exponents = std::vector<int>;

/// Sparse real polynomial in `dimension` variables.
///
/// Terms are kept in a map keyed by exponent vector, so iteration (and
/// therefore evaluation) follows lexicographic exponent order. Zero
/// coefficients are never stored; the empty map is the zero polynomial.
class MultiPoly {
 public:
  explicit MultiPoly(std::size_t dimension);

  /// Builds from (exponents, coefficient) pairs; repeated exponents are summed.
  MultiPoly(std::size_t dimension,
            const std::vector<std::pair<Exponents, double>>& terms);

  static MultiPoly constant(std::size_t dimension, double value);
  /// The linear form a^T t.
  static MultiPoly linear(std::span<const double> coefficients);

  std::size_t dimension() const noexcept { return dimension_; }
  const std::map<Exponents, double>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Maximum total degree; 0 for the zero polynomial.
  int degree() const noexcept;
  /// Common total degree of all terms, if there is one. Unset for the zero polynomial.
  std::optional<int> homogeneous_degree() const noexcept { return homogeneous_degree_; }

  /// Adds `coefficient` to the term with these exponents, dropping it if it cancels.
  void add_term(const Exponents& exponents, double coefficient);

  double operator()(std::span<const double> t) const;

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator*=(double scale);
  friend MultiPoly operator+(MultiPoly lhs, const MultiPoly& rhs) { return lhs += rhs; }
  friend MultiPoly operator*(MultiPoly lhs, double scale) { return lhs *= scale; }
  friend MultiPoly operator*(double scale, MultiPoly rhs) { return rhs *= scale; }
  friend MultiPoly operator*(const MultiPoly& lhs, const MultiPoly& rhs);

  friend bool operator==(const MultiPoly& lhs, const MultiPoly& rhs) {
    return lhs.dimension_ == rhs.dimension_ && lhs.terms_ == rhs.terms_;
  }

  /// Sum of |coefficient| over all terms.
  double l1_norm() const noexcept;
  /// max over terms of |a_m| * prod |t_r|^{m_r}.
  double max_term_magnitude(std::span<const double> t) const;

 private:
  void accumulate(const Exponents& exponents, double coefficient);
  void refresh_degree() noexcept;
  void check_exponents(const Exponents& exponents) const;

  std::size_t dimension_;
  std::map<Exponents, double> terms_;
  std::optional<int> homogeneous_degree_;
};

/// Unit vector defining the linear functional x -> a^T x. Normalizes on construction.
class Direction {
 public:
  explicit Direction(std::vector<double> components);

  std::size_t dimension() const noexcept { return components_.size(); }
  std::span<const double> components() const noexcept { return components_; }
  double operator[](std::size_t i) const { return components_[i]; }

 private:
  std::vector<double> components_;
};

/// Direct evaluation of the monomial sum. Throws ArgumentError on a dimension mismatch.
double eval_poly(const MultiPoly& p, std::span<const double> t);

/// True iff |P(t)| <= tol * (1 + max term magnitude at t).
bool zero_set_member(const MultiPoly& p, std::span<const double> t, double tol);

/// Product of the linear forms a^(j)^T t. An odd count repeats the last normal
/// so the degree is even; the zero set still contains every a^(j)-orthogonal hyperplane.
MultiPoly from_subspace_normals(const std::vector<Direction>& normals);

/// Largest n for which the antisymmetric product is expanded into monomials.
inline constexpr int kMaxVandermondeDimension = 4;

/// t_1 ... t_n * prod_{i<j} (t_i^2 - t_j^2), homogeneous of degree n^2.
/// For n = 2 this is t1^3 t2 - t1 t2^3.
MultiPoly vandermonde_antisym(int n);

}  // namespace gmarg
