#include "gaussmarg/hermite.hpp"

#include <Eigen/Dense>
#include <string>

#include "gaussmarg/errors.hpp"

namespace gmarg {

namespace {

void check_order(int m) {
  if (m < 0) throw ArgumentError("Hermite order must be non-negative");
  if (m > kMaxHermiteOrder) {
    throw CapacityError("Hermite order " + std::to_string(m) + " exceeds cap " +
                        std::to_string(kMaxHermiteOrder));
  }
}

}  // namespace

double hermite_eval(int m, double x) {
  check_order(m);
  if (m == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int j = 1; j < m; ++j) {
    const double next = x * cur - j * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

void hermite_values(double x, std::span<double> out) {
  if (out.empty()) return;
  check_order(static_cast<int>(out.size()) - 1);
  out[0] = 1.0;
  if (out.size() > 1) out[1] = x;
  for (std::size_t j = 1; j + 1 < out.size(); ++j) {
    out[j + 1] = x * out[j] - static_cast<double>(j) * out[j - 1];
  }
}

HermiteTable::HermiteTable(int max_order) {
  check_order(max_order);
  rows_.reserve(static_cast<std::size_t>(max_order) + 1);
  rows_.push_back({1.0});
  if (max_order >= 1) rows_.push_back({0.0, 1.0});
  for (int m = 1; m < max_order; ++m) {
    const auto& cur = rows_[static_cast<std::size_t>(m)];
    const auto& prev = rows_[static_cast<std::size_t>(m) - 1];
    std::vector<double> next(static_cast<std::size_t>(m) + 2, 0.0);
    for (std::size_t j = 0; j < cur.size(); ++j) next[j + 1] += cur[j];
    for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= m * prev[j];
    rows_.push_back(std::move(next));
  }
}

const HermiteTable& HermiteTable::shared() {
  static const HermiteTable table(kMaxHermiteOrder);
  return table;
}

MultiPoly renormalize(const MultiPoly& p) {
  if (p.is_zero()) throw ArgumentError("cannot renormalize the zero polynomial");
  const auto& table = HermiteTable::shared();
  const std::size_t n = p.dimension();
  MultiPoly result(n);
  for (const auto& [exponents, coefficient] : p.terms()) {
    // Expand prod_r H_{m_r}(x_r) one variable at a time.
    MultiPoly term = MultiPoly::constant(n, coefficient);
    for (std::size_t r = 0; r < n; ++r) {
      const int m = exponents[r];
      if (m == 0) continue;
      if (m > table.max_order()) throw CapacityError("monomial exponent exceeds Hermite cap");
      const auto& row = table.coefficients(m);
      MultiPoly factor(n);
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j] == 0.0) continue;
        Exponents e(n, 0);
        e[r] = static_cast<int>(j);
        factor.add_term(e, row[j]);
      }
      term = term * factor;
    }
    result += term;
  }
  return result;
}

double renorm_vandermonde_eval(int n, std::span<const double> x) {
  if (n < 2 || n % 2 != 0) throw ArgumentError("renormalized Vandermonde needs an even n >= 2");
  if (x.size() != static_cast<std::size_t>(n)) {
    throw ArgumentError("evaluation point has dimension " + std::to_string(x.size()) +
                        ", expected " + std::to_string(n));
  }
  const int top = 2 * n - 1;
  Eigen::MatrixXd m(n, n);
  std::vector<double> h(static_cast<std::size_t>(top) + 1);
  for (int j = 0; j < n; ++j) {
    hermite_values(x[static_cast<std::size_t>(j)], h);
    for (int r = 0; r < n; ++r) m(r, j) = h[static_cast<std::size_t>(2 * (n - 1 - r) + 1)];
  }
  return m.partialPivLu().determinant();
}

}  // namespace gmarg
