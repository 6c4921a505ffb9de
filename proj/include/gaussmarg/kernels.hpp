#pragma once

// Data-parallel loops shared by quadrature, grid evaluation and the bound scan.
// Every kernel comes as a *_serial reference and a *_parallel OpenMP variant.
// Parallel variants give results independent of the thread count: reductions
// are staged per outer index and combined in index order.

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gmarg::kernels {

/// Number of worker threads OpenMP will use (1 without OpenMP).
inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// Caps the worker count; values < 1 are ignored.
inline void set_thread_cap(int threads) {
#ifdef _OPENMP
  if (threads >= 1) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

/// `count` equispaced nodes from lo to hi inclusive.
struct Axis {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;

  double step() const { return count > 1 ? (hi - lo) / static_cast<double>(count - 1) : 0.0; }
  double at(std::size_t i) const {
    return count > 1 ? lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1) : lo;
  }
  double trapezoid_weight(std::size_t i) const {
    return (i == 0 || i + 1 == count) ? 0.5 * step() : step();
  }
};

/// count^dim, throwing if it overflows or exceeds `limit`.
inline std::size_t grid_size(const Axis& axis, std::size_t dim, std::size_t limit = std::size_t{1} << 32) {
  std::size_t total = 1;
  for (std::size_t d = 0; d < dim; ++d) {
    if (axis.count != 0 && total > limit / axis.count) throw std::length_error("tensor grid too large");
    total *= axis.count;
  }
  return total;
}

/// Coordinates of grid point `index` (row-major, first coordinate slowest).
inline void grid_point(const Axis& axis, std::size_t index, std::span<double> out) {
  for (std::size_t d = out.size(); d-- > 0;) {
    out[d] = axis.at(index % axis.count);
    index /= axis.count;
  }
}

inline double grid_weight(const Axis& axis, std::size_t dim, std::size_t index) {
  double w = 1.0;
  for (std::size_t d = 0; d < dim; ++d) {
    w *= axis.trapezoid_weight(index % axis.count);
    index /= axis.count;
  }
  return w;
}

/// Tensor trapezoid rule of f over axis^dim; f takes std::span<const double>.
template <class F>
double trapezoid_serial(F&& f, std::size_t dim, const Axis& axis) {
  const std::size_t total = grid_size(axis, dim);
  std::vector<double> x(dim);
  double sum = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    grid_point(axis, i, x);
    sum += grid_weight(axis, dim, i) * f(std::span<const double>(x));
  }
  return sum;
}

template <class F>
double trapezoid_parallel(F&& f, std::size_t dim, const Axis& axis) {
  const std::size_t total = grid_size(axis, dim);
  const std::size_t slice = total / axis.count;
  std::vector<double> partial(axis.count, 0.0);
  const auto outer = static_cast<long long>(axis.count);
#pragma omp parallel
  {
    std::vector<double> x(dim);
#pragma omp for schedule(static)
    for (long long s = 0; s < outer; ++s) {
      double acc = 0.0;
      const std::size_t begin = static_cast<std::size_t>(s) * slice;
      for (std::size_t i = begin; i < begin + slice; ++i) {
        grid_point(axis, i, x);
        acc += grid_weight(axis, dim, i) * f(std::span<const double>(x));
      }
      partial[static_cast<std::size_t>(s)] = acc;
    }
  }
  double sum = 0.0;
  for (double p : partial) sum += p;
  return sum;
}

/// f evaluated at every grid point, in grid index order.
template <class F>
std::vector<double> tabulate_serial(F&& f, std::size_t dim, const Axis& axis) {
  const std::size_t total = grid_size(axis, dim);
  std::vector<double> values(total);
  std::vector<double> x(dim);
  for (std::size_t i = 0; i < total; ++i) {
    grid_point(axis, i, x);
    values[i] = f(std::span<const double>(x));
  }
  return values;
}

template <class F>
std::vector<double> tabulate_parallel(F&& f, std::size_t dim, const Axis& axis) {
  const std::size_t total = grid_size(axis, dim);
  std::vector<double> values(total);
  const auto count = static_cast<long long>(total);
#pragma omp parallel
  {
    std::vector<double> x(dim);
#pragma omp for schedule(static)
    for (long long i = 0; i < count; ++i) {
      grid_point(axis, static_cast<std::size_t>(i), x);
      values[static_cast<std::size_t>(i)] = f(std::span<const double>(x));
    }
  }
  return values;
}

struct Candidate {
  double value;
  std::size_t index;
};

/// Larger value first; ties broken by smaller index.
inline bool ranks_before(const Candidate& a, const Candidate& b) {
  return a.value > b.value || (a.value == b.value && a.index < b.index);
}

/// The k best of value(i) for i in [0, count), in rank order.
template <class F>
std::vector<Candidate> top_k_serial(F&& value, std::size_t count, std::size_t k) {
  std::vector<Candidate> all(count);
  for (std::size_t i = 0; i < count; ++i) all[i] = {value(i), i};
  k = std::min(k, count);
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), ranks_before);
  all.resize(k);
  return all;
}

template <class F>
std::vector<Candidate> top_k_parallel(F&& value, std::size_t count, std::size_t k) {
  k = std::min(k, count);
  std::vector<Candidate> merged;
  const auto n = static_cast<long long>(count);
#pragma omp parallel
  {
    std::vector<Candidate> local;
    local.reserve(2 * k + 1);
#pragma omp for schedule(static) nowait
    for (long long i = 0; i < n; ++i) {
      local.push_back({value(static_cast<std::size_t>(i)), static_cast<std::size_t>(i)});
      if (local.size() >= 2 * k + 1) {
        std::partial_sort(local.begin(), local.begin() + static_cast<std::ptrdiff_t>(k), local.end(),
                          ranks_before);
        local.resize(k);
      }
    }
#pragma omp critical(gmarg_top_k_merge)
    merged.insert(merged.end(), local.begin(), local.end());
  }
  std::partial_sort(merged.begin(), merged.begin() + static_cast<std::ptrdiff_t>(std::min(k, merged.size())),
                    merged.end(), ranks_before);
  merged.resize(std::min(k, merged.size()));
  return merged;
}

}  // namespace gmarg::kernels
