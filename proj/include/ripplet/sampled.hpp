#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "ripplet/error.hpp"
#include "ripplet/laurent.hpp"

namespace ripplet {

/// Samples f(i * 2^-level) for i = start, ..., start + values.size() - 1.
/// The function is taken to vanish outside the stored window and to be
/// piecewise linear between samples.
struct SampledFunction {
  int level = 0;
  long start = 0;
  std::vector<double> values;

  double step() const noexcept { return std::ldexp(1.0, -level); }
  long first_index() const noexcept { return start; }
  long last_index() const noexcept { return start + static_cast<long>(values.size()) - 1; }
  double x_at(long i) const noexcept { return static_cast<double>(i) * step(); }
  bool empty() const noexcept { return values.empty(); }

  double sample(long i) const noexcept {
    const long k = i - start;
    if (k < 0 || k >= static_cast<long>(values.size())) return 0.0;
    return values[static_cast<std::size_t>(k)];
  }

  /// Piecewise-linear evaluation between grid points.
  double operator()(double x) const noexcept {
    const double u = x / step();
    const double fl = std::floor(u);
    const long i = static_cast<long>(fl);
    const double w = u - fl;
    return (1.0 - w) * sample(i) + w * sample(i + 1);
  }

  /// Trapezoid rule, exact for the piecewise-linear interpolant.
  double integral() const noexcept {
    if (values.empty()) return 0.0;
    double s = 0.0;
    for (double v : values) s += v;
    s -= 0.5 * (values.front() + values.back());
    return s * step();
  }

  /// Trapezoid approximation of the integral of x^d f(x).
  double moment(int d) const noexcept {
    if (values.empty()) return 0.0;
    const double h = step();
    double s = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double x = static_cast<double>(start + static_cast<long>(k)) * h;
      double w = (k == 0 || k + 1 == values.size()) ? 0.5 : 1.0;
      s += w * std::pow(x, d) * values[k];
    }
    return s * h;
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }

  /// Indices whose sample magnitude exceeds `tol`; empty range if none.
  IndexRange support(double tol) const noexcept {
    IndexRange r{0, -1};
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (std::abs(values[k]) > tol) {
        const long i = start + static_cast<long>(k);
        if (r.size() == 0) r = {i, i};
        r.hi = i;
      }
    }
    return r;
  }

  /// Largest |f| over samples whose abscissa lies outside [a, b].
  double tail_outside(double a, double b) const noexcept {
    double m = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double x = x_at(start + static_cast<long>(k));
      if (x < a - 1e-15 || x > b + 1e-15) m = std::max(m, std::abs(values[k]));
    }
    return m;
  }
};

inline void require_same_grid(const SampledFunction& f, const SampledFunction& g) {
  if (f.level != g.level) throw dimension_error("sampled functions live on different grids");
}

/// Sup-norm distance over the union of both windows (same grid required).
inline double sup_distance(const SampledFunction& f, const SampledFunction& g) {
  require_same_grid(f, g);
  if (f.empty() && g.empty()) return 0.0;
  const long lo = std::min(f.empty() ? g.start : f.start, g.empty() ? f.start : g.start);
  const long hi = std::max(f.empty() ? g.last_index() : f.last_index(),
                           g.empty() ? f.last_index() : g.last_index());
  double m = 0.0;
  for (long i = lo; i <= hi; ++i) m = std::max(m, std::abs(f.sample(i) - g.sample(i)));
  return m;
}

/// f + c * g on the common grid.
inline SampledFunction axpy(const SampledFunction& f, double c, const SampledFunction& g) {
  require_same_grid(f, g);
  if (g.empty()) return f;
  if (f.empty()) {
    SampledFunction r = g;
    for (double& v : r.values) v *= c;
    return r;
  }
  const long lo = std::min(f.start, g.start);
  const long hi = std::max(f.last_index(), g.last_index());
  SampledFunction r{f.level, lo, std::vector<double>(static_cast<std::size_t>(hi - lo + 1))};
  for (long i = lo; i <= hi; ++i) r.values[static_cast<std::size_t>(i - lo)] = f.sample(i) + c * g.sample(i);
  return r;
}

/// f(x - shift * 2^-level), i.e. a delay by an integer number of grid steps.
inline SampledFunction shifted(SampledFunction f, long grid_steps) {
  f.start += grid_steps;
  return f;
}

/// Discrete convolution weighted by the grid step: (f*g)(x_i) ~ h sum_j f_j g_(i-j).
inline SampledFunction convolve(const SampledFunction& f, const SampledFunction& g) {
  require_same_grid(f, g);
  if (f.empty() || g.empty()) return {f.level, 0, {}};
  SampledFunction r{f.level, f.start + g.start,
                    std::vector<double>(f.values.size() + g.values.size() - 1, 0.0)};
  const double h = f.step();
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const double fi = f.values[i] * h;
    if (fi == 0.0) continue;
    for (std::size_t j = 0; j < g.values.size(); ++j) r.values[i + j] += fi * g.values[j];
  }
  return r;
}

}  // namespace ripplet
