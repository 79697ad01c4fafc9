#pragma once

/**
 * @file refinable.hpp
 * @brief Cascade evaluation of the refinable ripplets phi^(n,m), exact B-spline
 *        samples, and numerical checks of their analytic properties.
 *
 * Conventions: phi^(n,m) has unit integral and lives at scale 2^-m, so
 *
 *   phi^(n,m) = sum_alpha a^(n,m)_alpha phi^(n,m+1)(. - 2^-(m+1) alpha)
 *
 * with sum_alpha a_alpha = 1 (no factor 2). The cascade with depth k starts from
 * a unit-integral seed at level L = m + k, dilated to scale 2^-L and centered
 * on the midpoint of the level-L support, and applies the level masks
 * L-1, ..., m. Every shift is a whole number of grid steps when the grid level
 * is at least L, so the grid samples are exact samples of the iterate.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "ripplet/error.hpp"
#include "ripplet/laurent.hpp"
#include "ripplet/masks.hpp"
#include "ripplet/sampled.hpp"

namespace ripplet {

template <class F>
concept MaskSource = requires(const F& f, int m) {
  { f.mask(m) } -> std::convertible_to<Mask>;
};

enum class Seed { box, hat };

struct CascadeConfig {
  int iterations = 8;
  Seed seed = Seed::hat;

  void validate() const {
    if (iterations < 1) throw domain_error("cascade depth must be >= 1");
  }
};

/// Grid level used when the caller does not choose one.
inline int default_resolution(int m, const CascadeConfig& cfg) { return m + cfg.iterations + 2; }

// ---------------------------------------------------------------------------
// B-splines

/// Cardinal B-spline N_n with knots 0, ..., n+1 and unit integral (Cox-de Boor).
inline double cardinal_bspline(int n, double x) {
  if (n < 0) return 0.0;
  if (x < 0.0 || x >= static_cast<double>(n + 1)) return 0.0;
  std::vector<double> v(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    const double t = x - j;
    v[static_cast<std::size_t>(j)] = (t >= 0.0 && t < 1.0) ? 1.0 : 0.0;
  }
  for (int k = 1; k <= n; ++k)
    for (int j = 0; j + k <= n; ++j) {
      const double t = x - j;
      v[static_cast<std::size_t>(j)] =
          (t * v[static_cast<std::size_t>(j)] + (k + 1 - t) * v[static_cast<std::size_t>(j) + 1]) / k;
    }
  return v[0];
}

/// B^(n,m)(x) = 2^m N_n(2^m x).
inline double bspline_evaluate(int n, int m, double x) {
  const double s = std::ldexp(1.0, m);
  return s * cardinal_bspline(n, s * x);
}

/// Grid samples of B^(n,m) on [0, (n+1) 2^-m].
inline SampledFunction sample_bspline(int n, int m, int level) {
  if (level < m) throw resolution_error("grid level must be >= B-spline level");
  const long last = static_cast<long>(n + 1) << (level - m);
  SampledFunction f{level, 0, std::vector<double>(static_cast<std::size_t>(last) + 1)};
  for (long i = 0; i <= last; ++i) f.values[static_cast<std::size_t>(i)] = bspline_evaluate(n, m, f.x_at(i));
  return f;
}

/// B^(0,m) with jump-averaged endpoint samples (trapezoid-consistent box).
inline SampledFunction sample_box(int m, int level) {
  if (level < m) throw resolution_error("grid level must be >= box level");
  const long w = 1L << (level - m);
  const double height = std::ldexp(1.0, m);
  SampledFunction f{level, 0, std::vector<double>(static_cast<std::size_t>(w) + 1, height)};
  f.values.front() *= 0.5;
  f.values.back() *= 0.5;
  return f;
}

// ---------------------------------------------------------------------------
// Cascade

namespace detail {

inline SampledFunction cascade_seed(const Mask& deepest, int depth_level, Seed seed, int level) {
  const double h = std::ldexp(1.0, -level);
  const double w = std::ldexp(1.0, -depth_level);
  const double centre = 0.5 * static_cast<double>(deepest.first() + deepest.last()) * w;
  const double half = seed == Seed::hat ? w : 0.5 * w;
  const long lo = static_cast<long>(std::floor((centre - half) / h));
  const long hi = static_cast<long>(std::ceil((centre + half) / h));
  SampledFunction f{level, lo, std::vector<double>(static_cast<std::size_t>(hi - lo + 1), 0.0)};
  for (long i = lo; i <= hi; ++i) {
    const double x = static_cast<double>(i) * h;
    const double d = std::abs(x - centre);
    double v = 0.0;
    if (seed == Seed::hat) {
      v = std::max(0.0, 1.0 - d / w) / w;
    } else if (d < half) {
      v = 1.0 / w;
    } else if (d == half) {
      v = 0.5 / w;
    }
    f.values[static_cast<std::size_t>(i - lo)] = v;
  }
  return f;
}

/// One refinement step: sum_alpha a_alpha f(. - alpha * stride grid steps).
inline SampledFunction refine(const SampledFunction& f, const Mask& a, long stride) {
  if (f.empty() || a.is_zero()) return {f.level, 0, {}};
  const long span = (a.last() - a.first()) * stride;
  SampledFunction r{f.level, f.start + a.first() * stride,
                    std::vector<double>(f.values.size() + static_cast<std::size_t>(span), 0.0)};
  for (long alpha = a.first(); alpha <= a.last(); ++alpha) {
    const double c = a[alpha];
    if (c == 0.0) continue;
    const std::size_t off = static_cast<std::size_t>((alpha - a.first()) * stride);
    for (std::size_t i = 0; i < f.values.size(); ++i) r.values[off + i] += c * f.values[i];
  }
  return r;
}

}  // namespace detail

/// k cascade steps at level m for an arbitrary mask sequence, sampled with step 2^-level.
template <MaskSource Family>
SampledFunction cascade(const Family& family, int m, const CascadeConfig& cfg, int level) {
  cfg.validate();
  if (m < 0) throw domain_error("cascade level must be >= 0");
  const int depth = m + cfg.iterations;
  if (level < depth)
    throw resolution_error("grid level " + std::to_string(level) + " cannot resolve cascade depth level " +
                           std::to_string(depth));
  SampledFunction f = detail::cascade_seed(family.mask(depth), depth, cfg.seed, level);
  for (int j = depth - 1; j >= m; --j) f = detail::refine(f, family.mask(j), 1L << (level - j - 1));
  return f;
}

/// h_k^(n,m) for the ripplet masks.
inline SampledFunction cascade_evaluate(const MaskParams& p, const CascadeConfig& cfg, int level) {
  p.validate();
  return cascade(RippletMasks{p.n, p.mu}, p.m, cfg, level);
}

inline SampledFunction cascade_evaluate(const MaskParams& p, const CascadeConfig& cfg = {}) {
  return cascade_evaluate(p, cfg, default_resolution(p.m, cfg));
}

/// Right end of supp phi^(n,m): n/2 + 1 at level 0, 2^-m (n+1) above.
inline double ripplet_support_end(int n, int m) {
  return m == 0 ? 0.5 * n + 1.0 : std::ldexp(static_cast<double>(n + 1), -m);
}

// ---------------------------------------------------------------------------
// Property checks

/// max_x |2^-m sum_alpha f(x - 2^-m alpha) - 1|. The translate sum of a
/// unit-integral function on the 2^-m lattice equals 2^m, hence the factor.
inline double partition_of_unity_residual(const SampledFunction& f, int m) {
  if (f.level < m) throw resolution_error("grid too coarse for the translate lattice");
  if (f.empty()) return 1.0;
  const long period = 1L << (f.level - m);
  const double lattice = std::ldexp(1.0, -m);
  double worst = 0.0;
  for (long i0 = f.start; i0 < f.start + period; ++i0) {
    double s = 0.0;
    for (long i = i0; i <= f.last_index(); i += period) s += f.sample(i);
    worst = std::max(worst, std::abs(lattice * s - 1.0));
  }
  return worst;
}

/// max |B^(0,m') * phi^(n-1,m) - phi^(n,m)|, with m' = 1 when m = 0.
inline double convolution_check(int n, int m, double mu, const CascadeConfig& cfg, int level) {
  if (n < 3) throw domain_error("convolution property needs n >= 3");
  const SampledFunction hi = cascade_evaluate({n, m, mu}, cfg, level);
  const SampledFunction lo = cascade_evaluate({n - 1, m, mu}, cfg, level);
  const SampledFunction box = sample_box(m == 0 ? 1 : m, level);
  return sup_distance(convolve(box, lo), hi);
}

/// Compares a centered finite-difference D^r phi^(n,m) with nabla_h^r phi^(n-r,m).
inline double derivative_rule_residual(int n, int m, double mu, int r, const CascadeConfig& cfg, int level) {
  MaskParams{n, m, mu}.validate();
  if (r < 0 || r > n - 1) throw domain_error("derivative order must satisfy 0 <= r <= n-1");
  const SampledFunction phi = cascade(RippletMasks{n, mu}, m, cfg, level);
  if (r == 0) return 0.0;
  // difference step = scale of the deepest cascade level
  const long w = 1L << (level - m - cfg.iterations);
  const double delta = phi.step() * static_cast<double>(w);
  SampledFunction deriv = phi;
  for (int k = 0; k < r; ++k) {
    SampledFunction d{level, deriv.start - w, std::vector<double>(deriv.values.size() + 2 * static_cast<std::size_t>(w))};
    for (long i = d.start; i <= d.last_index(); ++i)
      d.values[static_cast<std::size_t>(i - d.start)] = (deriv.sample(i + w) - deriv.sample(i - w)) / (2.0 * delta);
    deriv = std::move(d);
  }
  const int diff_level = m == 0 ? 1 : m;
  const long shift = 1L << (level - diff_level);
  const double h = std::ldexp(1.0, -diff_level);
  SampledFunction nabla = cascade(RippletMasks{n - r, mu}, m, cfg, level);
  for (int k = 0; k < r; ++k) nabla = axpy(nabla, -1.0, shifted(nabla, shift));
  for (double& v : nabla.values) v /= std::pow(h, r);

  const long lo = std::min(deriv.start, nabla.start) + r * w;
  const long hi = std::max(deriv.last_index(), nabla.last_index()) - r * w;
  double worst = 0.0;
  for (long i = lo; i <= hi; ++i) worst = std::max(worst, std::abs(deriv.sample(i) - nabla.sample(i)));
  return worst;
}

/// Symmetric about its support midpoint, nondecreasing up to it, and with
/// second differences changing sign exactly twice.
inline bool bell_shape_check(const SampledFunction& f) {
  constexpr double symmetry_tol = 1e-6;
  constexpr double noise = 1e-8;
  const double peak = f.max_abs();
  if (peak == 0.0) return false;
  const IndexRange supp = f.support(1e-14 * peak);
  const long len = supp.size();
  for (long i = 0; i < len; ++i)
    if (std::abs(f.sample(supp.lo + i) - f.sample(supp.hi - i)) > symmetry_tol) return false;
  const long mid = supp.lo + (len - 1) / 2;
  for (long i = supp.lo; i < mid; ++i)
    if (f.sample(i + 1) < f.sample(i) - 1e-12 * peak) return false;
  int changes = 0;
  int last_sign = 0;
  for (long i = supp.lo - 1; i <= supp.hi + 1; ++i) {
    const double d2 = f.sample(i + 1) - 2.0 * f.sample(i) + f.sample(i - 1);
    if (std::abs(d2) <= noise) continue;
    const int s = d2 > 0 ? 1 : -1;
    if (last_sign != 0 && s != last_sign) ++changes;
    last_sign = s;
  }
  return changes == 2;
}

struct ReproductionWindow {
  double lo;
  double hi;
};

/// Central window [(n+1) 2^-m, 2 (n+1) 2^-m], covered by full translate sums.
inline ReproductionWindow default_reproduction_window(int n, int m) {
  const double h = std::ldexp(1.0, -m);
  return {(n + 1) * h, 2.0 * (n + 1) * h};
}

/// Least-squares fit of x^d by 2^-m translates of phi^(n,m) on the window;
/// returns the max residual over the window's grid points.
inline double polynomial_reproduction_residual(int n, int m, double mu, int degree, const CascadeConfig& cfg,
                                               int level, ReproductionWindow window) {
  MaskParams{n, m, mu}.validate();
  if (m < 1) throw domain_error("polynomial reproduction is stated for m > 0");
  if (degree < 0) throw domain_error("degree must be >= 0");
  const SampledFunction phi = cascade(RippletMasks{n, mu}, m, cfg, level);
  const long stride = 1L << (level - m);
  const double h = phi.step();
  const long i_lo = static_cast<long>(std::ceil(window.lo / h));
  const long i_hi = static_cast<long>(std::floor(window.hi / h));
  if (i_hi <= i_lo) throw domain_error("empty reproduction window");
  // translates whose support meets the window
  const long a_lo = static_cast<long>(std::floor(static_cast<double>(i_lo - phi.last_index()) / stride));
  const long a_hi = static_cast<long>(std::ceil(static_cast<double>(i_hi - phi.start) / stride));
  const long rows = i_hi - i_lo + 1;
  // drop translates that only graze the window with their tails
  const double graze = 1e-6 * phi.max_abs();
  std::vector<long> shifts;
  for (long a = a_lo; a <= a_hi; ++a) {
    double peak = 0.0;
    for (long i = i_lo; i <= i_hi; ++i) peak = std::max(peak, std::abs(phi.sample(i - a * stride)));
    if (peak > graze) shifts.push_back(a);
  }
  const long cols = static_cast<long>(shifts.size());
  Eigen::MatrixXd A(rows, cols);
  Eigen::VectorXd b(rows);
  for (long r = 0; r < rows; ++r) {
    const long i = i_lo + r;
    b(r) = std::pow(phi.x_at(i), degree);
    for (long c = 0; c < cols; ++c) A(r, c) = phi.sample(i - shifts[static_cast<std::size_t>(c)] * stride);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  qr.setThreshold(1e-12);
  if (qr.rank() < cols) throw stability_error("collocation matrix is rank deficient");
  const Eigen::VectorXd gamma = qr.solve(b);
  return (A * gamma - b).lpNorm<Eigen::Infinity>();
}

inline double polynomial_reproduction_residual(int n, int m, double mu, int degree, const CascadeConfig& cfg,
                                               int level) {
  return polynomial_reproduction_residual(n, m, mu, degree, cfg, level, default_reproduction_window(n, m));
}

struct StabilitySpectrum {
  double min = 0.0;
  double max = 0.0;
  double at_zero = 0.0;
  CoeffSeq eta;  // eta_alpha = integral of f f(. + 2^-m alpha)
};

/// Autocorrelation symbol rho(omega) = sum_alpha eta_alpha e^{-i omega 2^-m alpha}
/// over one period [0, 2^(m+1) pi), sampled at `points` frequencies.
inline StabilitySpectrum stability_spectrum(const SampledFunction& f, int m, int points = 512) {
  if (f.level < m) throw resolution_error("grid too coarse for the translate lattice");
  if (points < 256) throw domain_error("use at least 256 frequencies");
  const long stride = 1L << (f.level - m);
  const long reach = static_cast<long>(f.values.size()) / stride + 1;
  std::vector<double> eta(static_cast<std::size_t>(2 * reach + 1), 0.0);
  for (long alpha = -reach; alpha <= reach; ++alpha) {
    double s = 0.0;
    for (long i = f.start; i <= f.last_index(); ++i) s += f.sample(i) * f.sample(i + alpha * stride);
    eta[static_cast<std::size_t>(alpha + reach)] = s * f.step();
  }
  StabilitySpectrum out;
  out.eta = CoeffSeq(-reach, std::move(eta));
  const double lattice = std::ldexp(1.0, -m);
  const double period = std::ldexp(2.0 * std::numbers::pi, m);
  out.min = std::numeric_limits<double>::infinity();
  out.max = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < points; ++j) {
    const double omega = period * j / points;
    const double rho = eval_unit_circle(out.eta, omega * lattice).real();
    out.min = std::min(out.min, rho);
    out.max = std::max(out.max, rho);
    if (j == 0) out.at_zero = rho;
  }
  return out;
}

}  // namespace ripplet
