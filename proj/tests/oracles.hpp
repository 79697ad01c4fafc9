#pragma once

// Independent reference computations and random generators for the test suites.
// None of these call the library routine they are used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ripplet/ripplet.hpp"

namespace oracle {

using ripplet::CoeffSeq;
using ripplet::SampledFunction;

// ---------------------------------------------------------------------------
// generators

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

  std::vector<double> values(std::size_t len, double amp = 1.0) {
    std::vector<double> v(len);
    for (double& x : v) x = uniform(-amp, amp);
    return v;
  }

  /// Nonzero endpoints so the sequence is already canonical.
  CoeffSeq seq(long max_offset = 6, std::size_t max_len = 8) {
    const long off = integer(-max_offset, max_offset);
    std::vector<double> v = values(static_cast<std::size_t>(integer(1, static_cast<long>(max_len))));
    auto fix = [&](double& x) {
      if (std::abs(x) < 0.1) x = x < 0 ? -0.5 : 0.5;
    };
    fix(v.front());
    fix(v.back());
    return CoeffSeq(off, std::move(v));
  }

  std::complex<double> unit_point() { return std::polar(1.0, uniform(-M_PI, M_PI)); }
  std::complex<double> annulus_point() { return std::polar(uniform(0.7, 1.3), uniform(-M_PI, M_PI)); }

  ripplet::Signal signal(std::size_t len, long start = 0) { return {start, values(len)}; }

  double mu() { return uniform(1.05, 4.0); }
};

// ---------------------------------------------------------------------------
// polynomials

/// Direct evaluation sum c_alpha z^alpha, term by term.
inline std::complex<double> eval_direct(const CoeffSeq& p, std::complex<double> z) {
  std::complex<double> s{0.0, 0.0};
  for (long a = p.first(); !p.is_zero() && a <= p.last(); ++a) s += p[a] * std::pow(z, static_cast<double>(a));
  return s;
}

inline double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// ---------------------------------------------------------------------------
// B-splines

/// N_n(x) by the truncated-power formula.
inline double bspline_truncated_power(int n, double x) {
  double s = 0.0;
  double fact = 1.0;
  for (int i = 2; i <= n; ++i) fact *= i;
  for (int j = 0; j <= n + 1; ++j) {
    const double t = x - j;
    if (t > 0) s += ((j % 2) ? -1.0 : 1.0) * binom(n + 1, j) * std::pow(t, n);
  }
  return s / fact;
}

// ---------------------------------------------------------------------------
// cascade by direct recursion on point values

/// h_k^(m)(x) = sum_alpha a^(m)_alpha h_(k-1)^(m+1)(x - 2^-(m+1) alpha), with the
/// unit-integral hat of half-width 2^-L centered on the level-L support midpoint.
inline double cascade_point(const std::function<CoeffSeq(int)>& mask, int m, int k, double x) {
  if (k == 0) {
    const CoeffSeq deep = mask(m);
    const double w = std::ldexp(1.0, -m);
    const double c = 0.5 * static_cast<double>(deep.first() + deep.last()) * w;
    return std::max(0.0, 1.0 - std::abs(x - c) / w) / w;
  }
  const CoeffSeq a = mask(m);
  const double s = std::ldexp(1.0, -(m + 1));
  double v = 0.0;
  for (long alpha = a.first(); alpha <= a.last(); ++alpha) v += a[alpha] * cascade_point(mask, m + 1, k - 1, x - s * alpha);
  return v;
}

// ---------------------------------------------------------------------------
// quadrature

/// Trapezoid integral of f(x) g(x + shift * h) on the common grid.
inline double inner_product(const SampledFunction& f, const SampledFunction& g, long shift_steps) {
  double s = 0.0;
  for (long i = f.start; i <= f.last_index(); ++i) s += f.sample(i) * g.sample(i + shift_steps);
  return s * f.step();
}

/// Gramian g_alpha = integral phi^m phi^(m+1)(. + 2^-(m+1) alpha) from samples.
inline CoeffSeq gramian_by_quadrature(const SampledFunction& phi_m, const SampledFunction& phi_next, int m,
                                      ripplet::IndexRange range) {
  const long stride = 1L << (phi_m.level - m - 1);
  std::vector<double> v;
  for (long a = range.lo; a <= range.hi; ++a) v.push_back(inner_product(phi_m, phi_next, a * stride));
  return CoeffSeq::raw(range.lo, std::move(v));
}

// ---------------------------------------------------------------------------
// linear algebra

/// Spectral radius by repeated squaring-free power iteration on |T|-dominant modes.
inline double spectral_radius_power(const Eigen::MatrixXd& T, int iters = 4000) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(T.cols());
  double lambda = 0.0;
  for (int i = 0; i < iters; ++i) {
    Eigen::VectorXd w = T * v;
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    lambda = nw / v.norm();
    v = w / nw;
  }
  return lambda;
}

// ---------------------------------------------------------------------------
// filter bank as dense matrices

/// Dense analysis operator (rows: lambda then zeta) on indices [lo, lo+len).
struct DenseBank {
  long lo;
  long len;
  long a_lo, a_len, d_lo, d_len;
  Eigen::MatrixXd analysis;
  Eigen::MatrixXd synthesis;
};

inline DenseBank dense_bank(const ripplet::FilterQuartet& f, long lo, long len) {
  auto cdiv = [](long x) { return static_cast<long>(std::ceil(x / 2.0)); };
  auto fdiv = [](long x) { return static_cast<long>(std::floor(x / 2.0)); };
  DenseBank b{lo, len, 0, 0, 0, 0, {}, {}};
  const long hi = lo + len - 1;
  b.a_lo = cdiv(lo - f.a_dual.last());
  b.a_len = fdiv(hi - f.a_dual.first()) - b.a_lo + 1;
  b.d_lo = cdiv(lo - f.q_dual.last());
  b.d_len = fdiv(hi - f.q_dual.first()) - b.d_lo + 1;
  b.analysis = Eigen::MatrixXd::Zero(b.a_len + b.d_len, len);
  for (long r = 0; r < b.a_len; ++r)
    for (long c = 0; c < len; ++c) b.analysis(r, c) = f.convention.analysis_gain * f.a_dual[lo + c - 2 * (b.a_lo + r)];
  for (long r = 0; r < b.d_len; ++r)
    for (long c = 0; c < len; ++c)
      b.analysis(b.a_len + r, c) = f.convention.analysis_gain * f.q_dual[lo + c - 2 * (b.d_lo + r)];
  b.synthesis = Eigen::MatrixXd::Zero(len, b.a_len + b.d_len);
  for (long r = 0; r < len; ++r) {
    for (long c = 0; c < b.a_len; ++c) b.synthesis(r, c) = f.convention.synthesis_gain * f.a[lo + r - 2 * (b.a_lo + c)];
    for (long c = 0; c < b.d_len; ++c)
      b.synthesis(r, b.a_len + c) = f.convention.synthesis_gain * f.q[lo + r - 2 * (b.d_lo + c)];
  }
  return b;
}

}  // namespace oracle
