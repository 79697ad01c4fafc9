#pragma once

/**
 * @file masks.hpp
 * @brief Nonstationary ripplet masks a^(n,m), the B-spline fundamental mask,
 *        autocorrelations and transition matrices.
 *
 * Level m = 0 uses the Haar mask {1/2, 1/2} on [0, 1]. Higher levels are
 *
 *   a_alpha = 2^-(n+1+t) [ C(n+1, alpha) + 4 (2^t - 1) C(n-1, alpha-1) ],  t = m^-mu,
 *
 * on [0, n+1]. Every mask sums to one. As m grows the masks approach
 * C(n+1, alpha) / 2^(n+1).
 */

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ripplet/error.hpp"
#include "ripplet/laurent.hpp"

namespace ripplet {

using Mask = CoeffSeq;

struct MaskParams {
  int n = 3;
  int m = 0;
  double mu = 1.1;

  void validate() const {
    if (n < 2) throw domain_error("mask parameter n must be >= 2, got " + std::to_string(n));
    if (m < 0) throw domain_error("mask level m must be >= 0, got " + std::to_string(m));
    if (!(mu > 1.0) || !std::isfinite(mu))
      throw domain_error("tension parameter mu must be a finite real > 1");
  }
};

namespace detail {

/// Row n of Pascal's triangle, exact in integers.
inline std::vector<std::int64_t> pascal_row(int n) {
  std::vector<std::int64_t> row{1};
  for (int r = 1; r <= n; ++r) {
    std::vector<std::int64_t> next(static_cast<std::size_t>(r) + 1, 1);
    for (int k = 1; k < r; ++k)
      next[static_cast<std::size_t>(k)] =
          row[static_cast<std::size_t>(k - 1)] + row[static_cast<std::size_t>(k)];
    row = std::move(next);
  }
  return row;
}

inline double binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0.0;
  return static_cast<double>(pascal_row(n)[static_cast<std::size_t>(k)]);
}

/// 2^(m^-mu) via a single exp2(exp(-mu ln m)); m >= 1.
inline double tension_factor(int m, double mu) {
  return std::exp2(std::exp(-mu * std::log(static_cast<double>(m))));
}

/// Mask formula without the n >= 2 restriction. n = 1 appears through the
/// differentiation rule (phi^(n-r,m) with r = n-1).
inline Mask ripplet_mask(int n, int m, double mu) {
  if (m == 0) return Mask(0, {0.5, 0.5});
  const double t = std::exp(-mu * std::log(static_cast<double>(m)));
  const double two_t = tension_factor(m, mu);
  const double norm = std::exp2(-(static_cast<double>(n) + 1.0 + t));
  const auto outer = pascal_row(n + 1);
  const auto inner = pascal_row(n - 1);
  std::vector<double> v(static_cast<std::size_t>(n) + 2);
  for (int alpha = 0; alpha <= n + 1; ++alpha) {
    const double c_in = (alpha >= 1 && alpha <= n) ? static_cast<double>(inner[static_cast<std::size_t>(alpha - 1)]) : 0.0;
    v[static_cast<std::size_t>(alpha)] =
        norm * (static_cast<double>(outer[static_cast<std::size_t>(alpha)]) + 4.0 * (two_t - 1.0) * c_in);
  }
  return Mask::raw(0, std::move(v));
}

}  // namespace detail

inline Mask nonstationary_mask(const MaskParams& p) {
  p.validate();
  return detail::ripplet_mask(p.n, p.m, p.mu);
}

/// Binomial mask C(n+1, alpha) / 2^(n+1) of the degree-n B-spline.
inline Mask fundamental_mask(int n) {
  if (n < 1) throw domain_error("fundamental mask needs n >= 1");
  const auto row = detail::pascal_row(n + 1);
  const double norm = std::exp2(-(n + 1));
  std::vector<double> v;
  v.reserve(row.size());
  for (auto c : row) v.push_back(norm * static_cast<double>(c));
  return Mask::raw(0, std::move(v));
}

inline LaurentPoly mask_symbol(const Mask& mask) { return mask; }

/// check(a)_alpha = sum_beta a_beta a_(beta-alpha); symmetric about 0.
inline CoeffSeq autocorrelation(const Mask& mask) {
  if (mask.is_zero()) return {};
  return mul(mask, subst_recip(mask));
}

/// Dense matrix with entry (alpha, beta) = 2 check(a)_(2 alpha - beta), both
/// indices running over `range`.
inline Eigen::MatrixXd transition_matrix(const Mask& mask, IndexRange range) {
  const CoeffSeq ac = autocorrelation(mask);
  if (!ac.is_zero() && (range.lo > ac.first() || range.hi < ac.last()))
    throw dimension_error("transition matrix index range must cover the autocorrelation support");
  const long n = range.size();
  Eigen::MatrixXd t(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) t(i, j) = 2.0 * ac[2 * (range.lo + i) - (range.lo + j)];
  return t;
}

inline Eigen::MatrixXd transition_matrix(const Mask& mask) {
  const CoeffSeq ac = autocorrelation(mask);
  return transition_matrix(mask, ac.support());
}

/// Mask sequence of the ripplet family {a^(n,m) : m >= 0}.
struct RippletMasks {
  int n = 3;
  double mu = 1.1;
  Mask mask(int m) const { return detail::ripplet_mask(n, m, mu); }
};

/// The stationary family: the fundamental B-spline mask at every level.
struct FundamentalMasks {
  int n = 3;
  Mask mask(int /*m*/) const { return fundamental_mask(n); }
};

}  // namespace ripplet
