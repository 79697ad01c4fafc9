#pragma once

/**
 * @file laurent.hpp
 * @brief Finitely supported real sequences and their Laurent-polynomial symbols.
 *
 * A CoeffSeq stores c_offset, ..., c_{offset+len-1}; the same object read as
 * sum_alpha c_alpha z^alpha is the symbol used for masks, filters and Gramian
 * vectors. Values are canonical: the first and last stored entries are
 * nonzero, or the sequence is the empty zero sequence with offset 0.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace ripplet {

/// Closed integer interval [lo, hi].
struct IndexRange {
  long lo = 0;
  long hi = -1;

  long size() const noexcept { return hi >= lo ? hi - lo + 1 : 0; }
  bool contains(long a) const noexcept { return a >= lo && a <= hi; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

class CoeffSeq {
 public:
  /// Entries below this fraction of the largest magnitude are trimmed from the ends.
  static constexpr double trim_threshold = 1e-14;

  CoeffSeq() = default;

  CoeffSeq(long offset, std::vector<double> values)
      : offset_(offset), values_(std::move(values)) {
    canonicalize();
  }

  CoeffSeq(long offset, std::initializer_list<double> values)
      : CoeffSeq(offset, std::vector<double>(values)) {}

  static CoeffSeq monomial(long exponent, double coefficient = 1.0) {
    return CoeffSeq(exponent, std::vector<double>{coefficient});
  }

  /// Builds a sequence without trimming; used where the exact stored support matters.
  static CoeffSeq raw(long offset, std::vector<double> values) {
    CoeffSeq s;
    s.offset_ = values.empty() ? 0 : offset;
    s.values_ = std::move(values);
    return s;
  }

  bool is_zero() const noexcept { return values_.empty(); }
  long offset() const noexcept { return offset_; }
  /// First index of the support.
  long first() const noexcept { return offset_; }
  /// Last index of the support (first()-1 for the zero sequence).
  long last() const noexcept { return offset_ + static_cast<long>(values_.size()) - 1; }
  std::size_t size() const noexcept { return values_.size(); }
  IndexRange support() const noexcept { return {first(), last()}; }
  std::span<const double> values() const noexcept { return values_; }

  /// Coefficient at index alpha, zero outside the support.
  double operator[](long alpha) const noexcept {
    const long i = alpha - offset_;
    if (i < 0 || i >= static_cast<long>(values_.size())) return 0.0;
    return values_[static_cast<std::size_t>(i)];
  }

  double sum() const noexcept {
    double s = 0.0;
    for (double v : values_) s += v;
    return s;
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  friend bool operator==(const CoeffSeq&, const CoeffSeq&) = default;

 private:
  void canonicalize() {
    const double cut = trim_threshold * max_abs();
    auto keep = [cut](double v) { return v != 0.0 && std::abs(v) >= cut; };
    auto lo = std::find_if(values_.begin(), values_.end(), keep);
    if (lo == values_.end()) {
      values_.clear();
      offset_ = 0;
      return;
    }
    auto hi = std::find_if(values_.rbegin(), values_.rend(), keep).base();
    offset_ += static_cast<long>(lo - values_.begin());
    values_ = std::vector<double>(lo, hi);
  }

  long offset_ = 0;
  std::vector<double> values_;
};

using LaurentPoly = CoeffSeq;

inline CoeffSeq add(const CoeffSeq& p, const CoeffSeq& q) {
  if (p.is_zero()) return q;
  if (q.is_zero()) return p;
  const long lo = std::min(p.first(), q.first());
  const long hi = std::max(p.last(), q.last());
  std::vector<double> v(static_cast<std::size_t>(hi - lo + 1));
  for (long a = lo; a <= hi; ++a) v[static_cast<std::size_t>(a - lo)] = p[a] + q[a];
  return CoeffSeq(lo, std::move(v));
}

inline CoeffSeq scale(const CoeffSeq& p, double c) {
  std::vector<double> v(p.values().begin(), p.values().end());
  for (double& x : v) x *= c;
  return CoeffSeq(p.offset(), std::move(v));
}

inline CoeffSeq sub(const CoeffSeq& p, const CoeffSeq& q) { return add(p, scale(q, -1.0)); }

/// Full convolution; the support is the Minkowski sum of the supports.
inline CoeffSeq mul(const CoeffSeq& p, const CoeffSeq& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<double> v(p.size() + q.size() - 1, 0.0);
  const auto pv = p.values();
  const auto qv = q.values();
  for (std::size_t i = 0; i < pv.size(); ++i)
    for (std::size_t j = 0; j < qv.size(); ++j) v[i + j] += pv[i] * qv[j];
  return CoeffSeq(p.offset() + q.offset(), std::move(v));
}

inline CoeffSeq operator+(const CoeffSeq& p, const CoeffSeq& q) { return add(p, q); }
inline CoeffSeq operator-(const CoeffSeq& p, const CoeffSeq& q) { return sub(p, q); }
inline CoeffSeq operator*(const CoeffSeq& p, const CoeffSeq& q) { return mul(p, q); }
inline CoeffSeq operator*(double c, const CoeffSeq& p) { return scale(p, c); }

/// z -> -z: coefficient alpha picks up (-1)^alpha.
inline CoeffSeq subst_neg(const CoeffSeq& p) {
  std::vector<double> v(p.values().begin(), p.values().end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const long alpha = p.offset() + static_cast<long>(i);
    if (alpha % 2 != 0) v[i] = -v[i];
  }
  return CoeffSeq(p.offset(), std::move(v));
}

/// z -> 1/z: reverses the coefficients and mirrors the support.
inline CoeffSeq subst_recip(const CoeffSeq& p) {
  if (p.is_zero()) return {};
  std::vector<double> v(p.values().rbegin(), p.values().rend());
  return CoeffSeq(-p.last(), std::move(v));
}

/// Polyphase split p(z) = p_e(z^2) + z p_o(z^2).
inline std::pair<CoeffSeq, CoeffSeq> even_odd_split(const CoeffSeq& p) {
  if (p.is_zero()) return {};
  auto floor_half = [](long a) { return a >= 0 ? a / 2 : -((-a + 1) / 2); };
  const long e_lo = floor_half(p.first() + 1);  // ceil(first/2)
  const long e_hi = floor_half(p.last());
  const long o_lo = floor_half(p.first());      // ceil((first-1)/2)
  const long o_hi = floor_half(p.last() - 1);
  std::vector<double> ev, od;
  for (long a = e_lo; a <= e_hi; ++a) ev.push_back(p[2 * a]);
  for (long a = o_lo; a <= o_hi; ++a) od.push_back(p[2 * a + 1]);
  return {CoeffSeq(e_lo, std::move(ev)), CoeffSeq(o_lo, std::move(od))};
}

/// Inverse of even_odd_split.
inline CoeffSeq even_odd_merge(const CoeffSeq& even, const CoeffSeq& odd) {
  if (even.is_zero() && odd.is_zero()) return {};
  long lo = 0, hi = 0;
  bool init = false;
  auto extend = [&](long a, long b) {
    lo = init ? std::min(lo, a) : a;
    hi = init ? std::max(hi, b) : b;
    init = true;
  };
  if (!even.is_zero()) extend(2 * even.first(), 2 * even.last());
  if (!odd.is_zero()) extend(2 * odd.first() + 1, 2 * odd.last() + 1);
  std::vector<double> v(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (long a = even.first(); !even.is_zero() && a <= even.last(); ++a)
    v[static_cast<std::size_t>(2 * a - lo)] = even[a];
  for (long a = odd.first(); !odd.is_zero() && a <= odd.last(); ++a)
    v[static_cast<std::size_t>(2 * a + 1 - lo)] = odd[a];
  return CoeffSeq(lo, std::move(v));
}

/// Evaluates the symbol at an arbitrary complex point (Horner on the stored span).
inline std::complex<double> evaluate(const CoeffSeq& p, std::complex<double> z) {
  if (p.is_zero()) return {0.0, 0.0};
  std::complex<double> acc{0.0, 0.0};
  const auto v = p.values();
  for (auto it = v.rbegin(); it != v.rend(); ++it) acc = acc * z + *it;
  return acc * std::pow(z, static_cast<double>(p.offset()));
}

/// sum_alpha c_alpha e^{-i omega alpha}.
inline std::complex<double> eval_unit_circle(const CoeffSeq& p, double omega) {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double alpha = static_cast<double>(p.offset() + static_cast<long>(i));
    acc += p.values()[i] * std::polar(1.0, -omega * alpha);
  }
  return acc;
}

/// Max coefficient magnitude of p - q.
inline double max_abs_diff(const CoeffSeq& p, const CoeffSeq& q) {
  if (p.is_zero() && q.is_zero()) return 0.0;
  const long lo = std::min(p.is_zero() ? q.first() : p.first(), q.is_zero() ? p.first() : q.first());
  const long hi = std::max(p.is_zero() ? q.last() : p.last(), q.is_zero() ? p.last() : q.last());
  double m = 0.0;
  for (long a = lo; a <= hi; ++a) m = std::max(m, std::abs(p[a] - q[a]));
  return m;
}

}  // namespace ripplet
