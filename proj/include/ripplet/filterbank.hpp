#pragma once

/**
 * @file filterbank.hpp
 * @brief Multilevel two-channel analysis and synthesis with level-dependent
 *        filters, zero extension at the ends, and the spike compression count.
 *
 *   lambda_alpha = c_a sum_beta ã_(beta - 2 alpha) x_beta
 *   zeta_alpha   = c_a sum_beta q~_(beta - 2 alpha) x_beta
 *   x_alpha      = c_s ( sum_beta a_(alpha - 2 beta) lambda_beta + sum_beta q_(alpha - 2 beta) zeta_beta )
 *
 * Analysis from level M to m0 applies the level M-1, ..., m0 quartets.
 */

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "ripplet/biorthogonal.hpp"
#include "ripplet/error.hpp"
#include "ripplet/laurent.hpp"
#include "ripplet/masks.hpp"

namespace ripplet {

/// x_start, ..., x_(start + samples.size() - 1); zero elsewhere.
struct Signal {
  long start = 0;
  std::vector<double> samples;

  long last() const noexcept { return start + static_cast<long>(samples.size()) - 1; }
  bool empty() const noexcept { return samples.empty(); }
  double operator[](long i) const noexcept {
    const long k = i - start;
    if (k < 0 || k >= static_cast<long>(samples.size())) return 0.0;
    return samples[static_cast<std::size_t>(k)];
  }
  double max_abs() const noexcept {
    double m = 0.0;
    for (double v : samples) m = std::max(m, std::abs(v));
    return m;
  }
};

/// Max |x_i - y_i| over the union of both index ranges.
inline double max_abs_diff(const Signal& x, const Signal& y) {
  if (x.empty() && y.empty()) return 0.0;
  const long lo = std::min(x.empty() ? y.start : x.start, y.empty() ? x.start : y.start);
  const long hi = std::max(x.empty() ? y.last() : x.last(), y.empty() ? x.last() : y.last());
  double m = 0.0;
  for (long i = lo; i <= hi; ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

enum class FamilyKind { nonstationary, stationary };

inline std::string to_string(FamilyKind k) { return k == FamilyKind::nonstationary ? "nonstationary" : "stationary"; }

/// Level-indexed filter quartets for one (n, mu) family.
class FilterBankFamily {
 public:
  FilterBankFamily(FamilyKind kind, int n, double mu = 1.1, long dual_length = 0, Convention convention = {})
      : kind_(kind), n_(n), mu_(mu), dual_length_(dual_length), convention_(convention),
        cache_(std::make_shared<Cache>()) {
    MaskParams{n, 0, mu}.validate();
  }

  static FilterBankFamily nonstationary(int n = 3, double mu = 1.1) { return {FamilyKind::nonstationary, n, mu}; }
  static FilterBankFamily stationary(int n = 3) { return {FamilyKind::stationary, n}; }

  FamilyKind kind() const noexcept { return kind_; }
  int n() const noexcept { return n_; }
  double mu() const noexcept { return mu_; }
  const Convention& convention() const noexcept { return convention_; }

  /// Dual length actually used at level m.
  long dual_length(int m) const {
    const int lm = kind_ == FamilyKind::stationary ? 1 : m;
    if (lm == 0) return default_dual_length(n_, 0);
    return dual_length_ > 0 ? dual_length_ : default_dual_length(n_, lm);
  }

  Mask lowpass(int m) const {
    if (m < 0) throw domain_error("level must be >= 0");
    return kind_ == FamilyKind::stationary ? fundamental_mask(n_) : detail::ripplet_mask(n_, m, mu_);
  }

  const FilterQuartet& quartet(int m) const {
    const int key = kind_ == FamilyKind::stationary ? 0 : m;
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->quartets.find(key);
    if (it != cache_->quartets.end()) return it->second;
    const Mask a = lowpass(m);
    const BezoutSolution dual = bezout_solve(a, dual_length(m));
    FilterQuartet q = make_quartet(a, dual.dual, m, convention_);
    return cache_->quartets.emplace(key, std::move(q)).first->second;
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<int, FilterQuartet> quartets;
  };
  FamilyKind kind_;
  int n_;
  double mu_;
  long dual_length_;
  Convention convention_;
  std::shared_ptr<Cache> cache_;
};

namespace detail {

inline long ceil_div2(long x) { return x >= 0 ? (x + 1) / 2 : -((-x) / 2); }
inline long floor_div2(long x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

/// c * sum_beta f_(beta - 2 alpha) x_beta over every alpha that can be nonzero.
inline Signal downsample_correlate(const Signal& x, const CoeffSeq& f, double c) {
  if (x.empty() || f.is_zero()) return {};
  const long lo = ceil_div2(x.start - f.last());
  const long hi = floor_div2(x.last() - f.first());
  Signal out{lo, std::vector<double>(static_cast<std::size_t>(std::max(0L, hi - lo + 1)), 0.0)};
  for (long alpha = lo; alpha <= hi; ++alpha) {
    double s = 0.0;
    const long b_lo = std::max(x.start, 2 * alpha + f.first());
    const long b_hi = std::min(x.last(), 2 * alpha + f.last());
    for (long beta = b_lo; beta <= b_hi; ++beta) s += f[beta - 2 * alpha] * x[beta];
    out.samples[static_cast<std::size_t>(alpha - lo)] = c * s;
  }
  return out;
}

/// Adds sum_beta f_(alpha - 2 beta) y_beta into out (which must cover the range).
inline void upsample_accumulate(Signal& out, const Signal& y, const CoeffSeq& f) {
  if (y.empty() || f.is_zero()) return;
  for (long beta = y.start; beta <= y.last(); ++beta) {
    const double v = y[beta];
    if (v == 0.0) continue;
    for (long k = f.first(); k <= f.last(); ++k)
      out.samples[static_cast<std::size_t>(2 * beta + k - out.start)] += f[k] * v;
  }
}

}  // namespace detail

struct LevelCoefficients {
  Signal approx;
  Signal detail;
};

inline LevelCoefficients analyze_level(const Signal& x, const FilterQuartet& f) {
  const double c = f.convention.analysis_gain;
  return {detail::downsample_correlate(x, f.a_dual, c), detail::downsample_correlate(x, f.q_dual, c)};
}

inline Signal synthesize_level(const Signal& approx, const Signal& det, const FilterQuartet& f) {
  long lo = 0, hi = -1;
  bool init = false;
  auto extend = [&](const Signal& y, const CoeffSeq& g) {
    if (y.empty() || g.is_zero()) return;
    const long a = 2 * y.start + g.first();
    const long b = 2 * y.last() + g.last();
    lo = init ? std::min(lo, a) : a;
    hi = init ? std::max(hi, b) : b;
    init = true;
  };
  extend(approx, f.a);
  extend(det, f.q);
  if (!init) return {};
  Signal out{lo, std::vector<double>(static_cast<std::size_t>(hi - lo + 1), 0.0)};
  detail::upsample_accumulate(out, approx, f.a);
  detail::upsample_accumulate(out, det, f.q);
  for (double& v : out.samples) v *= f.convention.synthesis_gain;
  return out;
}

struct Decomposition {
  int base_level = 0;
  int top_level = 0;
  Signal approx;
  std::vector<Signal> details;  // details[i] belongs to level base_level + i
  FilterBankFamily family;
  Convention convention;

  const Signal& detail_at(int level) const {
    if (level < base_level || level >= top_level) throw domain_error("no detail channel at that level");
    return details[static_cast<std::size_t>(level - base_level)];
  }
};

inline Decomposition analyze(const Signal& x, int m0, int M, const FilterBankFamily& family) {
  if (m0 < 0) throw domain_error("base level must be >= 0");
  if (M <= m0) throw domain_error("top level must exceed base level");
  Decomposition d{m0, M, {}, std::vector<Signal>(static_cast<std::size_t>(M - m0)), family, family.convention()};
  Signal cur = x;
  for (int m = M - 1; m >= m0; --m) {
    LevelCoefficients c = analyze_level(cur, family.quartet(m));
    d.details[static_cast<std::size_t>(m - m0)] = std::move(c.detail);
    cur = std::move(c.approx);
  }
  d.approx = std::move(cur);
  return d;
}

inline Signal synthesize(const Decomposition& d) {
  if (d.details.size() != static_cast<std::size_t>(d.top_level - d.base_level))
    throw dimension_error("decomposition has the wrong number of detail channels");
  Signal cur = d.approx;
  for (int m = d.base_level; m < d.top_level; ++m)
    cur = synthesize_level(cur, d.details[static_cast<std::size_t>(m - d.base_level)], d.family.quartet(m));
  return cur;
}

/// Coefficients with |c| > tau across the approximation and all details.
inline long count_nonzero(const Decomposition& d, double tau) {
  long n = 0;
  auto count = [&](const Signal& s) {
    for (double v : s.samples)
      if (std::abs(v) > tau) ++n;
  };
  count(d.approx);
  for (const auto& s : d.details) count(s);
  return n;
}

/// Unit impulse at 32 with +0.3 at 31 and -0.3 at 33 on indices 0..63.
inline Signal default_spike() {
  Signal s{0, std::vector<double>(64, 0.0)};
  s.samples[31] = 0.3;
  s.samples[32] = 1.0;
  s.samples[33] = -0.3;
  return s;
}

struct SpikeReport {
  long nonzero_nonstationary = 0;
  long nonzero_stationary = 0;
  double tau = 0.0;
  int levels = 0;
  Decomposition nonstationary;
  Decomposition stationary;
};

/// Analyzes from level `levels` down to 0 with both families and counts coefficients above tau.
inline SpikeReport spike_experiment(const Signal& spike, int levels = 3, double tau = 1e-8, int n = 3,
                                    double mu = 1.1) {
  if (levels < 1) throw domain_error("spike experiment needs at least one level");
  if (!(tau >= 0.0)) throw domain_error("threshold must be >= 0");
  Decomposition ns = analyze(spike, 0, levels, FilterBankFamily::nonstationary(n, mu));
  Decomposition st = analyze(spike, 0, levels, FilterBankFamily::stationary(n));
  const long cn = count_nonzero(ns, tau);
  const long cs = count_nonzero(st, tau);
  return {cn, cs, tau, levels, std::move(ns), std::move(st)};
}

}  // namespace ripplet
