#pragma once

/**
 * @file biorthogonal.hpp
 * @brief Dual masks from the Bezout identity, highpass filters and the
 *        perfect-reconstruction identities of a filter quartet.
 *
 *   A(z) Ã(1/z) + A(-z) Ã(-1/z) = 1
 *
 * The dual is solved for on [0, L] (tabulation index) and returned both in
 * that indexing and aligned, i.e. delayed by delta = (L - N)/2 so that the
 * identity holds without a monomial factor (N = length of supp a minus one).
 */

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ripplet/error.hpp"
#include "ripplet/laurent.hpp"
#include "ripplet/masks.hpp"

namespace ripplet {

/// Gain and sign conventions shared by the filter derivation and the filter bank.
struct Convention {
  double analysis_gain = 1.0;
  double synthesis_gain = 2.0;
  int highpass_sign = 1;       // s in q_alpha = s (-1)^alpha ã_(1-alpha+sigma)
  int dual_highpass_sign = 1;  // s~ in q~_alpha = s~ (-1)^alpha a_(1-alpha+sigma)
  int highpass_shift = 0;      // sigma

  friend bool operator==(const Convention&, const Convention&) = default;
};

struct FilterQuartet {
  Mask a;
  CoeffSeq a_dual;  // aligned
  CoeffSeq q;
  CoeffSeq q_dual;
  int level = 0;
  Convention convention;
};

struct BezoutSolution {
  CoeffSeq coefficients;  // ã_0 .. ã_L, tabulation indexing
  CoeffSeq dual;          // aligned: ã_(alpha + delay) at index alpha
  long delay = 0;
  double residual = 0.0;
  int flatness_rows = 0;  // extra conditions Ã^(k)(-1) = 0 used to close the system
};

namespace detail {

/// Max coefficient of A(z)B(1/z) + A(-z)B(-1/z) - target.
inline double modulation_residual(const CoeffSeq& a, const CoeffSeq& b, double target) {
  const CoeffSeq p = mul(a, subst_recip(b));
  const CoeffSeq pm = mul(subst_neg(a), subst_recip(subst_neg(b)));
  return max_abs_diff(add(p, pm), CoeffSeq::monomial(0, target));
}

}  // namespace detail

/// Solves the Bezout identity for a dual supported on [0, L] before alignment.
inline BezoutSolution bezout_solve(const Mask& a, long L, bool symmetric = true) {
  if (a.is_zero()) throw domain_error("Bezout solve needs a nonzero mask");
  if (L < 0) throw domain_error("dual support length must be >= 0");
  const long N = a.last() - a.first();
  if ((L - N) % 2 != 0)
    throw no_solution_error("dual length " + std::to_string(L) + " has the wrong parity for a mask of length " +
                                std::to_string(N + 1),
                            std::numeric_limits<double>::infinity());
  const long delay = (L - N) / 2 - a.first();
  const long unknowns = L + 1;

  // even products p_(2k) = sum_beta a_(2k+beta) ã_beta, with ã aligned at offset -delay
  std::vector<Eigen::RowVectorXd> rows;
  std::vector<double> rhs;
  auto floor_div2 = [](long x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); };
  const long p_lo = a.first() - (L - delay);
  const long p_hi = a.last() + delay;
  for (long k = floor_div2(p_lo); k <= floor_div2(p_hi) + 1; ++k) {
    Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(unknowns);
    bool any = false;
    for (long alpha = 0; alpha <= L; ++alpha) {
      const double c = a[2 * k + alpha - delay];
      if (c != 0.0) {
        r(alpha) = c;
        any = true;
      }
    }
    if (!any) continue;
    rows.push_back(r);
    rhs.push_back(k == 0 ? 0.5 : 0.0);
  }

  // symmetric reduction ã_alpha = ã_(L-alpha)
  const long reduced = symmetric ? L / 2 + 1 : unknowns;
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(unknowns, reduced);
  for (long alpha = 0; alpha <= L; ++alpha) S(alpha, symmetric ? std::min(alpha, L - alpha) : alpha) = 1.0;

  auto assemble = [&](const std::vector<Eigen::RowVectorXd>& rs) {
    Eigen::MatrixXd E(static_cast<long>(rs.size()), unknowns);
    for (std::size_t i = 0; i < rs.size(); ++i) E.row(static_cast<long>(i)) = rs[i];
    return Eigen::MatrixXd(E * S);
  };
  auto rank_of = [](const Eigen::MatrixXd& m) {
    if (m.rows() == 0) return 0L;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
    qr.setThreshold(1e-12);
    return static_cast<long>(qr.rank());
  };

  long rank = rank_of(assemble(rows));
  int flat = 0;
  for (long k = 0; rank < reduced && k <= L; ++k) {
    // Ã^(k)(-1) = sum_alpha alpha (alpha-1) ... (alpha-k+1) (-1)^(alpha-k) ã_alpha
    Eigen::RowVectorXd r = Eigen::RowVectorXd::Zero(unknowns);
    for (long alpha = 0; alpha <= L; ++alpha) {
      double ff = 1.0;
      for (long j = 0; j < k; ++j) ff *= static_cast<double>(alpha - j);
      r(alpha) = ((alpha - k) % 2 == 0 ? 1.0 : -1.0) * ff;
    }
    const double scale = r.lpNorm<Eigen::Infinity>();
    if (scale == 0.0) continue;
    r /= scale;
    rows.push_back(r);
    rhs.push_back(0.0);
    const long rk = rank_of(assemble(rows));
    if (rk > rank) {
      rank = rk;
      ++flat;
    } else {
      rows.pop_back();
      rhs.pop_back();
    }
  }
  if (rank < reduced)
    throw no_solution_error("Bezout system is rank deficient for dual length " + std::to_string(L),
                            std::numeric_limits<double>::infinity());

  const Eigen::MatrixXd A = assemble(rows);
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(rhs.data(), static_cast<long>(rhs.size()));
  const Eigen::VectorXd u = A.colPivHouseholderQr().solve(b);
  const Eigen::VectorXd full = S * u;

  BezoutSolution sol;
  sol.coefficients = CoeffSeq::raw(0, std::vector<double>(full.data(), full.data() + full.size()));
  sol.dual = CoeffSeq(-delay, std::vector<double>(full.data(), full.data() + full.size()));
  sol.delay = delay;
  sol.flatness_rows = flat;
  sol.residual = detail::modulation_residual(a, sol.dual, 1.0);
  if (!(sol.residual <= 1e-10))
    throw no_solution_error("Bezout identity not satisfied for dual length " + std::to_string(L), sol.residual);
  return sol;
}

/// Dual length used when none is given: 1 for the Haar level, else n+1+2*floor((3n+1)/2).
inline long default_dual_length(int n, int m) {
  if (m == 0) return 1;
  return n + 1 + 2 * ((3 * n + 1) / 2);
}

/// Explicit dual of a^(3,m) on [0, 14], m >= 1, with h = 3 + m^-mu.
inline CoeffSeq closed_form_dual_n3(int m, double mu) {
  if (m < 1) throw domain_error("closed-form dual needs m >= 1");
  MaskParams{3, m, mu}.validate();
  const double h = 3.0 + std::exp(-mu * std::log(static_cast<double>(m)));
  const double D = -4.0 + std::exp2(h);
  const double p2 = std::exp2(6.0 + h);
  const double p4 = std::pow(4.0, 1.0 + h);
  const double p8 = std::pow(8.0, h);
  const double p16 = std::pow(16.0, h);
  const double e8 = std::pow(8.0, -3.0 - h) / D;
  const double e4 = std::pow(4.0, -5.0 - h) / D;
  const std::vector<double> half{
      e8 * (128 + p2 + 5 * p4 + 5 * p8),
      -e4 * (128 + p2 + 5 * p4 + 5 * p8),
      -e8 * (640 + 7 * p2 + 33 * p4 + 29 * p8 - 5 * p16),
      std::exp2(-9.0 - 2.0 * h) / D * (128 + 3 * p2 + 17 * p4 + 17 * p8),
      e8 * (1152 + 15 * p2 + 133 * p4 + 89 * p8 - 39 * p16),
      e4 * (128 + p2 - 123 * p4 - 123 * p8),
      -e8 * (640 + 9 * p2 - 81 * std::exp2(1.0 + 4.0 * h) + 105 * p4 + 577 * p8),
      -std::pow(4.0, -4.0 - h) / D * (128 + 3 * p2 + 81 * p4 - 175 * p8),
  };
  std::vector<double> v(half);
  for (int i = 6; i >= 0; --i) v.push_back(half[static_cast<std::size_t>(i)]);
  return CoeffSeq::raw(0, std::move(v));
}

/// q_alpha = s (-1)^alpha ã_(1-alpha+sigma), q~_alpha = s~ (-1)^alpha a_(1-alpha+sigma).
inline std::pair<CoeffSeq, CoeffSeq> wavelet_filters(const Mask& a, const CoeffSeq& a_dual,
                                                     const Convention& c = {}) {
  auto build = [&](const CoeffSeq& src, int sign) {
    if (src.is_zero()) return CoeffSeq{};
    const long lo = 1 + c.highpass_shift - src.last();
    const long hi = 1 + c.highpass_shift - src.first();
    std::vector<double> v(static_cast<std::size_t>(hi - lo + 1));
    for (long alpha = lo; alpha <= hi; ++alpha) {
      const double alt = (alpha % 2 == 0) ? 1.0 : -1.0;
      v[static_cast<std::size_t>(alpha - lo)] = sign * alt * src[1 - alpha + c.highpass_shift];
    }
    return CoeffSeq(lo, std::move(v));
  };
  return {build(a_dual, c.highpass_sign), build(a, c.dual_highpass_sign)};
}

inline FilterQuartet make_quartet(const Mask& a, const CoeffSeq& a_dual, int level, const Convention& c = {}) {
  auto [q, qd] = wavelet_filters(a, a_dual, c);
  return {a, a_dual, std::move(q), std::move(qd), level, c};
}

struct PrIdentityReport {
  double lowpass = 0.0;   // A Ã* + A(-) Ã(-)* - 1
  double highpass = 0.0;  // Q Q~* + Q(-) Q~(-)* - 1
  double cross = 0.0;     // A Q~* + A(-) Q~(-)*
  double dual_cross = 0.0;  // Ã* Q + Ã(-)* Q(-)
  double max() const { return std::max({lowpass, highpass, cross, dual_cross}); }
};

inline PrIdentityReport pr_identities(const FilterQuartet& f) {
  PrIdentityReport r;
  r.lowpass = detail::modulation_residual(f.a, f.a_dual, 1.0);
  r.highpass = detail::modulation_residual(f.q, f.q_dual, 1.0);
  r.cross = detail::modulation_residual(f.a, f.q_dual, 0.0);
  r.dual_cross = detail::modulation_residual(f.q, f.a_dual, 0.0);
  return r;
}

inline double pr_identity_residual(const FilterQuartet& f) { return pr_identities(f).max(); }

/// Nonstationary dual masks ã^(n,m), solved once per level and cached.
class DualMasks {
 public:
  DualMasks(int n, double mu, long length = 0) : n_(n), mu_(mu), length_(length), cache_(std::make_shared<Cache>()) {
    MaskParams{n, 0, mu}.validate();
  }

  Mask mask(int m) const {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->duals.find(m);
    if (it != cache_->duals.end()) return it->second;
    const long L = (m == 0 || length_ <= 0) ? default_dual_length(n_, m) : length_;
    Mask d = bezout_solve(detail::ripplet_mask(n_, m, mu_), L).dual;
    cache_->duals.emplace(m, d);
    return d;
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<int, Mask> duals;
  };
  int n_;
  double mu_;
  long length_;
  std::shared_ptr<Cache> cache_;
};

/// Dual of the fundamental mask at every level.
struct FundamentalDualMasks {
  int n = 3;
  Mask mask(int /*m*/) const { return bezout_solve(fundamental_mask(n), default_dual_length(n, 1)).dual; }
};

}  // namespace ripplet
