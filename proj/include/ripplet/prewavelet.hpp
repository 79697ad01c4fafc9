#pragma once

/**
 * @file prewavelet.hpp
 * @brief Cross-scale Gramian vectors, the minimally supported prewavelet
 *        masks and their checks.
 *
 *   g^(n,m)_alpha = integral phi^(n,m)(x) phi^(n,m+1)(x + 2^-(m+1) alpha) dx
 *
 * satisfies M^(n,m) = C^(n,m) M^(n,m+1) with C built from
 * c_j = sum_gamma a^(n,m)_gamma a^(n,m+1)_(j + 2 gamma). The vector is obtained
 * by pushing the B-spline cross-Gramian from a deep level back to level m.
 * Under unit-integral normalization the level-L cross-Gramian of B-splines is
 * 2^L times the level-0 one, which sets the seed scaling.
 */

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "ripplet/error.hpp"
#include "ripplet/laurent.hpp"
#include "ripplet/masks.hpp"
#include "ripplet/refinable.hpp"
#include "ripplet/sampled.hpp"

namespace ripplet {

using GramianVector = CoeffSeq;
using PrewaveletMask = CoeffSeq;

/// Theoretical support of g^(n,m).
inline IndexRange sigma_g(int n, int m) {
  return m == 0 ? IndexRange{-n - 1, n} : IndexRange{-2 * n - 1, n};
}

/// g^(n)_alpha for the B-spline pair B^(n,0), B^(n,1), on [-2n-1, n].
inline GramianVector stationary_cross_gramian(int n) {
  if (n < 2) throw domain_error("cross-Gramian needs n >= 2");
  const Mask a = fundamental_mask(n);
  const IndexRange s{-2 * n - 1, n};
  std::vector<double> v(static_cast<std::size_t>(s.size()), 0.0);
  for (long alpha = s.lo; alpha <= s.hi; ++alpha) {
    double acc = 0.0;
    for (long beta = a.first(); beta <= a.last(); ++beta)
      acc += a[beta] * cardinal_bspline(2 * n + 1, static_cast<double>(n + 1 + alpha + beta));
    v[static_cast<std::size_t>(alpha - s.lo)] = 2.0 * acc;
  }
  return CoeffSeq::raw(s.lo, std::move(v));
}

/// c_j = sum_gamma a_gamma b_(j + 2 gamma) for consecutive level masks a, b.
inline CoeffSeq transfer_mask(const Mask& a, const Mask& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const long lo = b.first() - 2 * a.last();
  const long hi = b.last() - 2 * a.first();
  std::vector<double> v(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (long j = lo; j <= hi; ++j) {
    double s = 0.0;
    for (long g = a.first(); g <= a.last(); ++g) s += a[g] * b[j + 2 * g];
    v[static_cast<std::size_t>(j - lo)] = s;
  }
  return CoeffSeq(lo, std::move(v));
}

inline CoeffSeq transfer_mask(int n, int m, double mu) {
  MaskParams{n, m, mu}.validate();
  return transfer_mask(detail::ripplet_mask(n, m, mu), detail::ripplet_mask(n, m + 1, mu));
}

/// Entry (alpha, beta) = c_(2 alpha - beta), rows over `rows`, columns over `cols`.
inline Eigen::MatrixXd transfer_matrix(const CoeffSeq& c, IndexRange rows, IndexRange cols) {
  Eigen::MatrixXd t(rows.size(), cols.size());
  for (long i = 0; i < rows.size(); ++i)
    for (long j = 0; j < cols.size(); ++j) t(i, j) = c[2 * (rows.lo + i) - (cols.lo + j)];
  return t;
}

inline Eigen::MatrixXd transfer_matrix(int n, int m, double mu, IndexRange rows, IndexRange cols) {
  if (!(rows == sigma_g(n, m)) || !(cols == sigma_g(n, m + 1)))
    throw dimension_error("transfer matrix supports must be sigma_g at levels m and m+1");
  return transfer_matrix(transfer_mask(n, m, mu), rows, cols);
}

inline Eigen::MatrixXd transfer_matrix(int n, int m, double mu) {
  return transfer_matrix(n, m, mu, sigma_g(n, m), sigma_g(n, m + 1));
}

struct GramianConfig {
  int max_iterations = 64;
  double tol = 1e-12;
};

struct GramianResult {
  GramianVector g;
  int iterations = 0;
  double last_update = 0.0;
  std::vector<double> history;  // ||P_k - P_(k-1)||_inf for k = 1, 2, ...
};

namespace detail {

inline Eigen::VectorXd to_vector(const CoeffSeq& s, IndexRange r) {
  Eigen::VectorXd v(r.size());
  for (long i = 0; i < r.size(); ++i) v(i) = s[r.lo + i];
  return v;
}

inline GramianVector from_vector(const Eigen::VectorXd& v, IndexRange r) {
  return CoeffSeq::raw(r.lo, std::vector<double>(v.data(), v.data() + v.size()));
}

}  // namespace detail

/// P_k = C^(m) C^(m+1) ... C^(m+k-1) (2^(m+k) M^(n)) until consecutive
/// iterates agree to `tol`.
template <MaskSource Family>
GramianResult prewavelet_gramian(const Family& family, int n, int m, const GramianConfig& cfg = {}) {
  if (cfg.max_iterations < 1) throw domain_error("Gramian iteration needs at least one step");
  if (m < 0) throw domain_error("level m must be >= 0");
  const GramianVector seed = stationary_cross_gramian(n);
  const IndexRange deep = sigma_g(n, 1);
  const Eigen::VectorXd M = detail::to_vector(seed, deep);

  const IndexRange top = sigma_g(n, m);
  Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(top.size(), top.size());
  IndexRange cur = top;
  Eigen::VectorXd prev = std::ldexp(1.0, m) * detail::to_vector(seed, top);

  GramianResult out;
  for (int k = 1; k <= cfg.max_iterations; ++k) {
    const int j = m + k - 1;
    const IndexRange next = sigma_g(n, j + 1);
    Q = Q * (2.0 * transfer_matrix(transfer_mask(family.mask(j), family.mask(j + 1)), cur, next));
    cur = next;
    const Eigen::VectorXd P = std::ldexp(1.0, m) * (Q * M);
    const double upd = (P - prev).lpNorm<Eigen::Infinity>();
    out.history.push_back(upd);
    out.iterations = k;
    out.last_update = upd;
    prev = P;
    if (upd < cfg.tol) {
      out.g = detail::from_vector(P, top);
      return out;
    }
  }
  throw iteration_limit_error("Gramian iteration did not reach tolerance", out.last_update);
}

inline GramianResult prewavelet_gramian(int n, int m, double mu, const GramianConfig& cfg = {}) {
  MaskParams{n, m, mu}.validate();
  return prewavelet_gramian(RippletMasks{n, mu}, n, m, cfg);
}

/// d_alpha = (-1)^alpha g_(alpha-1).
inline PrewaveletMask prewavelet_mask(const GramianVector& g) {
  if (g.is_zero()) return {};
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const long alpha = g.first() + 1 + static_cast<long>(i);
    v[i] = (alpha % 2 == 0 ? 1.0 : -1.0) * g.values()[i];
  }
  return CoeffSeq::raw(g.first() + 1, std::move(v));
}

/// max_beta |sum_alpha d_alpha g_(2 beta - alpha)|.
inline double orthogonality_residual(const PrewaveletMask& d, const GramianVector& g) {
  if (d.is_zero() || g.is_zero()) return 0.0;
  auto floor_div2 = [](long x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); };
  const long b_lo = floor_div2(d.first() + g.first());
  const long b_hi = floor_div2(d.last() + g.last()) + 1;
  double worst = 0.0;
  for (long beta = b_lo; beta <= b_hi; ++beta) {
    double s = 0.0;
    for (long alpha = d.first(); alpha <= d.last(); ++alpha) s += d[alpha] * g[2 * beta - alpha];
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

/// psi^(n,m) = sum_alpha d_alpha phi^(n,m+1)(. - 2^-(m+1) alpha) on a 2^-level grid.
inline SampledFunction sample_prewavelet(const PrewaveletMask& d, const SampledFunction& phi_next, int m) {
  if (phi_next.level < m + 1) throw resolution_error("grid too coarse for level m+1 translates");
  const long stride = 1L << (phi_next.level - m - 1);
  SampledFunction psi{phi_next.level, 0, {}};
  for (long alpha = d.first(); !d.is_zero() && alpha <= d.last(); ++alpha)
    psi = axpy(psi, d[alpha], shifted(phi_next, alpha * stride));
  return psi;
}

inline SampledFunction sample_prewavelet(int n, int m, double mu, const CascadeConfig& cascade_cfg, int level,
                                         const GramianConfig& gram_cfg = {}) {
  const GramianResult g = prewavelet_gramian(n, m, mu, gram_cfg);
  const SampledFunction phi = cascade_evaluate({n, m + 1, mu}, cascade_cfg, level);
  return sample_prewavelet(prewavelet_mask(g.g), phi, m);
}

/// |integral x^d psi| for d = 0..max_degree (trapezoid rule).
inline std::vector<double> vanishing_moments_residual(const SampledFunction& psi, int max_degree) {
  if (max_degree < 0) throw domain_error("max_degree must be >= 0");
  std::vector<double> r;
  for (int d = 0; d <= max_degree; ++d) r.push_back(std::abs(psi.moment(d)));
  return r;
}

}  // namespace ripplet
