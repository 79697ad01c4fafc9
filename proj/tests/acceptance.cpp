// Runs the ten acceptance checks and prints one PASS/FAIL line for each.
// Exit status is the number of failing checks (0 when all pass).

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "reference_tables.hpp"
#include "ripplet/ripplet.hpp"

using namespace ripplet;
namespace ref = ripplet::reference;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string sci(double v) { return fmt("%.3e", v); }

const CascadeConfig depth8{8, Seed::hat};

Outcome table_one() {
  double worst = 0.0;
  int bad = 0;
  for (int m = 0; m <= 8; ++m)
    for (int alpha = 0; alpha < 3; ++alpha) {
      const double d = std::abs(nonstationary_mask({3, m, 1.1})[alpha] - ref::mask_table[alpha][m]);
      worst = std::max(worst, d);
      if (d > ref::four_digit_tol) ++bad;
    }
  return {bad == 0, "27 entries, max |diff| " + sci(worst)};
}

Outcome closed_form() {
  double worst = 0.0;
  for (int m = 1; m <= 8; ++m)
    worst = std::max(worst, max_abs_diff(bezout_solve(nonstationary_mask({3, m, 1.1}), 14).coefficients,
                                         closed_form_dual_n3(m, 1.1)));
  return {worst < 1e-9, "max |solver - closed form| " + sci(worst)};
}

Outcome table_two() {
  std::string misses, noted;
  int bad = 0, compared = 0;
  for (int m = 0; m <= 8; ++m) {
    const CoeffSeq s = bezout_solve(nonstationary_mask({3, m, 1.1}), default_dual_length(3, m)).coefficients;
    for (int alpha = 0; alpha < 8; ++alpha) {
      const double got = s[alpha], want = ref::dual_table[alpha][m];
      if (std::abs(got - want) <= ref::four_digit_tol) {
        if (!ref::dual_column_excluded(m)) ++compared;
        continue;
      }
      const std::string where = " m=" + std::to_string(m) + ",a=" + std::to_string(alpha) + " (" +
                                fmt("%.4f", got) + " vs " + fmt("%.4f", want) + ")";
      if (ref::dual_column_excluded(m)) {
        noted += where;
      } else {
        misses += where;
        ++bad;
        ++compared;
      }
    }
  }
  std::string d = std::to_string(compared) + " compared, " + std::to_string(bad) + " mismatched";
  if (bad) d += ":" + misses;
  if (!noted.empty()) d += "; excluded columns differ at " + std::to_string(std::count(noted.begin(), noted.end(), '('))
                           + " entries";
  return {bad == 0, d};
}

Outcome prewavelet_coefficients() {
  const GramianResult r = prewavelet_gramian(3, 0, 1.1, {64, 1e-10});
  std::string got;
  bool ok = true;
  for (int i = 0; i < 4; ++i) {
    const long alpha = -1 - i;
    const double v = r.g[alpha];
    // tabulated pattern on g_(-1..-4): the magnitudes, alternating sign
    ok = ok && std::abs(std::abs(v) - ref::gramian_magnitudes[i]) <= ref::four_digit_tol &&
         (v > 0) == (ref::gramian_signs[i] > 0);
    got += (i ? ", " : "") + fmt("%.4f", v);
  }
  return {ok, "g_-1..g_-4 = " + got + " vs tabulated 0.3244, -0.1479, 0.0259, -0.0015"};
}

Outcome orthogonality() {
  double worst = 0.0;
  for (int n = 2; n <= 4; ++n)
    for (int m = 0; m <= 2; ++m) {
      const GramianResult r = prewavelet_gramian(n, m, 1.1);
      worst = std::max(worst, orthogonality_residual(prewavelet_mask(r.g), r.g));
    }
  return {worst < 1e-9, "max residual " + sci(worst)};
}

Outcome vanishing_moments() {
  double worst = 0.0;
  std::string d;
  for (int m = 0; m <= 1; ++m) {
    const auto r = vanishing_moments_residual(sample_prewavelet(3, m, 1.1, depth8, 12), 2);
    worst = std::max({worst, r[0], r[1]});
    d += "m=" + std::to_string(m) + ": d0 " + sci(r[0]) + " d1 " + sci(r[1]) + " d2(control) " + sci(r[2]) + "; ";
  }
  return {worst < 1e-6, d + "worst " + sci(worst)};
}

Outcome perfect_reconstruction() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  const FilterBankFamily ns = FilterBankFamily::nonstationary(3, 1.1);
  const FilterBankFamily st = FilterBankFamily::stationary(3);
  for (int trial = 0; trial < 20; ++trial) {
    Signal x{0, std::vector<double>(256)};
    for (double& v : x.samples) v = u(rng);
    for (const FilterBankFamily* fam : {&ns, &st})
      worst = std::max(worst, max_abs_diff(x, synthesize(analyze(x, 0, 3, *fam))) / x.max_abs());
  }
  return {worst < 1e-10, "max relative error " + sci(worst)};
}

Outcome cascade_suite() {
  std::string d;
  bool ok = true;
  for (int m = 0; m <= 2; ++m) {
    const SampledFunction f = cascade_evaluate({3, m, 1.1}, depth8, default_resolution(m, depth8));
    const double pu = partition_of_unity_residual(f, m);
    const double tail = f.tail_outside(0.0, ripplet_support_end(3, m));
    const double conv = convolution_check(3, m, 1.1, depth8, 12);
    const double der = derivative_rule_residual(3, m, 1.1, 1, depth8, 12);
    const bool bell = bell_shape_check(f);
    const bool pass = pu < 1e-6 && tail < 1e-8 && conv < 1e-4 && der < 1e-2 && bell;
    ok = ok && pass;
    d += "m=" + std::to_string(m) + ": pu " + sci(pu) + " tail " + sci(tail) + " conv " + sci(conv) + " deriv " +
         sci(der) + (bell ? " bell" : " NOT-bell") + "; ";
  }
  return {ok, d};
}

Outcome spike() {
  const SpikeReport r = spike_experiment(default_spike(), 3, 1e-8);
  return {r.nonzero_nonstationary <= r.nonzero_stationary,
          "nonstationary " + std::to_string(r.nonzero_nonstationary) + " vs stationary " +
              std::to_string(r.nonzero_stationary) + " (reference outcome 26 vs 39)"};
}

Outcome gramian_consistency() {
  double consistency = 0.0, quadrature = 0.0;
  for (int m = 0; m <= 2; ++m) {
    const GramianResult gm = prewavelet_gramian(3, m, 1.1);
    const GramianResult gn = prewavelet_gramian(3, m + 1, 1.1);
    const Eigen::VectorXd lhs = detail::to_vector(gm.g, sigma_g(3, m));
    const Eigen::VectorXd rhs = transfer_matrix(3, m, 1.1) * detail::to_vector(gn.g, sigma_g(3, m + 1));
    consistency = std::max(consistency, (lhs - rhs).lpNorm<Eigen::Infinity>());

    const CascadeConfig deep{10, Seed::hat};
    const int K = m + 13;
    const SampledFunction a = cascade_evaluate({3, m, 1.1}, deep, K);
    const SampledFunction b = cascade_evaluate({3, m + 1, 1.1}, deep, K);
    quadrature = std::max(quadrature, max_abs_diff(gm.g, oracle::gramian_by_quadrature(a, b, m, sigma_g(3, m))));
  }
  return {consistency < 1e-9 && quadrature < 1e-5,
          "refinement residual " + sci(consistency) + ", quadrature oracle " + sci(quadrature)};
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  const std::vector<std::pair<const char*, std::function<Outcome()>>> checks{
      {"mask table reproduction", table_one},
      {"closed-form vs solver duals", closed_form},
      {"dual table reproduction", table_two},
      {"prewavelet Gramian values", prewavelet_coefficients},
      {"prewavelet orthogonality", orthogonality},
      {"vanishing moments", vanishing_moments},
      {"perfect reconstruction", perfect_reconstruction},
      {"cascade properties", cascade_suite},
      {"spike sparsity", spike},
      {"Gramian refinement consistency", gramian_consistency},
  };
  int failed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = checks[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", i + 1, checks[i].first, secs, o.detail.c_str());
  }
  std::printf("%d of %zu checks failed\n", failed, checks.size());
  return failed;
}
