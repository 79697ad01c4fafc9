// Small tour: masks, a cascade, the prewavelet Gramian, a dual mask and a
// three-level round trip.

#include <cstdio>
#include <random>

#include "ripplet/ripplet.hpp"

int main() {
  using namespace ripplet;

  const Mask a = nonstationary_mask({3, 2, 1.1});
  std::printf("a^(3,2):");
  for (double v : a.values()) std::printf(" %.6f", v);
  std::printf("\n");

  const CascadeConfig cfg{8, Seed::hat};
  const SampledFunction phi = cascade_evaluate({3, 1, 1.1}, cfg, default_resolution(1, cfg));
  std::printf("phi^(3,1): %zu samples, integral %.12f, max %.6f\n", phi.values.size(), phi.integral(), phi.max_abs());

  const GramianResult g = prewavelet_gramian(3, 0, 1.1);
  std::printf("g^(3,0) after %d iterations:", g.iterations);
  for (long i = g.g.first(); i <= g.g.last(); ++i) std::printf(" %.6f", g.g[i]);
  std::printf("\n");

  const BezoutSolution dual = bezout_solve(a, default_dual_length(3, 2));
  std::printf("dual of a^(3,2): %zu taps, identity residual %.2e\n", dual.coefficients.size(), dual.residual);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Signal x{0, std::vector<double>(128)};
  for (double& v : x.samples) v = u(rng);
  const Decomposition d = analyze(x, 0, 3, FilterBankFamily::nonstationary(3, 1.1));
  std::printf("round trip error %.2e\n", max_abs_diff(x, synthesize(d)));

  const SpikeReport s = spike_experiment(default_spike());
  std::printf("spike nonzeros: nonstationary %ld, stationary %ld\n", s.nonzero_nonstationary, s.nonzero_stationary);
}
