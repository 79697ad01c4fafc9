#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ripplet/filterbank.hpp"

using namespace ripplet;

namespace {

Signal ramp(long len, double a, double b) {
  Signal s{0, std::vector<double>(static_cast<std::size_t>(len))};
  for (long i = 0; i < len; ++i) s.samples[static_cast<std::size_t>(i)] = a + b * i;
  return s;
}

}  // namespace

TEST(FilterBank, HaarSingleLevel) {
  const FilterBankFamily fam = FilterBankFamily::nonstationary(3);
  const Signal x{0, {4.0, 2.0, 5.0, 7.0}};
  const LevelCoefficients c = analyze_level(x, fam.quartet(0));
  // averages and half differences
  EXPECT_EQ(c.approx.start, 0);
  ASSERT_EQ(c.approx.samples.size(), 2u);
  EXPECT_DOUBLE_EQ(c.approx[0], 3.0);
  EXPECT_DOUBLE_EQ(c.approx[1], 6.0);
  double dsum = 0.0;
  for (double v : c.detail.samples) dsum += std::abs(v);
  EXPECT_DOUBLE_EQ(dsum, 1.0 + 1.0);
  EXPECT_LT(max_abs_diff(synthesize_level(c.approx, c.detail, fam.quartet(0)), x), 1e-15);
}

TEST(FilterBank, MatchesDenseOracle) {
  const FilterBankFamily fam = FilterBankFamily::nonstationary(3);
  oracle::Gen g(31);
  for (int m = 0; m <= 3; ++m) {
    const FilterQuartet& f = fam.quartet(m);
    const Signal x = g.signal(40, -5);
    const oracle::DenseBank b = oracle::dense_bank(f, x.start, 40);
    const Eigen::VectorXd xv = Eigen::Map<const Eigen::VectorXd>(x.samples.data(), 40);
    const Eigen::VectorXd coeffs = b.analysis * xv;
    const LevelCoefficients c = analyze_level(x, f);
    ASSERT_EQ(c.approx.start, b.a_lo);
    ASSERT_EQ(static_cast<long>(c.approx.samples.size()), b.a_len);
    ASSERT_EQ(c.detail.start, b.d_lo);
    ASSERT_EQ(static_cast<long>(c.detail.samples.size()), b.d_len);
    for (long i = 0; i < b.a_len; ++i) EXPECT_NEAR(c.approx.samples[i], coeffs(i), 1e-14);
    for (long i = 0; i < b.d_len; ++i) EXPECT_NEAR(c.detail.samples[i], coeffs(b.a_len + i), 1e-14);
    // synthesis . analysis = identity on the input window
    const Eigen::MatrixXd I = b.synthesis * b.analysis;
    EXPECT_LT((I - Eigen::MatrixXd::Identity(40, 40)).lpNorm<Eigen::Infinity>(), 1e-11) << "m=" << m;
  }
}

TEST(FilterBank, IndexBookkeeping) {
  const FilterBankFamily fam = FilterBankFamily::nonstationary(3);
  const Decomposition d = analyze(ramp(64, 0, 1), 0, 3, fam);
  EXPECT_EQ(d.details.size(), 3u);
  EXPECT_EQ(&d.detail_at(0), &d.details[0]);
  EXPECT_THROW(d.detail_at(3), domain_error);
  EXPECT_THROW(analyze(ramp(8, 0, 1), 2, 2, fam), domain_error);
  EXPECT_THROW(analyze(ramp(8, 0, 1), -1, 2, fam), domain_error);
}

TEST(FilterBank, PerfectReconstructionSweep) {
  oracle::Gen g(41);
  for (int levels = 1; levels <= 4; ++levels)
    for (long len : {16L, 33L, 128L, 512L})
      for (double mu : {1.1, 2.0}) {
        const Signal x = g.signal(static_cast<std::size_t>(len), g.integer(-10, 10));
        const FilterBankFamily fam = FilterBankFamily::nonstationary(3, mu);
        const Signal y = synthesize(analyze(x, 0, levels, fam));
        EXPECT_LT(max_abs_diff(x, y), 1e-10 * x.max_abs()) << "levels=" << levels << " len=" << len;
      }
}

TEST(FilterBank, PerfectReconstructionStationaryAndOffsetBase) {
  oracle::Gen g(42);
  const Signal x = g.signal(200);
  EXPECT_LT(max_abs_diff(x, synthesize(analyze(x, 0, 4, FilterBankFamily::stationary(3)))), 1e-10);
  EXPECT_LT(max_abs_diff(x, synthesize(analyze(x, 2, 5, FilterBankFamily::nonstationary(4, 1.3)))), 1e-10);
}

TEST(FilterBank, ConstantSignalHasNoInteriorDetail) {
  const FilterBankFamily fam = FilterBankFamily::nonstationary(3);
  const Signal x = ramp(256, 1.5, 0.0);
  for (int m = 1; m <= 3; ++m) {
    const LevelCoefficients c = analyze_level(x, fam.quartet(m));
    const long margin = 10;
    for (long a = c.detail.start + margin; a <= c.detail.last() - margin; ++a) EXPECT_LT(std::abs(c.detail[a]), 1e-12);
  }
}

TEST(FilterBank, RampHasNoInteriorDetail) {
  const FilterBankFamily fam = FilterBankFamily::nonstationary(3);
  const Signal x = ramp(256, -2.0, 0.25);
  const LevelCoefficients c = analyze_level(x, fam.quartet(2));
  for (long a = c.detail.start + 10; a <= c.detail.last() - 10; ++a) EXPECT_LT(std::abs(c.detail[a]), 1e-10);
}

TEST(FilterBank, Linearity) {
  oracle::Gen g(43);
  const FilterBankFamily fam = FilterBankFamily::nonstationary(3);
  const Signal x = g.signal(100), y = g.signal(100);
  Signal z{0, std::vector<double>(100)};
  for (std::size_t i = 0; i < 100; ++i) z.samples[i] = 2.0 * x.samples[i] - 0.5 * y.samples[i];
  const Decomposition dx = analyze(x, 0, 3, fam), dy = analyze(y, 0, 3, fam), dz = analyze(z, 0, 3, fam);
  for (std::size_t i = 0; i < dz.approx.samples.size(); ++i)
    EXPECT_NEAR(dz.approx.samples[i], 2.0 * dx.approx.samples[i] - 0.5 * dy.approx.samples[i], 1e-12);
  for (int l = 0; l < 3; ++l)
    for (std::size_t i = 0; i < dz.details[l].samples.size(); ++i)
      EXPECT_NEAR(dz.details[l].samples[i], 2.0 * dx.details[l].samples[i] - 0.5 * dy.details[l].samples[i], 1e-12);
}

TEST(FilterBank, ImpulseRecoversDualFilters) {
  const FilterBankFamily fam = FilterBankFamily::nonstationary(3);
  const FilterQuartet& f = fam.quartet(2);
  const LevelCoefficients c = analyze_level(Signal{0, {1.0}}, f);
  // lambda_alpha = ã_(-2 alpha)
  for (long a = c.approx.start; a <= c.approx.last(); ++a) EXPECT_DOUBLE_EQ(c.approx[a], f.a_dual[-2 * a]);
}

TEST(FilterBank, CountsMonotoneInThreshold) {
  oracle::Gen g(44);
  const Decomposition d = analyze(g.signal(64), 0, 3, FilterBankFamily::nonstationary(3));
  long prev = count_nonzero(d, 0.0);
  for (double tau : {1e-12, 1e-6, 1e-3, 1e-1, 1.0}) {
    const long c = count_nonzero(d, tau);
    EXPECT_LE(c, prev);
    prev = c;
  }
  EXPECT_EQ(count_nonzero(d, 1e6), 0);
}

TEST(FilterBank, EmptySignal) {
  const Decomposition d = analyze(Signal{}, 0, 2, FilterBankFamily::nonstationary(3));
  EXPECT_TRUE(d.approx.empty());
  EXPECT_TRUE(synthesize(d).empty());
}

TEST(FilterBank, SynthesizeRejectsChannelMismatch) {
  Decomposition d = analyze(ramp(16, 0, 1), 0, 2, FilterBankFamily::nonstationary(3));
  d.details.pop_back();
  EXPECT_THROW(synthesize(d), dimension_error);
}

TEST(Spike, NonstationaryIsSparser) {
  const SpikeReport r = spike_experiment(default_spike());
  EXPECT_LE(r.nonzero_nonstationary, 32);
  EXPECT_LT(r.nonzero_nonstationary, r.nonzero_stationary);
  EXPECT_LT(max_abs_diff(synthesize(r.nonstationary), default_spike()), 1e-12);
  EXPECT_LT(max_abs_diff(synthesize(r.stationary), default_spike()), 1e-12);
  EXPECT_THROW(spike_experiment(default_spike(), 0), domain_error);
}

class FilterBankProperty : public ::testing::TestWithParam<int> {};

TEST_P(FilterBankProperty, RoundTrip) {
  oracle::Gen g(51000 + GetParam());
  const int n = static_cast<int>(g.integer(2, 5));
  const double mu = g.mu();
  const int m0 = static_cast<int>(g.integer(0, 3));
  const int levels = static_cast<int>(g.integer(1, 4));
  const Signal x = g.signal(static_cast<std::size_t>(g.integer(1, 300)), g.integer(-50, 50));
  const FilterBankFamily fam = g.integer(0, 3) == 0 ? FilterBankFamily::stationary(n)
                                                    : FilterBankFamily::nonstationary(n, mu);
  EXPECT_LT(max_abs_diff(x, synthesize(analyze(x, m0, m0 + levels, fam))), 1e-10 * std::max(1.0, x.max_abs()));
}

INSTANTIATE_TEST_SUITE_P(Random, FilterBankProperty, ::testing::Range(0, 30));
