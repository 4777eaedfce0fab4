#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include <uavsim/random.hpp>
#include <uavsim/stats.hpp>

using namespace uavsim;

TEST(Seeds, DerivationIsDeterministicAndOrderSensitive) {
  EXPECT_EQ(derive_seed({1, 2, 3}), derive_seed({1, 2, 3}));
  EXPECT_NE(derive_seed({1, 2, 3}), derive_seed({1, 3, 2}));
  EXPECT_NE(derive_seed({1, 2}), derive_seed({1, 2, 0}));
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.uniform01(), b.uniform01());
}

TEST(Rng, UniformStaysInHalfOpenRange) {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform(2.0, 5.0);
    ASSERT_GE(u, 2.0);
    ASSERT_LT(u, 5.0);
  }
}

TEST(Rng, BelowCoversRange) {
  Rng rng(5);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) ++hits[rng.below(7)];
  for (int h : hits) EXPECT_NEAR(h, 1000, 150);
}

// Poisson mean and variance both equal the intensity; check both branches.
class PoissonMoments : public ::testing::TestWithParam<double> {};

TEST_P(PoissonMoments, MeanAndVarianceMatchIntensity) {
  const double mean = GetParam();
  Rng rng(17);
  const int n = 40000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double k = static_cast<double>(rng.poisson(mean));
    sum += k;
    sum_sq += k * k;
  }
  const double m = sum / n;
  const double var = sum_sq / n - m * m;
  EXPECT_NEAR(m, mean, 5.0 * std::sqrt(mean / n));
  EXPECT_NEAR(var / mean, 1.0, 0.05);
}

INSTANTIATE_TEST_SUITE_P(Intensities, PoissonMoments, ::testing::Values(0.7, 3.0, 12.0, 100.0, 500.0));

TEST(Rng, PoissonOfZeroIsZero) {
  Rng rng(1);
  EXPECT_EQ(rng.poisson(0.0), 0u);
}

TEST(Summarize, ConstantSample) {
  const std::vector<double> x{5, 5, 5};
  const auto s = summarize(x);
  EXPECT_EQ(s.mean, 5.0);
  EXPECT_EQ(s.std_dev, 0.0);
  EXPECT_EQ(s.ci95_low, 5.0);
  EXPECT_EQ(s.ci95_high, 5.0);
  EXPECT_EQ(s.n, 3u);
}

TEST(Summarize, TwoPoints) {
  const std::vector<double> x{0, 10};
  const auto s = summarize(x);
  EXPECT_DOUBLE_EQ(s.mean, 5.0);
  EXPECT_DOUBLE_EQ(s.std_dev, std::sqrt(50.0));
  EXPECT_LE(s.ci95_low, s.mean);
  EXPECT_GE(s.ci95_high, s.mean);
}

TEST(Summarize, SingleSampleHasZeroWidth) {
  const std::vector<double> x{3.5};
  const auto s = summarize(x);
  EXPECT_EQ(s.std_dev, 0.0);
  EXPECT_EQ(s.half_width(), 0.0);
}

TEST(Summarize, EmptyRejected) {
  EXPECT_THROW(summarize(std::vector<double>{}), InvalidParameter);
}

// Standard-error law: a 100x larger sample gives a ~10x narrower interval.
TEST(Summarize, HalfWidthShrinksAsInverseRootN) {
  Rng rng(99);
  auto noise = [&](std::size_t n) {
    std::vector<double> x(n);
    for (auto& v : x) v = std::sqrt(12.0) * (rng.uniform01() - 0.5);  // unit variance
    return summarize(x).half_width();
  };
  const double wide = noise(400);
  const double narrow = noise(40000);
  EXPECT_NEAR(wide / narrow, 10.0, 1.0);
  EXPECT_NEAR(narrow, kZ95 / std::sqrt(40000.0), 0.02 * kZ95 / std::sqrt(40000.0) + 1e-4);
}

TEST(Significance, DetectsSeparatedMeans) {
  const StatSummary a{1.0, 1.0, 0, 0, 10000};
  const StatSummary b{1.1, 1.0, 0, 0, 10000};
  const StatSummary c{1.01, 1.0, 0, 0, 10000};
  EXPECT_TRUE(significantly_below(a, b));
  EXPECT_FALSE(significantly_below(a, c));
  EXPECT_FALSE(significantly_below(b, a));
}

TEST(KolmogorovSmirnov, KnownStatistics) {
  auto uniform_cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
  EXPECT_DOUBLE_EQ(ks_statistic(std::vector<double>{0.25}, uniform_cdf), 0.75);
  EXPECT_DOUBLE_EQ(ks_statistic(std::vector<double>{0.1, 0.15, 0.2, 0.8}, uniform_cdf), 0.55);
  EXPECT_DOUBLE_EQ(ks_statistic(std::vector<double>{1.0}, uniform_cdf), 1.0);
}

TEST(KolmogorovSmirnov, RayleighSamplerMatchesItsCdf) {
  Rng rng(8);
  const double sigma = 23.9;
  std::vector<double> x(50000);
  for (auto& v : x) v = rng.rayleigh(sigma);
  const double d = ks_statistic(x, [&](double r) { return 1.0 - std::exp(-r * r / (2 * sigma * sigma)); });
  EXPECT_LT(d, 1.63 / std::sqrt(50000.0));  // 99% critical value
}
