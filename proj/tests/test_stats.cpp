#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "lpeval/distributions.hpp"
#include "lpeval/error.hpp"
#include "lpeval/stats.hpp"
#include "oracles.hpp"

namespace lpeval {
namespace {

// Reference values frozen from scipy 1.15 (special.betainc, stats.t, stats.f,
// stats.studentized_range).
TEST(Distributions, IncompleteBeta) {
  EXPECT_NEAR(incomplete_beta(0.3, 2, 5), 0.5798250000000003, 1e-13);
  EXPECT_NEAR(incomplete_beta(0.9, 0.5, 0.5), 0.7951672353008665, 1e-13);
  EXPECT_NEAR(incomplete_beta(0.01, 10, 3) / 6.480550000000001e-19, 1.0, 1e-10);
  EXPECT_NEAR(incomplete_beta(0.5, 50, 60), 0.830907293901669, 1e-12);
  EXPECT_NEAR(incomplete_beta(0.7, 1, 1), 0.7, 1e-14);
  EXPECT_EQ(incomplete_beta(0.0, 2, 3), 0.0);
  EXPECT_EQ(incomplete_beta(1.0, 2, 3), 1.0);
}

TEST(Distributions, StudentT) {
  EXPECT_NEAR(t_cdf(1, 10), 0.82955343384897, 1e-12);
  EXPECT_NEAR(t_cdf(-2.5, 3), 0.04385332350403277, 1e-12);
  EXPECT_NEAR(t_cdf(0.3, 1), 0.5927735790777423, 1e-12);
  EXPECT_NEAR(t_cdf(4, 30), 0.9998090771819581, 1e-12);
  EXPECT_NEAR(t_cdf(-1.2, 7.5), 0.133334461396611, 1e-12);
  EXPECT_NEAR(t_two_sided_p(12, 5) / 7.089492517161528e-05, 1.0, 1e-9);
  EXPECT_NEAR(t_two_sided_p(-40, 20) / 1.457469655431069e-20, 1.0, 1e-8);
  EXPECT_NEAR(t_two_sided_p(2.0, 4), 0.1161165235168155, 1e-12);
  EXPECT_THROW(t_cdf(1, 0.5), Error);
}

TEST(Distributions, FisherF) {
  EXPECT_NEAR(f_sf(3, 2, 6), 0.125, 1e-13);
  EXPECT_NEAR(f_cdf(3, 2, 6), 0.875, 1e-13);
  EXPECT_NEAR(f_sf(1.5, 4, 20), 0.23993388171657298, 1e-12);
  EXPECT_NEAR(f_sf(10, 3, 100) / 8.001257542330615e-06, 1.0, 1e-9);
  EXPECT_NEAR(f_sf(0.2, 5, 5), 0.9490302605850709, 1e-12);
}

TEST(Distributions, TSquaredIsF) {
  for (double t : {0.1, 0.7, 1.9, 3.3}) {
    for (double df : {2.0, 9.0, 40.0}) EXPECT_NEAR(t_two_sided_p(t, df), f_sf(t * t, 1, df), 1e-12);
  }
}

TEST(Distributions, StudentizedRange) {
  EXPECT_NEAR(studentized_range_sf(3.77, 3, 12), 0.05018236176055357, 1e-6);
  EXPECT_NEAR(studentized_range_sf(2.5, 2, 10), 0.1075412625188098, 1e-6);
  EXPECT_NEAR(studentized_range_sf(4.0, 4, 20), 0.047068851837372305, 1e-6);
  EXPECT_NEAR(studentized_range_sf(3.0, 3, 60), 0.09403640153910653, 1e-6);
  EXPECT_NEAR(studentized_range_sf(5.5, 5, 8), 0.027866287129082123, 1e-6);
  EXPECT_NEAR(studentized_range_sf(1.0, 3, 30), 0.7611959232709279, 1e-6);
  // The tabulated 5% critical value for k = 3, df = 12.
  EXPECT_NEAR(studentized_range_sf(3.77, 3, 12), 0.05, 5e-4);
}

TEST(Distributions, StudentizedRangeForTwoMeansIsScaledT) {
  // Q for two means equals sqrt(2) |T|.
  for (double q : {1.0, 2.2, 3.5}) {
    for (double df : {5.0, 15.0, 50.0}) {
      EXPECT_NEAR(studentized_range_sf(q, 2, df), t_two_sided_p(q / std::sqrt(2.0), df), 1e-6);
    }
  }
}

TEST(Stars, Thresholds) {
  EXPECT_EQ(stars(0.0005), "***");
  EXPECT_EQ(stars(0.001), "**");
  EXPECT_EQ(stars(0.009), "**");
  EXPECT_EQ(stars(0.01), "*");
  EXPECT_EQ(stars(0.049), "*");
  EXPECT_EQ(stars(0.05), "");
  EXPECT_EQ(format_p(0.0004), "<.001");
  EXPECT_EQ(format_p(0.0213), "0.021");
}

TEST(Stars, MonotoneInP) {
  double prev = 4;
  for (double p = 1e-6; p < 1; p *= 1.3) {
    const double n = static_cast<double>(stars(p).size());
    EXPECT_LE(n, prev);
    prev = n;
  }
}

TEST(PairedT, DifferenceExample) {
  const std::vector<double> x{3, 1, 5, 2, 4}, y{1, 2, 2, 2, 3};
  const auto r = paired_t_test(x, y, "future", "missing");
  EXPECT_NEAR(r.statistic, 1.414213562373095, 1e-12);
  EXPECT_NEAR(r.p_value, 0.23019964108049873, 1e-10);
  EXPECT_EQ(r.winner, kNoWinner);
  EXPECT_EQ(r.stars, "");
  EXPECT_EQ(format_result(r), "0.230 & ---");
}

TEST(PairedT, ConstantDifferences) {
  const std::vector<double> x{2, 3, 4}, y{1, 2, 3};
  const auto r = paired_t_test(x, y, "a", "b");
  EXPECT_TRUE(std::isinf(r.statistic));
  EXPECT_EQ(r.p_value, 0.0);
  EXPECT_EQ(r.winner, "a");
  try {
    paired_t_test(x, x);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerate);
  }
  EXPECT_THROW(paired_t_test(x, std::vector<double>{1, 2}), Error);
  EXPECT_THROW(paired_t_test(std::vector<double>{1}, std::vector<double>{0}), Error);
}

TEST(PairedT, WinnerFollowsSign) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  std::vector<double> a(30), b(30);
  for (int i = 0; i < 30; ++i) {
    b[i] = n01(rng);
    a[i] = b[i] - 1.0 + 0.1 * n01(rng);
  }
  const auto r = paired_t_test(a, b, "A", "B");
  EXPECT_LT(r.statistic, 0);
  EXPECT_EQ(r.winner, "B");
  EXPECT_EQ(r.stars, "***");
  EXPECT_EQ(format_result(r), "<.001*** & B");
}

TEST(TwoSampleT, Example) {
  const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  const auto r = two_sample_t_test(a, b, "homo", "hetero");
  EXPECT_NEAR(r.statistic, -3.6742346141747673, 1e-12);
  EXPECT_NEAR(r.p_value, 0.021311641128756727, 1e-10);
  EXPECT_EQ(r.winner, "hetero");
  EXPECT_EQ(r.stars, "*");
}

TEST(Kendall, Examples) {
  EXPECT_NEAR(kendall_tau(std::vector<double>{1, 2, 3, 4}, std::vector<double>{1, 3, 2, 4}), 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(kendall_tau(std::vector<double>{1, 1, 2, 3, 3, 4}, std::vector<double>{2, 1, 1, 3, 4, 4}),
              0.6923076923076924, 1e-14);
  EXPECT_NEAR(kendall_tau(std::vector<double>{1, 2, 3}, std::vector<double>{3, 2, 1}), -1.0, 1e-14);
  try {
    kendall_tau(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerate);
  }
}

TEST(Kendall, MatchesQuadraticDefinition) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng() % 40;
    const int levels = 2 + static_cast<int>(rng() % 8);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(rng() % levels);
      y[i] = static_cast<double>(rng() % levels);
    }
    if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; }) ||
        std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; })) {
      continue;
    }
    EXPECT_NEAR(kendall_tau(x, y), oracle::kendall_tau_b(x, y), 1e-12);
  }
}

TEST(Anova, Example) {
  const std::vector<std::vector<double>> g{{1, 2, 3}, {2, 3, 4}, {3, 4, 5}};
  const auto r = one_way_anova(g);
  EXPECT_NEAR(r.test.statistic, 3.0, 1e-12);
  EXPECT_NEAR(r.test.p_value, 0.125, 1e-12);
  EXPECT_EQ(r.df_between, 2u);
  EXPECT_EQ(r.df_within, 6u);
  EXPECT_NEAR(r.ss_between, 6.0, 1e-12);
  EXPECT_NEAR(r.ss_within, 6.0, 1e-12);
  const std::vector<std::vector<double>> h{{1, 2, 3}, {2, 3, 4}, {4, 5, 6}};
  EXPECT_NEAR(one_way_anova(h).test.statistic, 7.0, 1e-12);
  EXPECT_NEAR(one_way_anova(h).test.p_value, 0.027, 1e-12);
}

TEST(Anova, TwoGroupsIsSquaredT) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(5 + trial % 7), b(4 + trial % 5);
    for (auto& v : a) v = n01(rng);
    for (auto& v : b) v = n01(rng) + 0.5;
    const std::vector<std::vector<double>> groups{a, b};
    const auto f = one_way_anova(groups);
    const auto t = two_sample_t_test(a, b);
    EXPECT_NEAR(f.test.statistic, t.statistic * t.statistic, 1e-9);
    EXPECT_NEAR(f.test.p_value, t.p_value, 1e-10);
  }
}

TEST(Anova, Degenerate) {
  const std::vector<std::vector<double>> g{{1, 1}, {2, 2}};
  EXPECT_THROW(one_way_anova(g), Error);
  const std::vector<std::vector<double>> single{{1, 2, 3}};
  EXPECT_THROW(one_way_anova(single), Error);
}

TEST(Tukey, SeparatedGroupsAgainstReference) {
  const std::vector<std::vector<double>> g{{1, 2, 3, 2}, {5, 6, 7}, {1.5, 2.5, 1}};
  const std::vector<std::string> names{"local", "global", "learning"};
  const auto r = tukey_hsd(g, names);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].first, 0u);
  EXPECT_EQ(r[0].second, 1u);
  EXPECT_NEAR(r[0].test.p_value, 0.00123498, 2e-5);
  EXPECT_NEAR(r[1].test.p_value, 0.8699053, 2e-5);
  EXPECT_NEAR(r[2].test.p_value, 0.0011409, 2e-5);
  EXPECT_EQ(r[0].test.winner, "global");
  EXPECT_EQ(r[1].test.winner, kNoWinner);
  EXPECT_EQ(r[2].test.winner, "global");
}

TEST(Tukey, UnnamedGroupsUseIndices) {
  const std::vector<std::vector<double>> g{{1, 2, 3}, {10, 11, 12}};
  const auto r = tukey_hsd(g);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].test.winner, "1");
}

}  // namespace
}  // namespace lpeval
