#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include "lpeval/error.hpp"
#include "lpeval/metrics.hpp"
#include "oracles.hpp"

namespace lpeval {
namespace {

struct Sample {
  std::vector<double> scores;
  std::vector<int> labels;
};

// Coarse integer scores so that ties are common.
Sample random_sample(std::mt19937_64& rng, std::size_t n, int levels) {
  Sample out;
  std::uniform_int_distribution<int> level(0, levels - 1);
  do {
    out.scores.clear();
    out.labels.clear();
    for (std::size_t i = 0; i < n; ++i) {
      out.labels.push_back(static_cast<int>(rng() % 3 == 0));
      out.scores.push_back(level(rng) + 0.5 * out.labels.back() * static_cast<double>(rng() % 2));
    }
  } while (std::count(out.labels.begin(), out.labels.end(), 1) == 0 ||
           std::count(out.labels.begin(), out.labels.end(), 0) == 0);
  return out;
}

TEST(Metrics, WorkedExample) {
  const std::vector<double> s{0.9, 0.8, 0.7, 0.6};
  const std::vector<int> y{1, 0, 1, 0};
  EXPECT_DOUBLE_EQ(auroc(s, y), 0.75);
  EXPECT_NEAR(average_precision(s, y), 5.0 / 6.0, 1e-15);
  EXPECT_DOUBLE_EQ(precision_at_k(s, y, 2), 0.5);
  EXPECT_DOUBLE_EQ(precision_at_k(s, y, 1), 1.0);
  const auto rec = evaluate_cell(s, y, Skew::kBalanced);
  EXPECT_EQ(rec.positives, 2u);
  EXPECT_EQ(rec.total, 4u);
  EXPECT_DOUBLE_EQ(rec.pr_at_p, 0.5);
  EXPECT_DOUBLE_EQ(rec.pr_at_p_half, 1.0);
  EXPECT_EQ(rec.skew, Skew::kBalanced);
}

TEST(Metrics, PrCurveShape) {
  const std::vector<double> s{3, 2, 2, 1};
  const std::vector<int> y{1, 1, 0, 0};
  const auto c = pr_curve(s, y);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_DOUBLE_EQ(c[0].recall, 0.0);
  EXPECT_DOUBLE_EQ(c[0].precision, 1.0);
  EXPECT_DOUBLE_EQ(c[1].recall, 0.5);
  EXPECT_DOUBLE_EQ(c[2].recall, 1.0);
  EXPECT_NEAR(c[2].precision, 2.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(c[3].precision, 0.5);
}

TEST(Metrics, AgreeWithBruteForceOracles) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto smp = random_sample(rng, 5 + rng() % 60, 2 + static_cast<int>(rng() % 12));
    EXPECT_NEAR(auroc(smp.scores, smp.labels), oracle::auroc(smp.scores, smp.labels), 1e-12);
    EXPECT_NEAR(average_precision(smp.scores, smp.labels), oracle::average_precision(smp.scores, smp.labels), 1e-12);
  }
}

TEST(Metrics, PrecisionAtKIsExpectationOverTieOrders) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const auto smp = random_sample(rng, 4 + rng() % 4, 3);
    for (std::size_t k = 1; k <= smp.scores.size(); ++k) {
      EXPECT_NEAR(precision_at_k(smp.scores, smp.labels, k), oracle::precision_at_k(smp.scores, smp.labels, k), 1e-12);
    }
  }
}

TEST(Metrics, InvariantUnderMonotoneTransform) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto smp = random_sample(rng, 40, 8);
    std::vector<double> t(smp.scores.size());
    std::transform(smp.scores.begin(), smp.scores.end(), t.begin(), [](double x) { return std::exp(0.3 * x) - 7.0; });
    const auto a = evaluate_cell(smp.scores, smp.labels);
    const auto b = evaluate_cell(t, smp.labels);
    EXPECT_DOUBLE_EQ(a.auroc, b.auroc);
    EXPECT_DOUBLE_EQ(a.aupr, b.aupr);
    EXPECT_DOUBLE_EQ(a.pr_at_p, b.pr_at_p);
    EXPECT_DOUBLE_EQ(a.pr_at_p_half, b.pr_at_p_half);
  }
}

TEST(Metrics, ReversedScoresComplementAuroc) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const auto smp = random_sample(rng, 30, 5);
    std::vector<double> neg(smp.scores.size());
    std::transform(smp.scores.begin(), smp.scores.end(), neg.begin(), [](double x) { return -x; });
    EXPECT_NEAR(auroc(neg, smp.labels), 1.0 - auroc(smp.scores, smp.labels), 1e-12);
  }
}

TEST(Metrics, AllTiedScores) {
  const std::vector<double> s(11, 0.3);
  std::vector<int> y(11, 0);
  y[4] = 1;
  EXPECT_DOUBLE_EQ(auroc(s, y), 0.5);
  EXPECT_NEAR(average_precision(s, y), 1.0 / 11.0, 1e-15);
  EXPECT_NEAR(precision_at_k(s, y, 1), 1.0 / 11.0, 1e-15);
}

TEST(Metrics, OrderIndependent) {
  std::mt19937_64 rng(7);
  auto smp = random_sample(rng, 50, 6);
  const auto a = evaluate_cell(smp.scores, smp.labels);
  std::vector<std::size_t> perm(smp.scores.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Sample shuffled;
  for (auto i : perm) {
    shuffled.scores.push_back(smp.scores[i]);
    shuffled.labels.push_back(smp.labels[i]);
  }
  const auto b = evaluate_cell(shuffled.scores, shuffled.labels);
  EXPECT_DOUBLE_EQ(a.auroc, b.auroc);
  EXPECT_DOUBLE_EQ(a.aupr, b.aupr);
  EXPECT_DOUBLE_EQ(a.pr_at_p, b.pr_at_p);
}

TEST(Metrics, RandomScoresApproachPrevalence) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u;
  std::vector<double> s(22000);
  std::vector<int> y(22000);
  for (std::size_t i = 0; i < s.size(); ++i) {
    s[i] = u(rng);
    y[i] = i % 11 == 0;
  }
  EXPECT_NEAR(auroc(s, y), 0.5, 0.02);
  EXPECT_NEAR(average_precision(s, y), 1.0 / 11.0, 0.01);
}

TEST(Metrics, Errors) {
  const std::vector<double> s{1, 2, 3};
  try {
    auroc(s, std::vector<int>{1, 1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSingleClass);
  }
  EXPECT_THROW(average_precision(s, std::vector<int>{0, 0, 0}), Error);
  EXPECT_THROW(auroc(s, std::vector<int>{1, 0}), Error);
  EXPECT_THROW(auroc(std::vector<double>{1, NAN, 2}, std::vector<int>{1, 0, 0}), Error);
  try {
    precision_at_k(s, std::vector<int>{1, 0, 0}, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kOutOfRange);
  }
  EXPECT_THROW(precision_at_k(s, std::vector<int>{1, 0, 0}, 0), Error);
}

TEST(Metrics, CurveCsvAndSvg) {
  const std::vector<double> s{0.9, 0.8, 0.7, 0.6};
  const std::vector<int> y{1, 0, 1, 0};
  const auto curve = pr_curve(s, y);
  const auto path = std::filesystem::temp_directory_path() / "lpeval_curve_test.csv";
  write_pr_curve_csv(path, curve);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "recall,precision");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) rows += !line.empty();
  EXPECT_EQ(rows, curve.size());
  std::filesystem::remove(path);
  const std::vector<NamedCurve> curves{{"CN", curve}, {"Katz", curve}};
  const auto svg = render_pr_svg(curves, "demo");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("Katz"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

}  // namespace
}  // namespace lpeval
