#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lpeval {

inline constexpr double kSignificance = 0.05;
inline constexpr std::string_view kNoWinner = "---";

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::string winner{kNoWinner};
  std::string stars;
  /// Set when the test could not be carried out; renders as "---".
  bool degenerate = false;

  static TestResult untestable();
};

/// "***" p < .001, "**" p < .01, "*" p < .05, else "".
std::string stars(double p);
/// "<.001" below one in a thousand, otherwise three decimals.
std::string format_p(double p);
/// "<.001*** & future" style, or "---" for untestable results.
std::string format_result(const TestResult& r);

/// Paired t on d = x - y, two-sided, df = n - 1. All-zero differences throw
/// kDegenerate; constant nonzero differences give an infinite statistic.
TestResult paired_t_test(std::span<const double> x, std::span<const double> y, std::string_view x_name = "x",
                         std::string_view y_name = "y");

/// Pooled-variance Student's t, df = na + nb - 2.
TestResult two_sample_t_test(std::span<const double> a, std::span<const double> b, std::string_view a_name = "a",
                             std::string_view b_name = "b");

/// Tie-corrected tau-b via merge-sort discordance counting, O(n log n).
/// Throws kDegenerate when either vector is constant.
double kendall_tau(std::span<const double> x, std::span<const double> y);

struct AnovaResult {
  TestResult test;  // statistic = F
  double ss_between = 0.0;
  double ss_within = 0.0;
  std::size_t df_between = 0;
  std::size_t df_within = 0;
  double ms_within = 0.0;
};

/// Throws kDegenerate when the within-group mean square is zero.
AnovaResult one_way_anova(std::span<const std::vector<double>> groups);

struct PairwiseResult {
  std::size_t first = 0;
  std::size_t second = 0;
  TestResult test;  // statistic = studentized range q
};

/// Tukey-Kramer comparisons for every pair i < j; winners named from
/// `names` (group indices when empty).
std::vector<PairwiseResult> tukey_hsd(std::span<const std::vector<double>> groups,
                                      std::span<const std::string> names = {});

}  // namespace lpeval
