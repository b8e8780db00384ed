#include "lpeval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>

#include "lpeval/distributions.hpp"
#include "lpeval/error.hpp"

namespace lpeval {
namespace {

double mean(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

double sum_sq_dev(std::span<const double> v, double m) {
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s;
}

void check_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) throw Error(ErrorKind::kInvalidArgument, "non-finite sample value");
  }
}

TestResult finish(double statistic, double p, double mean_a, double mean_b, std::string_view a, std::string_view b) {
  TestResult r;
  r.statistic = statistic;
  r.p_value = std::clamp(p, 0.0, 1.0);
  r.stars = stars(r.p_value);
  if (r.p_value < kSignificance && mean_a != mean_b) r.winner = std::string(mean_a > mean_b ? a : b);
  return r;
}

// Number of ordered-pair ties implied by runs of equal values in sorted data.
std::uint64_t tie_pairs(std::span<const double> sorted) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const std::uint64_t t = j - i;
    total += t * (t - 1) / 2;
    i = j;
  }
  return total;
}

std::uint64_t merge_count(std::vector<double>& v, std::vector<double>& buf, std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t swaps = merge_count(v, buf, lo, mid) + merge_count(v, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += mid - i;
      buf[k++] = v[j++];
    } else {
      buf[k++] = v[i++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

}  // namespace

TestResult TestResult::untestable() {
  TestResult r;
  r.statistic = std::numeric_limits<double>::quiet_NaN();
  r.p_value = std::numeric_limits<double>::quiet_NaN();
  r.degenerate = true;
  return r;
}

std::string stars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

std::string format_p(double p) {
  if (p < 0.001) return "<.001";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", p);
  return buf;
}

std::string format_result(const TestResult& r) {
  if (r.degenerate) return std::string(kNoWinner);
  return format_p(r.p_value) + r.stars + " & " + r.winner;
}

TestResult paired_t_test(std::span<const double> x, std::span<const double> y, std::string_view x_name,
                         std::string_view y_name) {
  if (x.size() != y.size()) throw Error(ErrorKind::kInvalidArgument, "paired samples differ in length");
  if (x.size() < 2) throw Error(ErrorKind::kInvalidArgument, "paired t-test needs n >= 2");
  check_finite(x);
  check_finite(y);
  const std::size_t n = x.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = x[i] - y[i];
  const double md = mean(d);
  const double ss = sum_sq_dev(d, md);
  if (ss == 0.0 && md == 0.0) throw Error(ErrorKind::kDegenerate, "all paired differences are zero");
  const double nn = static_cast<double>(n);
  double t;
  if (ss == 0.0) {
    t = md > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  } else {
    t = md / (std::sqrt(ss / (nn - 1.0)) / std::sqrt(nn));
  }
  return finish(t, t_two_sided_p(t, nn - 1.0), mean(x), mean(y), x_name, y_name);
}

TestResult two_sample_t_test(std::span<const double> a, std::span<const double> b, std::string_view a_name,
                             std::string_view b_name) {
  if (a.size() < 2 || b.size() < 2) throw Error(ErrorKind::kInvalidArgument, "two-sample t-test needs >= 2 per group");
  check_finite(a);
  check_finite(b);
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double ma = mean(a), mb = mean(b);
  const double df = na + nb - 2.0;
  const double pooled = (sum_sq_dev(a, ma) + sum_sq_dev(b, mb)) / df;
  double t;
  if (pooled == 0.0) {
    if (ma == mb) throw Error(ErrorKind::kDegenerate, "both groups constant with equal means");
    t = ma > mb ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  } else {
    t = (ma - mb) / std::sqrt(pooled * (1.0 / na + 1.0 / nb));
  }
  return finish(t, t_two_sided_p(t, df), ma, mb, a_name, b_name);
}

double kendall_tau(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::kInvalidArgument, "tau inputs differ in length");
  if (x.size() < 2) throw Error(ErrorKind::kInvalidArgument, "tau needs n >= 2");
  check_finite(x);
  check_finite(y);
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] != x[b] ? x[a] < x[b] : y[a] < y[b];
  });
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = x[order[i]];
    ys[i] = y[order[i]];
  }
  const std::uint64_t n1 = tie_pairs(xs);
  // Joint ties: runs equal in both coordinates.
  std::uint64_t n3 = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && xs[j] == xs[i] && ys[j] == ys[i]) ++j;
    const std::uint64_t t = j - i;
    n3 += t * (t - 1) / 2;
    i = j;
  }
  std::vector<double> buf(n);
  const std::uint64_t swaps = merge_count(ys, buf, 0, n);
  const std::uint64_t n2 = tie_pairs(ys);
  const std::uint64_t n0 = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (n1 == n0 || n2 == n0) throw Error(ErrorKind::kDegenerate, "tau undefined for a constant vector");
  const double numer = static_cast<double>(n0) - static_cast<double>(n1) - static_cast<double>(n2) +
                       static_cast<double>(n3) - 2.0 * static_cast<double>(swaps);
  const double denom = std::sqrt(static_cast<double>(n0 - n1)) * std::sqrt(static_cast<double>(n0 - n2));
  return std::clamp(numer / denom, -1.0, 1.0);
}

AnovaResult one_way_anova(std::span<const std::vector<double>> groups) {
  if (groups.size() < 2) throw Error(ErrorKind::kInvalidArgument, "ANOVA needs >= 2 groups");
  std::size_t total_n = 0;
  double grand = 0.0;
  for (const auto& g : groups) {
    if (g.size() < 2) throw Error(ErrorKind::kInvalidArgument, "ANOVA needs >= 2 values per group");
    check_finite(g);
    total_n += g.size();
    grand += std::accumulate(g.begin(), g.end(), 0.0);
  }
  grand /= static_cast<double>(total_n);
  AnovaResult r;
  for (const auto& g : groups) {
    const double m = mean(g);
    r.ss_between += static_cast<double>(g.size()) * (m - grand) * (m - grand);
    r.ss_within += sum_sq_dev(g, m);
  }
  r.df_between = groups.size() - 1;
  r.df_within = total_n - groups.size();
  r.ms_within = r.ss_within / static_cast<double>(r.df_within);
  if (r.ms_within == 0.0) throw Error(ErrorKind::kDegenerate, "zero within-group variance");
  const double f = (r.ss_between / static_cast<double>(r.df_between)) / r.ms_within;
  r.test.statistic = f;
  r.test.p_value = f_sf(f, static_cast<double>(r.df_between), static_cast<double>(r.df_within));
  r.test.stars = stars(r.test.p_value);
  return r;
}

std::vector<PairwiseResult> tukey_hsd(std::span<const std::vector<double>> groups, std::span<const std::string> names) {
  if (!names.empty() && names.size() != groups.size()) {
    throw Error(ErrorKind::kInvalidArgument, "group names do not match group count");
  }
  const AnovaResult anova = one_way_anova(groups);
  const int k = static_cast<int>(groups.size());
  const double df = static_cast<double>(anova.df_within);
  std::vector<double> means(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) means[i] = mean(groups[i]);
  auto name = [&](std::size_t i) { return names.empty() ? std::to_string(i) : names[i]; };
  std::vector<PairwiseResult> out;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      const double se = std::sqrt(anova.ms_within / 2.0 *
                                  (1.0 / static_cast<double>(groups[i].size()) +
                                   1.0 / static_cast<double>(groups[j].size())));
      const double q = std::fabs(means[i] - means[j]) / se;
      out.push_back({i, j, finish(q, studentized_range_sf(q, k, df), means[i], means[j], name(i), name(j))});
    }
  }
  return out;
}

}  // namespace lpeval
