#include "lpeval/distributions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "lpeval/error.hpp"

namespace lpeval {
namespace {

constexpr double kPi = 3.14159265358979323846;

void require_df(double df, const char* name) {
  if (!(df >= 1.0) || !std::isfinite(df)) {
    throw Error(ErrorKind::kInvalidArgument, std::string(name) + " must be a finite value >= 1");
  }
}

double beta_continued_fraction(double x, double a, double b) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) return h;
  }
  throw Error(ErrorKind::kNonConvergence, "incomplete beta continued fraction");
}

// Gauss-Legendre rule on [-1, 1], nodes by Newton iteration.
template <int N>
struct GaussLegendre {
  std::array<double, N> x{};
  std::array<double, N> w{};

  GaussLegendre() {
    for (int i = 0; i < N; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (N + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 1; j <= N; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
        }
        dp = N * (z * p0 - p1) / (z * z - 1.0);
        const double step = p0 / dp;
        z -= step;
        if (std::fabs(step) < 1e-15) break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

const GaussLegendre<16>& rule16() {
  static const GaussLegendre<16> rule;
  return rule;
}

// Composite rule: `panels` equal panels over [lo, hi].
template <typename F>
double integrate(F&& f, double lo, double hi, int panels) {
  const auto& r = rule16();
  const double width = (hi - lo) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * width;
    double part = 0.0;
    for (int i = 0; i < 16; ++i) part += r.w[i] * f(mid + 0.5 * width * r.x[i]);
    total += part * 0.5 * width;
  }
  return total;
}

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi); }

// P(range of k iid standard normals < w).
double range_cdf(double w, int k) {
  if (w <= 0.0) return 0.0;
  auto f = [&](double z) {
    const double inner = normal_cdf(z + w) - normal_cdf(z);
    return normal_pdf(z) * std::pow(inner, k - 1);
  };
  return std::min(1.0, k * integrate(f, -9.0, 9.0, 48));
}

}  // namespace

double incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorKind::kInvalidArgument, "incomplete beta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::kInvalidArgument, "incomplete beta needs x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(x, a, b) / a;
  return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double t_two_sided_p(double t, double df) {
  require_df(df, "df");
  if (std::isnan(t)) throw Error(ErrorKind::kInvalidArgument, "t is NaN");
  if (std::isinf(t)) return 0.0;
  return incomplete_beta(df / (df + t * t), 0.5 * df, 0.5);
}

double t_cdf(double x, double df) {
  require_df(df, "df");
  if (std::isnan(x)) throw Error(ErrorKind::kInvalidArgument, "x is NaN");
  if (x == 0.0) return 0.5;
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  const double tail = 0.5 * incomplete_beta(df / (df + x * x), 0.5 * df, 0.5);
  return x > 0 ? 1.0 - tail : tail;
}

double f_cdf(double x, double df1, double df2) {
  require_df(df1, "df1");
  require_df(df2, "df2");
  if (std::isnan(x)) throw Error(ErrorKind::kInvalidArgument, "x is NaN");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return incomplete_beta(df1 * x / (df1 * x + df2), 0.5 * df1, 0.5 * df2);
}

double f_sf(double x, double df1, double df2) {
  require_df(df1, "df1");
  require_df(df2, "df2");
  if (std::isnan(x)) throw Error(ErrorKind::kInvalidArgument, "x is NaN");
  if (x <= 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return incomplete_beta(df2 / (df2 + df1 * x), 0.5 * df2, 0.5 * df1);
}

double studentized_range_sf(double q, int k, double df) {
  if (k < 2) throw Error(ErrorKind::kInvalidArgument, "studentized range needs k >= 2");
  require_df(df, "df");
  if (std::isnan(q)) throw Error(ErrorKind::kInvalidArgument, "q is NaN");
  if (q <= 0.0) return 1.0;
  if (std::isinf(q)) return 0.0;

  // s = sqrt(chi2_df / df) has density c * s^(df-1) * exp(-df s^2 / 2).
  const double log_c = 0.5 * df * std::log(df) - std::lgamma(0.5 * df) - (0.5 * df - 1.0) * std::log(2.0);
  auto density = [&](double s) {
    if (s <= 0.0) return 0.0;
    return std::exp(log_c + (df - 1.0) * std::log(s) - 0.5 * df * s * s);
  };
  const double spread = 1.0 / std::sqrt(2.0 * df);
  const double lo = std::max(0.0, 1.0 - 14.0 * spread);
  const double hi = 1.0 + 14.0 * spread + (df < 5 ? 10.0 : 0.0);
  const double cdf = integrate([&](double s) { return density(s) * range_cdf(q * s, k); }, lo, hi, 64);
  return std::clamp(1.0 - cdf, 0.0, 1.0);
}

}  // namespace lpeval
