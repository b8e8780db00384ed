#pragma once

namespace lpeval {

/// Regularized incomplete beta I_x(a, b), continued fraction (modified Lentz).
double incomplete_beta(double x, double a, double b);

double normal_cdf(double x);

/// Student t CDF; df may be fractional but must be >= 1.
double t_cdf(double x, double df);
/// P(|T| >= |t|), computed without cancellation for large |t|.
double t_two_sided_p(double t, double df);

double f_cdf(double x, double df1, double df2);
/// Upper tail P(F >= x).
double f_sf(double x, double df1, double df2);

/// P(Q > q) for the studentized range of k means with df error degrees of
/// freedom. Double integral over the chi scale and the range of k normals,
/// composite Gauss-Legendre in both dimensions.
double studentized_range_sf(double q, int k, double df);

}  // namespace lpeval
