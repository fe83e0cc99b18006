#pragma once

#include <span>

namespace hexmc {

/// Regularized lower incomplete gamma function P(a, x) = gamma(a, x) / Gamma(a).
/// Series expansion for x < a + 1, Lentz continued fraction otherwise.
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma function Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// Poisson CDF P(X <= theta - 1) for X ~ Pois(lambda), i.e. the regularized
/// Gamma function Q(theta, lambda) at integer first argument. Returns 0 for
/// theta == 0 (empty sum). Evaluated by direct log-space summation, which is
/// exact to rounding for the small integer theta used here.
double poisson_cdf_below(int theta, double lambda);

/// log of the Poisson pmf at count k with mean lambda. lambda == 0 gives
/// 0 for k == 0 and -inf otherwise.
double poisson_log_pmf(long long k, double lambda);

/// log(sum(exp(v))) with the usual max-shift stabilization.
/// Empty input and all -inf inputs give -inf.
double log_sum_exp(std::span<const double> v);

} // namespace hexmc
