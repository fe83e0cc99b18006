#include "hexmc/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hexmc/errors.hpp"

namespace hexmc {

namespace {

constexpr int kMaxIter = 500;
constexpr double kEps = 1e-15;
constexpr double kFpMin = std::numeric_limits<double>::min() / kEps;

// Series representation of P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x)
{
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw NumericalError("gamma_p: series did not converge");
}

// Modified Lentz continued fraction for Q(a, x), valid for x >= a + 1.
double gamma_q_cf(double a, double x)
{
    double b = x + 1.0 - a;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = b + an / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps)
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw NumericalError("gamma_q: continued fraction did not converge");
}

} // namespace

double gamma_p(double a, double x)
{
    if (a <= 0.0 || x < 0.0)
        throw std::invalid_argument("gamma_p: requires a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x)
{
    if (a <= 0.0 || x < 0.0)
        throw std::invalid_argument("gamma_q: requires a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double poisson_cdf_below(int theta, double lambda)
{
    if (theta < 0 || lambda < 0.0)
        throw std::invalid_argument("poisson_cdf_below: requires theta >= 0, lambda >= 0");
    if (theta == 0) return 0.0;
    if (lambda == 0.0) return 1.0;

    // log-space accumulation; terms are log Pois(lambda)(k), k = 0..theta-1
    const double log_lambda = std::log(lambda);
    double max_log = -std::numeric_limits<double>::infinity();
    double lg = 0.0; // lgamma(k+1)
    for (int k = 0; k < theta; ++k) {
        if (k > 0) lg += std::log(static_cast<double>(k));
        max_log = std::max(max_log, -lambda + k * log_lambda - lg);
    }
    double acc = 0.0;
    lg = 0.0;
    for (int k = 0; k < theta; ++k) {
        if (k > 0) lg += std::log(static_cast<double>(k));
        acc += std::exp(-lambda + k * log_lambda - lg - max_log);
    }
    const double result = std::exp(max_log) * acc;
    return std::min(result, 1.0);
}

double poisson_log_pmf(long long k, double lambda)
{
    if (k < 0 || lambda < 0.0)
        throw std::invalid_argument("poisson_log_pmf: requires k >= 0, lambda >= 0");
    if (lambda == 0.0)
        return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    return -lambda + static_cast<double>(k) * std::log(lambda)
         - std::lgamma(static_cast<double>(k) + 1.0);
}

double log_sum_exp(std::span<const double> v)
{
    double m = -std::numeric_limits<double>::infinity();
    for (double x : v) m = std::max(m, x);
    if (!std::isfinite(m)) return m;
    double acc = 0.0;
    for (double x : v) acc += std::exp(x - m);
    return m + std::log(acc);
}

} // namespace hexmc
