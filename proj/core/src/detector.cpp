#include "hexmc/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hexmc/errors.hpp"
#include "hexmc/special.hpp"

namespace hexmc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log of sum_s w_s lambda_s^theta e^{-lambda_s} with lambda_s = offset + mu_s
// and the convention 0^0 = 1.
double log_threshold_sum(int theta, double offset,
                         std::span<const WeightedState> states)
{
    std::vector<double> terms;
    terms.reserve(states.size());
    for (const auto& st : states) {
        const double lambda = offset + st.mean;
        double log_term;
        if (lambda == 0.0)
            log_term = theta == 0 ? 0.0 : kNegInf;
        else
            log_term = theta * std::log(lambda) - lambda;
        terms.push_back(log_term + std::log(st.weight));
    }
    return log_sum_exp(terms);
}

// log E_s[Pois(offset + mu_s)(r)]
double log_mixture_pmf(long long r, double offset,
                       std::span<const WeightedState> states)
{
    std::vector<double> terms;
    terms.reserve(states.size());
    for (const auto& st : states)
        terms.push_back(poisson_log_pmf(r, offset + st.mean) + std::log(st.weight));
    return log_sum_exp(terms);
}

} // namespace

int ml_decide(long long r, double c_bar_s, std::span<const WeightedState> states)
{
    if (r < 0)
        throw std::invalid_argument("ml_decide: r must be >= 0");
    if (c_bar_s < 0.0)
        throw std::invalid_argument("ml_decide: c_bar_s must be >= 0");
    if (states.empty())
        throw std::invalid_argument("ml_decide: state list must not be empty");

    const double log_h1 = log_mixture_pmf(r, c_bar_s, states);
    const double log_h0 = log_mixture_pmf(r, 0.0, states);
    if (log_h1 == kNegInf && log_h0 == kNegInf)
        throw NumericalError("ml_decide: observed count has zero support under "
                             "both hypotheses");
    return log_h1 >= log_h0 ? 1 : 0;
}

int compute_threshold(double c_bar_s, std::span<const WeightedState> states,
                      int theta_max)
{
    if (c_bar_s < 0.0)
        throw std::invalid_argument("compute_threshold: c_bar_s must be >= 0");
    if (theta_max < 1)
        throw std::invalid_argument("compute_threshold: theta_max must be >= 1");
    if (states.empty())
        throw std::invalid_argument("compute_threshold: state list must not be empty");

    for (int theta = 0; theta <= theta_max; ++theta) {
        const double lhs = log_threshold_sum(theta, c_bar_s, states);
        const double rhs = log_threshold_sum(theta, 0.0, states);
        if (lhs >= rhs)
            return theta;
    }
    throw NumericalError("compute_threshold: threshold out of range (theta_max = "
                         + std::to_string(theta_max) + ")");
}

int threshold_decide(long long r, int theta)
{
    if (r < 0 || theta < 0)
        throw std::invalid_argument("threshold_decide: r and theta must be >= 0");
    return r >= theta ? 1 : 0;
}

} // namespace hexmc
