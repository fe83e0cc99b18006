#pragma once

#include <span>

#include "hexmc/iui.hpp"

namespace hexmc {

/// ML decision on an observed count: decide 1 iff
///   E_s[Pois(c_bar_s + mu_s)(r)] >= E_s[Pois(mu_s)(r)],
/// with the expectation over the weighted IUI states. Poisson masses are
/// evaluated in log-space with log-sum-exp aggregation.
/// Throws NumericalError if both hypotheses have zero support at r.
int ml_decide(long long r, double c_bar_s, std::span<const WeightedState> states);

/// Least Theta in [0, theta_max] with
///   sum_s w_s (c_bar_s + mu_s)^Theta e^{-(c_bar_s + mu_s)}
///     >= sum_s w_s mu_s^Theta e^{-mu_s},
/// using 0^0 = 1 for the all-inactive state. Terms are evaluated in
/// log-space. Throws NumericalError("threshold out of range") if no Theta
/// up to theta_max satisfies the inequality.
int compute_threshold(double c_bar_s, std::span<const WeightedState> states,
                      int theta_max = 200);

/// Threshold detector: 1 iff r >= theta.
int threshold_decide(long long r, int theta);

} // namespace hexmc
