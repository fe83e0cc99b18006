#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hexmc/channel.hpp"
#include "hexmc/iui.hpp"

namespace hexmc {

struct ErrorProbs {
    double p; ///< false alarm, P(decide 1 | s = 0)
    double q; ///< miss, P(decide 0 | s = 1)

    [[nodiscard]] double ber() const { return 0.5 * (p + q); }
};

/// Threshold-detector error probabilities averaged over the IUI states:
///   q = E_s[Q(Theta, c_bar_s + mu_s)],  p = E_s[1 - Q(Theta, mu_s)]
/// with Q the Poisson-CDF form of the regularized Gamma function.
/// Theta == 0 gives p = 1, q = 0 (the detector always decides 1).
ErrorProbs error_probabilities(int theta, double c_bar_s,
                               std::span<const WeightedState> states);

/// Mutual information of the binary channel with equiprobable inputs,
/// I(s; s_hat) = H(s_hat) - H(s_hat | s), in bits. x log2 x is taken as 0
/// at x = 0.
double user_rate(double p, double q);

/// Transmission links per unit area, 1 / A_hex = 2 / (sqrt(3) d_hex^2).
double spatial_rate(double d_hex);

/// Area rate efficiency, user_rate * spatial_rate [bit/m^2].
double are(double user_rate, double spatial_rate);

struct LinkMetrics {
    int theta = 0;
    double p = 0.0;
    double q = 0.0;
    double ber = 0.0;
    double user_rate = 0.0;
    double spatial_rate = 0.0;
    double are = 0.0;
    double c_bar_s = 0.0;
    double t_max = 0.0;
    bool exact_states = true; ///< false when the IUI expectation was sampled
};

struct LinkOptions {
    int n_rings = 3;
    int k_max = 20;
    int theta_max = 200;
    std::uint64_t enum_cap = 10'000'000;
    int state_samples = 100'000;  ///< fallback sample count past enum_cap
    std::uint64_t seed = 1;
    double t_sim = 15.0;
    double coarse_dt = 1e-3;
};

/// Geometry- and channel-dependent part of a link evaluation, independent of
/// the molecule budget: sampling time, peak CIR, and per-interferer CIR
/// values at the sampling time (per released molecule).
struct LinkChannel {
    double d_hex = 0.0;
    double t_max = 0.0;
    double cir_peak = 0.0;
    std::vector<ClassMean> cir_classes; ///< per-molecule CIR by distance class
    int n_interferers = 0;
};

LinkChannel compute_link_channel(double d_hex, const LinkOptions& opts);

/// Full pipeline for one (d_hex, N) point: threshold, error probabilities,
/// rates, ARE. a_rx is derived as d_hex / 2.
LinkMetrics evaluate_link_metrics(const LinkChannel& chan, int n_mol,
                                  const LinkOptions& opts);
LinkMetrics evaluate_link(double d_hex, int n_mol, const LinkOptions& opts);

struct SweepPoint {
    double d_hex;
    LinkMetrics metrics;
};

/// Log-spaced sweep over [lo, hi].
std::vector<double> log_spaced(double lo, double hi, int n);

std::vector<SweepPoint> sweep_links(std::span<const double> d_hex_grid,
                                    int n_mol, const LinkOptions& opts);

struct OptResult {
    double d_hex_opt;
    double are_max;
    bool interior; ///< false when the maximizer sits on a grid boundary
};

/// Grid maximizer of the ARE over a log-spaced d_hex scan.
OptResult optimize_d_hex(double lo, double hi, int grid_points, int n_mol,
                         const LinkOptions& opts);

/// Count interior local maxima of a curve after merging plateaus whose
/// values differ by at most rel_eps relatively.
int count_interior_maxima(std::span<const double> values, double rel_eps);

} // namespace hexmc
