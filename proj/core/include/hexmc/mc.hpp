#pragma once

#include <cstdint>
#include <vector>

#include "hexmc/metrics.hpp"

namespace hexmc {

struct McConfig {
    int n_realizations = 100'000;
    int n_rings = 20;        ///< 1260 interferers
    int theta_scan_max = 200;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Symbol-level Monte Carlo result: the full BER-vs-threshold scan, its
/// minimizer, and the error proportions at the minimizer.
struct McResult {
    int best_theta = 0;
    double ber = 0.0;
    double p_hat = 0.0;
    double q_hat = 0.0;
    std::vector<double> ber_by_theta;
    std::vector<double> std_errors;   ///< binomial SE of ber_by_theta
    long long n_zero = 0;             ///< realizations with s0 = 0
    long long n_one = 0;

    /// Error proportions and SE of the BER estimate at a given threshold.
    [[nodiscard]] double se_at(int theta) const { return std_errors.at(theta); }
};

/// Draw equiprobable symbols for TX0 and every interferer, sample the two
/// Poisson counts from the CIR-derived means, and tally decision errors for
/// every threshold in [0, theta_scan_max]. Reproducible for a given seed
/// (counter-based substream per realization, fixed reduction order).
McResult run_mc(const McConfig& cfg, double d_hex, int n_mol,
                const LinkOptions& opts);

/// As run_mc but with precomputed channel quantities (c_bar_s and flat
/// per-interferer means already scaled by n_mol).
McResult run_mc_with_means(const McConfig& cfg, double c_bar_s,
                           const std::vector<double>& means);

struct McSweepRow {
    double d_hex;
    int theta_best;
    int theta_analytical;
    double ber_mc;          ///< scan-minimum empirical BER
    double ber_mc_at_analytical;
    double ber_analytical;
    double p_hat;
    double q_hat;
    double user_rate;
    double are;
    double se_ber;
};

/// Per grid point: Monte Carlo with cfg.n_rings interferers plus the
/// analytical reference with opts.n_rings interferers.
std::vector<McSweepRow> mc_are_sweep(const McConfig& cfg,
                                     const std::vector<double>& d_hex_grid,
                                     int n_mol, const LinkOptions& opts);

} // namespace hexmc
