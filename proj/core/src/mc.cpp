#include "hexmc/mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hexmc/errors.hpp"
#include "hexmc/rng.hpp"

namespace hexmc {

void McConfig::validate() const
{
    if (n_realizations < 1) throw ConfigError("McConfig: n_realizations must be >= 1");
    if (n_rings < 0) throw ConfigError("McConfig: n_rings must be >= 0");
    if (theta_scan_max < 1) throw ConfigError("McConfig: theta_scan_max must be >= 1");
}

McResult run_mc_with_means(const McConfig& cfg, double c_bar_s,
                           const std::vector<double>& means)
{
    cfg.validate();
    if (c_bar_s < 0.0)
        throw std::invalid_argument("run_mc_with_means: c_bar_s must be >= 0");

    const int t_max = cfg.theta_scan_max;
    // histograms of observed counts conditioned on s0, clipped at t_max
    std::vector<long long> hist0(t_max + 1, 0), hist1(t_max + 1, 0);
    long long n_zero = 0, n_one = 0;

    for (int real = 0; real < cfg.n_realizations; ++real) {
        SplitMix64 rng(hash_combine(cfg.seed, static_cast<std::uint64_t>(real)));

        const bool s0 = (rng.next() & 1u) != 0;
        double aggregate = 0.0;
        std::uint64_t bits = 0;
        int avail = 0;
        for (double m : means) {
            if (avail == 0) {
                bits = rng.next();
                avail = 64;
            }
            if (bits & 1u) aggregate += m;
            bits >>= 1;
            --avail;
        }

        const long long c_s = s0 ? poisson_draw(c_bar_s, rng) : 0;
        const long long c_iui = poisson_draw(aggregate, rng);
        const long long r = std::min<long long>(c_s + c_iui, t_max);
        if (s0) {
            ++hist1[r];
            ++n_one;
        } else {
            ++hist0[r];
            ++n_zero;
        }
    }

    McResult res;
    res.n_zero = n_zero;
    res.n_one = n_one;
    res.ber_by_theta.resize(t_max + 1);
    res.std_errors.resize(t_max + 1);

    // cum0/cum1 at theta: #(r <= theta - 1); clipped bin t_max only ever
    // enters for theta > t_max, which is outside the scan
    long long cum0 = 0, cum1 = 0;
    int best = 0;
    double best_ber = 2.0;
    for (int theta = 0; theta <= t_max; ++theta) {
        if (theta > 0) {
            cum0 += hist0[theta - 1];
            cum1 += hist1[theta - 1];
        }
        const double q_hat = n_one > 0 ? static_cast<double>(cum1) / n_one : 0.0;
        const double p_hat =
            n_zero > 0 ? 1.0 - static_cast<double>(cum0) / n_zero : 0.0;
        const double ber = 0.5 * (p_hat + q_hat);
        const double var_p = n_zero > 0 ? p_hat * (1.0 - p_hat) / n_zero : 0.0;
        const double var_q = n_one > 0 ? q_hat * (1.0 - q_hat) / n_one : 0.0;
        res.ber_by_theta[theta] = ber;
        res.std_errors[theta] = 0.5 * std::sqrt(var_p + var_q);
        if (ber < best_ber) {
            best_ber = ber;
            best = theta;
        }
    }

    res.best_theta = best;
    res.ber = best_ber;
    long long c0 = 0, c1 = 0;
    for (int x = 0; x < best; ++x) {
        c0 += hist0[x];
        c1 += hist1[x];
    }
    res.q_hat = n_one > 0 ? static_cast<double>(c1) / n_one : 0.0;
    res.p_hat = n_zero > 0 ? 1.0 - static_cast<double>(c0) / n_zero : 0.0;
    return res;
}

McResult run_mc(const McConfig& cfg, double d_hex, int n_mol,
                const LinkOptions& opts)
{
    LinkOptions mc_opts = opts;
    mc_opts.n_rings = cfg.n_rings;
    const LinkChannel chan = compute_link_channel(d_hex, mc_opts);

    std::vector<double> means;
    means.reserve(chan.n_interferers);
    for (const auto& cls : chan.cir_classes)
        for (int i = 0; i < cls.multiplicity; ++i)
            means.push_back(static_cast<double>(n_mol) * cls.mean);

    return run_mc_with_means(cfg, static_cast<double>(n_mol) * chan.cir_peak, means);
}

std::vector<McSweepRow> mc_are_sweep(const McConfig& cfg,
                                     const std::vector<double>& d_hex_grid,
                                     int n_mol, const LinkOptions& opts)
{
    std::vector<McSweepRow> rows;
    rows.reserve(d_hex_grid.size());
    for (double d_hex : d_hex_grid) {
        const McResult mc = run_mc(cfg, d_hex, n_mol, opts);
        const LinkMetrics ana = evaluate_link(d_hex, n_mol, opts);

        McSweepRow row;
        row.d_hex = d_hex;
        row.theta_best = mc.best_theta;
        row.theta_analytical = ana.theta;
        row.ber_mc = mc.ber;
        row.ber_mc_at_analytical = ana.theta <= cfg.theta_scan_max
                                       ? mc.ber_by_theta[ana.theta]
                                       : std::numeric_limits<double>::quiet_NaN();
        row.ber_analytical = ana.ber;
        row.p_hat = mc.p_hat;
        row.q_hat = mc.q_hat;
        row.user_rate = user_rate(mc.p_hat, mc.q_hat);
        row.are = are(row.user_rate, spatial_rate(d_hex));
        row.se_ber = mc.std_errors[mc.best_theta];
        rows.push_back(row);
    }
    return rows;
}

} // namespace hexmc
