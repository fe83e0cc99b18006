#include "hexmc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hexmc/detector.hpp"
#include "hexmc/errors.hpp"
#include "hexmc/special.hpp"

namespace hexmc {

ErrorProbs error_probabilities(int theta, double c_bar_s,
                               std::span<const WeightedState> states)
{
    if (theta < 0)
        throw std::invalid_argument("error_probabilities: theta must be >= 0");
    if (states.empty())
        throw std::invalid_argument("error_probabilities: state list must not be empty");

    if (theta == 0)
        return {1.0, 0.0}; // always decide 1

    double q = 0.0;
    double p = 0.0;
    for (const auto& st : states) {
        q += st.weight * poisson_cdf_below(theta, c_bar_s + st.mean);
        p += st.weight * (1.0 - poisson_cdf_below(theta, st.mean));
    }
    return {p, q};
}

namespace {

double xlog2x(double x)
{
    return x > 0.0 ? x * std::log2(x) : 0.0;
}

} // namespace

double user_rate(double p, double q)
{
    if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("user_rate: p and q must be in [0, 1]");
    const double h_out = -(xlog2x(0.5 * (1.0 - p + q)) + xlog2x(0.5 * (1.0 - q + p)));
    const double h_cond = -0.5 * (xlog2x(1.0 - p) + xlog2x(p) + xlog2x(q) + xlog2x(1.0 - q));
    return h_out - h_cond;
}

double spatial_rate(double d_hex)
{
    if (!(d_hex > 0.0))
        throw std::invalid_argument("spatial_rate: d_hex must be > 0");
    return 2.0 / (std::sqrt(3.0) * d_hex * d_hex);
}

double are(double user_rate, double spatial_rate)
{
    return user_rate * spatial_rate;
}

LinkChannel compute_link_channel(double d_hex, const LinkOptions& opts)
{
    const ChannelParams params = ChannelParams::for_hex_spacing(d_hex);
    const GridLayout layout = build_layout(d_hex, opts.n_rings);

    LinkChannel chan;
    chan.d_hex = d_hex;
    const SamplingTime st = find_sampling_time(params, opts.k_max, opts.t_sim,
                                               opts.coarse_dt);
    chan.t_max = st.t_max;
    chan.cir_peak = st.peak;
    chan.n_interferers = static_cast<int>(layout.interferers.size());
    const double four_dt = 4.0 * params.D * chan.t_max;
    for (const auto& cls : distance_classes(layout)) {
        const CirEval ev = cir_series(cls.distance, chan.t_max, opts.k_max, params);
        // With decaying terms the truncation tail is bounded by the geometric
        // extrapolation of the last term. With growing terms the truncated sum
        // is unreliable, but a half-plane bound on the lateral hit probability
        // (0.5 exp(-(r0 - a_rx)^2 / 4Dt), valid for r0 > a_rx) caps the true
        // value; the class is accepted when either bound is negligible
        // against the desired-link peak.
        double tail_bound = std::numeric_limits<double>::infinity();
        if (ev.last_term_ratio < 1.0)
            tail_bound = ev.value * ev.last_term_ratio / (1.0 - ev.last_term_ratio);
        double value_bound = std::numeric_limits<double>::infinity();
        if (cls.distance > params.a_rx) {
            const double gap = cls.distance - params.a_rx;
            value_bound = 0.5 * std::exp(-gap * gap / four_dt);
        }
        const bool ok = ev.converged || tail_bound <= 1e-6 * chan.cir_peak
                        || value_bound <= 1e-9 * chan.cir_peak;
        if (!ok)
            throw NumericalError("compute_link_channel: CIR series did not converge");
        chan.cir_classes.push_back({ev.value, cls.multiplicity});
    }
    return chan;
}

LinkMetrics evaluate_link_metrics(const LinkChannel& chan, int n_mol,
                                  const LinkOptions& opts)
{
    if (n_mol < 1)
        throw std::invalid_argument("evaluate_link_metrics: n_mol must be >= 1");

    IuiEnsemble ensemble;
    for (const auto& cls : chan.cir_classes) {
        const double mean = static_cast<double>(n_mol) * cls.mean;
        ensemble.classes.push_back({mean, cls.multiplicity});
        for (int i = 0; i < cls.multiplicity; ++i)
            ensemble.means.push_back(mean);
    }

    LinkMetrics m;
    m.t_max = chan.t_max;
    m.c_bar_s = static_cast<double>(n_mol) * chan.cir_peak;

    std::vector<WeightedState> states;
    if (state_count(ensemble) <= opts.enum_cap) {
        states = enumerate_states(ensemble, opts.enum_cap);
        m.exact_states = true;
    } else {
        states = sample_states(ensemble, opts.state_samples, opts.seed);
        m.exact_states = false;
    }

    m.theta = compute_threshold(m.c_bar_s, states, opts.theta_max);
    const ErrorProbs errs = error_probabilities(m.theta, m.c_bar_s, states);
    m.p = errs.p;
    m.q = errs.q;
    m.ber = errs.ber();
    m.user_rate = user_rate(m.p, m.q);
    m.spatial_rate = spatial_rate(chan.d_hex);
    m.are = are(m.user_rate, m.spatial_rate);
    return m;
}

LinkMetrics evaluate_link(double d_hex, int n_mol, const LinkOptions& opts)
{
    return evaluate_link_metrics(compute_link_channel(d_hex, opts), n_mol, opts);
}

std::vector<double> log_spaced(double lo, double hi, int n)
{
    if (!(lo > 0.0) || !(hi > lo) || n < 2)
        throw std::invalid_argument("log_spaced: need 0 < lo < hi and n >= 2");
    std::vector<double> grid(n);
    const double log_lo = std::log(lo);
    const double step = (std::log(hi) - log_lo) / (n - 1);
    for (int i = 0; i < n; ++i)
        grid[i] = std::exp(log_lo + i * step);
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

std::vector<SweepPoint> sweep_links(std::span<const double> d_hex_grid,
                                    int n_mol, const LinkOptions& opts)
{
    std::vector<SweepPoint> points;
    points.reserve(d_hex_grid.size());
    for (double d_hex : d_hex_grid)
        points.push_back({d_hex, evaluate_link(d_hex, n_mol, opts)});
    return points;
}

OptResult optimize_d_hex(double lo, double hi, int grid_points, int n_mol,
                         const LinkOptions& opts)
{
    const auto grid = log_spaced(lo, hi, grid_points);
    const auto points = sweep_links(grid, n_mol, opts);
    std::size_t best = 0;
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i].metrics.are > points[best].metrics.are)
            best = i;
    const bool interior = best > 0 && best + 1 < points.size();
    return {points[best].d_hex, points[best].metrics.are, interior};
}

int count_interior_maxima(std::span<const double> values, double rel_eps)
{
    // merge consecutive near-equal values into plateaus
    std::vector<double> merged;
    for (double v : values) {
        if (!merged.empty()
            && std::abs(v - merged.back())
                   <= rel_eps * std::max(std::abs(v), std::abs(merged.back())))
            continue;
        merged.push_back(v);
    }
    int maxima = 0;
    for (std::size_t i = 1; i + 1 < merged.size(); ++i)
        if (merged[i] > merged[i - 1] && merged[i] > merged[i + 1])
            ++maxima;
    return maxima;
}

} // namespace hexmc
