#include "hexmc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hexmc/errors.hpp"
#include "hexmc/special.hpp"

namespace hexmc {

ChannelParams ChannelParams::for_hex_spacing(double d_hex)
{
    if (!(d_hex > 0.0))
        throw std::invalid_argument("ChannelParams: d_hex must be > 0");
    ChannelParams p;
    p.a_rx = d_hex / 2.0;
    p.zS = p.zR - p.L_rx / 2.0;
    p.zE = p.zR + p.L_rx / 2.0;
    return p;
}

void ChannelParams::validate() const
{
    if (!(D > 0.0)) throw ConfigError("ChannelParams: D must be > 0");
    if (!(a_rx > 0.0)) throw ConfigError("ChannelParams: a_rx must be > 0");
    if (!(L_rx > 0.0)) throw ConfigError("ChannelParams: L_rx must be > 0");
    if (n_mol < 1) throw ConfigError("ChannelParams: n_mol must be >= 1");
    if (!(zR - z0 > 0.0)) throw ConfigError("ChannelParams: RX plane must be downstream of TX plane");
    if (std::abs((zE - zS) - L_rx) > 1e-12 * std::max(1.0, L_rx))
        throw ConfigError("ChannelParams: zE - zS must equal L_rx");
    if (!(zS < zR && zR < zE))
        throw ConfigError("ChannelParams: cylinder must straddle the RX plane");
}

double receiver_volume(const ChannelParams& p)
{
    return p.a_rx * p.a_rx * M_PI * p.L_rx;
}

double concentration_kernel(double r, double r0, double dphi, double z,
                            double t, const ChannelParams& p)
{
    if (!(t > 0.0))
        throw std::invalid_argument("concentration_kernel: t must be > 0");
    const double four_dt = 4.0 * p.D * t;
    const double dz = z - p.z0 - p.v * t;
    const double arg = (r * r + r0 * r0 - 2.0 * r0 * r * std::cos(dphi) + dz * dz) / four_dt;
    return std::pow(4.0 * M_PI * p.D * t, -1.5) * std::exp(-arg);
}

CirEval cir_series(double r0, double t, int k_max, const ChannelParams& p,
                   double rel_tol)
{
    if (!(t > 0.0))
        throw std::invalid_argument("cir_series: t must be > 0");
    if (k_max < 0)
        throw std::invalid_argument("cir_series: k_max must be >= 0");

    const double four_dt = 4.0 * p.D * t;
    const double sigma = std::sqrt(four_dt);
    const double zc = p.z0 + p.v * t;
    const double bracket =
        0.5 * (std::erf((zc - p.zS) / sigma) - std::erf((zc - p.zE) / sigma));

    const double rho = r0 * r0 / four_dt;
    const double chi = p.a_rx * p.a_rx / four_dt;

    CirEval out;
    if (rho == 0.0) {
        // single surviving term: gamma(1, chi)/0! = 1 - e^{-chi}
        out.value = bracket * (-std::expm1(-chi));
        out.terms_used = 1;
        out.converged = true;
        out.last_term_ratio = 0.0;
        return out;
    }

    const double log_rho = std::log(rho);
    double sum = 0.0;
    double term = 0.0;
    int k = 0;
    for (; k <= k_max; ++k) {
        const double log_pois = -rho + k * log_rho - std::lgamma(k + 1.0);
        term = std::exp(log_pois) * gamma_p(k + 1.0, chi);
        sum += term;
        if (sum > 0.0 && term <= rel_tol * sum) {
            out.converged = true;
            ++k;
            break;
        }
    }
    out.terms_used = std::min(k, k_max + 1);
    if (sum == 0.0) out.converged = true; // underflowed to an exact zero
    out.last_term_ratio = sum > 0.0 ? term / sum : 0.0;
    out.value = bracket * sum;
    return out;
}

double cir(double r0, double t, int k_max, const ChannelParams& p)
{
    return cir_series(r0, t, k_max, p).value;
}

double cir_uca(double r0, double t, const ChannelParams& p)
{
    return concentration_kernel(0.0, r0, 0.0, p.zR, t, p) * receiver_volume(p);
}

CirCurve evaluate_cir_curve(double r0, const std::vector<double>& times,
                            int k_max, const ChannelParams& p)
{
    CirCurve curve;
    curve.r0 = r0;
    curve.times = times;
    curve.values.reserve(times.size());
    for (double t : times)
        curve.values.push_back(cir(r0, t, k_max, p));
    const auto peak = std::max_element(curve.values.begin(), curve.values.end());
    if (peak != curve.values.end()) {
        curve.peak_value = *peak;
        curve.t_max = curve.times[static_cast<std::size_t>(peak - curve.values.begin())];
    }
    return curve;
}

SamplingTime find_sampling_time(const ChannelParams& p, int k_max,
                                double t_sim, double coarse_dt)
{
    p.validate();
    if (!(t_sim > 0.0) || !(coarse_dt > 0.0) || coarse_dt > t_sim)
        throw std::invalid_argument("find_sampling_time: need 0 < coarse_dt <= t_sim");

    const auto f = [&](double t) { return cir(0.0, t, k_max, p); };

    const int n = static_cast<int>(std::floor(t_sim / coarse_dt));
    int best = 1;
    double best_val = f(coarse_dt);
    for (int i = 2; i <= n; ++i) {
        const double val = f(i * coarse_dt);
        if (val > best_val) {
            best_val = val;
            best = i;
        }
    }
    if (best == n)
        throw NumericalError("find_sampling_time: maximum at t_sim boundary; "
                             "increase t_sim");

    // golden-section refinement on the bracketing interval
    double lo = (best - 1) * coarse_dt;
    double hi = std::min((best + 1) * coarse_dt, t_sim);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > 1e-6) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2; f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1; f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    const double t_max = 0.5 * (lo + hi);
    return {t_max, f(t_max)};
}

} // namespace hexmc
