#include "hexmc/iui.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hexmc/errors.hpp"
#include "hexmc/rng.hpp"

namespace hexmc {

SignalModel signal_mean(const ChannelParams& p, double cir_peak)
{
    if (!(cir_peak >= 0.0 && cir_peak <= 1.0))
        throw std::invalid_argument("signal_mean: cir_peak must be in [0, 1]");
    return {static_cast<double>(p.n_mol) * cir_peak};
}

IuiEnsemble iui_ensemble(const GridLayout& layout, const ChannelParams& p,
                         double t_max, int k_max)
{
    p.validate();
    IuiEnsemble e;
    e.means.reserve(layout.interferers.size());

    // one CIR evaluation per distance class, expanded to the flat vector
    const auto classes = distance_classes(layout);
    for (const auto& cls : classes) {
        const CirEval ev = cir_series(cls.distance, t_max, k_max, p);
        if (!ev.converged)
            throw NumericalError("iui_ensemble: CIR series did not converge at r0 = "
                                 + std::to_string(cls.distance));
        const double mean = static_cast<double>(p.n_mol) * ev.value;
        e.classes.push_back({mean, cls.multiplicity});
        for (int i = 0; i < cls.multiplicity; ++i)
            e.means.push_back(mean);
    }
    return e;
}

IuiEnsemble ensemble_from_means(std::vector<double> means)
{
    IuiEnsemble e;
    for (double m : means) {
        if (m < 0.0)
            throw std::invalid_argument("ensemble_from_means: negative mean");
        if (!e.classes.empty() && e.classes.back().mean == m)
            ++e.classes.back().multiplicity;
        else
            e.classes.push_back({m, 1});
    }
    e.means = std::move(means);
    return e;
}

std::uint64_t state_count(const IuiEnsemble& e)
{
    std::uint64_t count = 1;
    for (const auto& cls : e.classes) {
        const std::uint64_t f = static_cast<std::uint64_t>(cls.multiplicity) + 1;
        if (count > std::numeric_limits<std::uint64_t>::max() / f)
            return std::numeric_limits<std::uint64_t>::max();
        count *= f;
    }
    return count;
}

std::vector<WeightedState> enumerate_states(const IuiEnsemble& e, std::uint64_t cap)
{
    const std::uint64_t total = state_count(e);
    if (total > cap)
        throw NumericalError("enumerate_states: " + std::to_string(total)
                             + " states exceed cap " + std::to_string(cap));

    // per-class binomial weight tables C(n, k) 2^{-n}
    std::vector<std::vector<double>> weights;
    weights.reserve(e.classes.size());
    for (const auto& cls : e.classes) {
        const int n = cls.multiplicity;
        std::vector<double> w(static_cast<std::size_t>(n) + 1);
        double binom = 1.0;
        const double scale = std::ldexp(1.0, -n);
        for (int k = 0; k <= n; ++k) {
            w[k] = binom * scale;
            binom = binom * (n - k) / (k + 1.0);
        }
        weights.push_back(std::move(w));
    }

    std::vector<WeightedState> states;
    states.reserve(total);
    std::vector<int> counts(e.classes.size(), 0);
    while (true) {
        double mean = 0.0;
        double weight = 1.0;
        for (std::size_t j = 0; j < e.classes.size(); ++j) {
            mean += counts[j] * e.classes[j].mean;
            weight *= weights[j][counts[j]];
        }
        states.push_back({mean, weight});

        // odometer increment
        std::size_t j = 0;
        for (; j < counts.size(); ++j) {
            if (counts[j] < e.classes[j].multiplicity) {
                ++counts[j];
                break;
            }
            counts[j] = 0;
        }
        if (j == counts.size()) break;
    }
    return states;
}

std::vector<WeightedState> sample_states(const IuiEnsemble& e, int n_samples,
                                         std::uint64_t seed)
{
    if (n_samples < 1)
        throw std::invalid_argument("sample_states: n_samples must be >= 1");

    std::vector<WeightedState> states;
    states.reserve(n_samples);
    const double weight = 1.0 / n_samples;
    for (int s = 0; s < n_samples; ++s) {
        SplitMix64 rng(hash_combine(seed, static_cast<std::uint64_t>(s)));
        double mean = 0.0;
        std::uint64_t bits = 0;
        int avail = 0;
        for (double m : e.means) {
            if (avail == 0) {
                bits = rng.next();
                avail = 64;
            }
            if (bits & 1u) mean += m;
            bits >>= 1;
            --avail;
        }
        states.push_back({mean, weight});
    }
    return states;
}

} // namespace hexmc
