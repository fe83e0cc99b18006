#pragma once

#include <cstdint>
#include <vector>

#include "hexmc/channel.hpp"
#include "hexmc/grid.hpp"

namespace hexmc {

/// Poisson mean of the desired signal, c_bar_s = N_mol * CIR_00(t_max).
struct SignalModel {
    double c_bar_s = 0.0;
};

struct ClassMean {
    double mean;      ///< expected count contributed by one active interferer
    int multiplicity;
};

/// Per-interferer expected IUI counts, plus the same multiset collapsed into
/// distance classes (equidistant interferers share identical CIR means).
struct IuiEnsemble {
    std::vector<double> means;       ///< one entry per interferer, sorted
    std::vector<ClassMean> classes;

    [[nodiscard]] int n_interferers() const { return static_cast<int>(means.size()); }
};

/// One IUI activation state: the aggregate Poisson mean of the active
/// interferers and its probability under equiprobable symbols.
struct WeightedState {
    double mean;
    double weight;
};

SignalModel signal_mean(const ChannelParams& p, double cir_peak);

/// Expected IUI counts at the sampling time, one per interferer of the layout.
IuiEnsemble iui_ensemble(const GridLayout& layout, const ChannelParams& p,
                         double t_max, int k_max);

/// Build an ensemble directly from per-interferer means (test/tooling entry;
/// consecutive equal means are merged into classes).
IuiEnsemble ensemble_from_means(std::vector<double> means);

/// Number of distinct class-collapsed states, prod_j (n_j + 1), saturated
/// at UINT64_MAX.
std::uint64_t state_count(const IuiEnsemble& e);

/// Exact class-collapsed enumeration of all IUI activation states. Each
/// state's weight is prod_j C(n_j, k_j) 2^{-n_j}; weights sum to 1 and the
/// expectation of any function over the states equals the exhaustive
/// 2^n-vector enumeration exactly. Throws NumericalError when the state
/// count exceeds cap (fall back to sample_states).
std::vector<WeightedState> enumerate_states(const IuiEnsemble& e,
                                            std::uint64_t cap = 10'000'000);

/// Monte Carlo fallback: n_samples aggregate means with each interferer
/// active independently with probability 1/2; every state carries weight
/// 1/n_samples. Reproducible for a given seed.
std::vector<WeightedState> sample_states(const IuiEnsemble& e, int n_samples,
                                         std::uint64_t seed);

} // namespace hexmc
