#pragma once

#include <array>
#include <cstdint>

namespace hexmc {

/// splitmix64 finalizer. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x);

/// Key derivation for independent substreams: folds each argument through
/// mix64. hash_combine(seed, realization, particle, ...) keys are
/// schedule-independent by construction.
inline std::uint64_t hash_combine(std::uint64_t a) { return mix64(a); }

template <typename... Rest>
std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b, Rest... rest)
{
    return hash_combine(mix64(a + 0x9e3779b97f4a7c15ull) ^ b, rest...);
}

/// Counter-based stream: state advances by a fixed increment, output is the
/// mix64 hash of the counter (splitmix64).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix64(state_);
    }

    /// uniform double in (0, 1]
    double uniform()
    {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// standard normal via Box-Muller (one of the pair is discarded)
    double normal();

private:
    std::uint64_t state_;
};

/// Three independent standard normals for PBS step (realization, particle,
/// step), derived from a counter-based substream so results are independent
/// of thread schedule.
std::array<double, 3> counter_normals(std::uint64_t seed, std::uint64_t realization,
                                      std::uint64_t particle, std::uint64_t step);

/// Poisson sample: CDF inversion for mean < 30, Hormann's PTRS transformed
/// rejection above.
long long poisson_draw(double mean, SplitMix64& rng);

} // namespace hexmc
