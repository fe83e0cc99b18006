#include "hexmc/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace hexmc {

std::uint64_t mix64(std::uint64_t x)
{
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

double SplitMix64::normal()
{
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::array<double, 3> counter_normals(std::uint64_t seed, std::uint64_t realization,
                                      std::uint64_t particle, std::uint64_t step)
{
    SplitMix64 rng(hash_combine(seed, realization, particle, step));
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    const double u3 = rng.uniform();
    const double u4 = rng.uniform();
    const double m1 = std::sqrt(-2.0 * std::log(u1));
    const double m2 = std::sqrt(-2.0 * std::log(u3));
    return {m1 * std::cos(2.0 * M_PI * u2),
            m1 * std::sin(2.0 * M_PI * u2),
            m2 * std::cos(2.0 * M_PI * u4)};
}

namespace {

long long poisson_inversion(double mean, SplitMix64& rng)
{
    const double threshold = std::exp(-mean);
    long long k = 0;
    double prod = rng.uniform();
    while (prod > threshold) {
        prod *= rng.uniform();
        ++k;
    }
    return k;
}

// Hormann (1993), "The transformed rejection method for generating Poisson
// random variables", algorithm PTRS. Valid for mean >= 10.
long long poisson_ptrs(double mean, SplitMix64& rng)
{
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mean = std::log(mean);

    while (true) {
        double u = rng.uniform() - 0.5;
        const double v = rng.uniform();
        const double us = 0.5 - std::abs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r)
            return static_cast<long long>(k);
        if (k < 0.0 || (us < 0.013 && v > us))
            continue;
        if (std::log(v * inv_alpha / (a / (us * us) + b))
            <= k * log_mean - mean - std::lgamma(k + 1.0))
            return static_cast<long long>(k);
    }
}

} // namespace

long long poisson_draw(double mean, SplitMix64& rng)
{
    if (mean < 0.0)
        throw std::invalid_argument("poisson_draw: mean must be >= 0");
    if (mean == 0.0) return 0;
    if (mean < 30.0) return poisson_inversion(mean, rng);
    return poisson_ptrs(mean, rng);
}

} // namespace hexmc
