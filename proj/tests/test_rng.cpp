#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "hexmc/rng.hpp"

using namespace hexmc;

TEST_CASE("mix64 determinism and dispersion")
{
    CHECK(mix64(1) == mix64(1));
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 10'000; ++i)
        seen.insert(mix64(i));
    CHECK(seen.size() == 10'000); // no collisions on consecutive inputs
}

TEST_CASE("hash_combine keys distinct tuples distinctly")
{
    std::set<std::uint64_t> keys;
    for (std::uint64_t a = 0; a < 20; ++a)
        for (std::uint64_t b = 0; b < 20; ++b)
            for (std::uint64_t c = 0; c < 20; ++c)
                keys.insert(hash_combine(a, b, c));
    CHECK(keys.size() == 8000);
    // argument order matters
    CHECK(hash_combine(1, 2, 3) != hash_combine(3, 2, 1));
}

TEST_CASE("uniform output lies in (0, 1]")
{
    SplitMix64 rng(123);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 100'000; ++i) {
        const double u = rng.uniform();
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
}

TEST_CASE("normal moments")
{
    SplitMix64 rng(9);
    const int n = 200'000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 3.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(var - 1.0) < 3.0 * std::sqrt(2.0 / n));
}

TEST_CASE("counter_normals is a pure function of its key")
{
    const auto a = counter_normals(7, 3, 11, 100);
    const auto b = counter_normals(7, 3, 11, 100);
    CHECK(a == b);
    CHECK(a != counter_normals(7, 3, 11, 101));
    CHECK(a != counter_normals(8, 3, 11, 100));
}

TEST_CASE("poisson_draw matches Poisson moments in both regimes")
{
    for (double mean : {5.0, 100.0}) { // inversion branch and rejection branch
        SplitMix64 rng(31 + static_cast<std::uint64_t>(mean));
        const int n = 100'000;
        double sum = 0.0, sum2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = static_cast<double>(poisson_draw(mean, rng));
            CHECK(x >= 0.0);
            sum += x;
            sum2 += x * x;
        }
        const double m = sum / n;
        const double var = sum2 / n - m * m;
        const double se_mean = std::sqrt(mean / n);
        CHECK(std::abs(m - mean) < 3.0 * se_mean);
        // Poisson variance equals the mean; SE of the sample variance is
        // roughly sqrt((mean + 2 mean^2) / n)
        const double se_var = std::sqrt((mean + 2.0 * mean * mean) / n);
        CHECK(std::abs(var - mean) < 3.0 * se_var);
    }
    SplitMix64 rng(1);
    CHECK(poisson_draw(0.0, rng) == 0);
}
