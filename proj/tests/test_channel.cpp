#include <doctest.h>

#include <cmath>

#include "hexmc/channel.hpp"
#include "hexmc/errors.hpp"
#include "hexmc/rng.hpp"
#include "hexmc/validation.hpp"

using namespace hexmc;

namespace {
const ChannelParams kDefault = ChannelParams::for_hex_spacing(0.2);
}

TEST_CASE("concentration kernel at the drifting center")
{
    const double t = 1.3;
    const double expect = std::pow(4.0 * M_PI * kDefault.D * t, -1.5);
    CHECK(concentration_kernel(0.0, 0.0, 0.0, kDefault.z0 + kDefault.v * t, t, kDefault)
          == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("kernel equals the Cartesian Gaussian at random points")
{
    SplitMix64 rng(7);
    for (int i = 0; i < 100; ++i) {
        const double r = 2.0 * rng.uniform();
        const double r0 = 2.0 * rng.uniform();
        const double dphi = 2.0 * M_PI * rng.uniform();
        const double z = 2.0 * rng.uniform() - 1.0;
        const double t = 0.1 + 5.0 * rng.uniform();

        // field point at (r, 0), source at (r0 cos dphi, r0 sin dphi)
        const double dx = r - r0 * std::cos(dphi);
        const double dy = -r0 * std::sin(dphi);
        const double dz = z - kDefault.z0 - kDefault.v * t;
        const double four_dt = 4.0 * kDefault.D * t;
        const double cart = std::pow(M_PI * four_dt, -1.5)
                            * std::exp(-(dx * dx + dy * dy + dz * dz) / four_dt);
        CHECK(concentration_kernel(r, r0, dphi, z, t, kDefault)
              == doctest::Approx(cart).epsilon(1e-12));
    }
}

TEST_CASE("kernel integrates to one over all space")
{
    // product Gauss-Legendre over a box wide enough to hold the mass
    const double t = 1.0;
    const double sigma = std::sqrt(2.0 * kDefault.D * t);
    const double half = 10.0 * sigma;
    const double zc = kDefault.z0 + kDefault.v * t;
    const auto q = gauss_legendre(48, -half, half);
    double total = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i)
        for (std::size_t j = 0; j < q.nodes.size(); ++j)
            for (std::size_t k = 0; k < q.nodes.size(); ++k) {
                const double x = q.nodes[i], y = q.nodes[j], z = zc + q.nodes[k];
                const double r = std::hypot(x, y);
                total += q.weights[i] * q.weights[j] * q.weights[k]
                         * concentration_kernel(r, 0.0, 0.0, z, t, kDefault);
            }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("cir closed form at zero source distance")
{
    for (double t : {0.5, 1.0, 2.5, 10.0}) {
        const double four_dt = 4.0 * kDefault.D * t;
        const double sq = std::sqrt(four_dt);
        const double bracket =
            0.5 * (std::erf((kDefault.z0 + kDefault.v * t - kDefault.zS) / sq)
                   - std::erf((kDefault.z0 + kDefault.v * t - kDefault.zE) / sq));
        const double chi = kDefault.a_rx * kDefault.a_rx / four_dt;
        const double expect = bracket * (1.0 - std::exp(-chi));
        CHECK(cir(0.0, t, 20, kDefault) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("cir vanishes as t approaches zero with positive source distance")
{
    CHECK(cir(0.2, 1e-6, 20, kDefault) == doctest::Approx(0.0));
    CHECK(cir(0.2, 1e-4, 20, kDefault) < 1e-30);
}

TEST_CASE("cir matches numerical integration of the kernel")
{
    // independent route: Gauss-Legendre integration over the cylinder
    for (double r0 : {0.0, 0.2, 0.4}) {
        for (double t : {1.0, 2.5, 6.0}) {
            const double ref = cir_quadrature(r0, t, kDefault);
            CHECK(cir(r0, t, 20, kDefault) == doctest::Approx(ref).epsilon(1e-6));
        }
    }
}

TEST_CASE("series partial sums are non-decreasing in k_max and bounded")
{
    for (double r0 : {0.0, 0.2, 0.35}) {
        for (double t : {0.8, 2.0, 7.0}) {
            double prev = 0.0;
            for (int k = 0; k <= 20; ++k) {
                const double v = cir(r0, t, k, kDefault);
                CHECK(v >= prev);
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
                prev = v;
            }
        }
    }
}

TEST_CASE("cir rejects non-positive time")
{
    CHECK_THROWS(cir(0.0, 0.0, 20, kDefault));
    CHECK_THROWS(cir(0.0, -1.0, 20, kDefault));
}

TEST_CASE("uca receiver volume and deviation near the peak")
{
    CHECK(receiver_volume(kDefault) == doctest::Approx(M_PI * 0.002).epsilon(1e-13));

    // at the desired link the uniform-concentration value overshoots the
    // exact receiver integral near the peak
    const auto st = find_sampling_time(kDefault, 20);
    const double exact = cir(0.2, st.t_max, 20, kDefault);
    const double uca = cir_uca(0.2, st.t_max, kDefault);
    CHECK(std::abs(uca - exact) / exact > 0.01);
}

TEST_CASE("uca converges to the exact integral for a distant source")
{
    // receiver small relative to the source distance
    const double r0 = 10.0 * kDefault.a_rx;
    const double t = 6.0;
    const double exact = cir_quadrature(r0, t, kDefault);
    const double uca = cir_uca(r0, t, kDefault);
    CHECK(uca == doctest::Approx(exact).epsilon(0.02));
}

TEST_CASE("sampling time sits below the advective arrival time")
{
    const auto st = find_sampling_time(kDefault, 20);
    CHECK(st.t_max > 0.0);
    CHECK(st.t_max < kDefault.plane_separation() / kDefault.v);
    CHECK(st.peak == doctest::Approx(cir(0.0, st.t_max, 20, kDefault)).epsilon(1e-12));

    // grid-scan oracle at 1 ms resolution
    double best_t = 0.0, best_v = -1.0;
    for (int i = 1; i <= 15000; ++i) {
        const double t = i * 1e-3;
        const double v = cir(0.0, t, 20, kDefault);
        if (v > best_v) {
            best_v = v;
            best_t = t;
        }
    }
    CHECK(st.t_max == doctest::Approx(best_t).epsilon(1e-3));
    CHECK(st.peak >= best_v - 1e-12);
}

TEST_CASE("sampling time approaches d/v in the advection-dominated limit")
{
    ChannelParams p = kDefault;
    p.D = 1e-4;
    const auto st = find_sampling_time(p, 20);
    CHECK(st.t_max == doctest::Approx(2.5).epsilon(1e-2));
}

TEST_CASE("doubling the diffusion coefficient shifts the peak earlier")
{
    ChannelParams fast = kDefault;
    fast.D = 2.0 * kDefault.D;
    CHECK(find_sampling_time(fast, 20).t_max < find_sampling_time(kDefault, 20).t_max);
}

TEST_CASE("axial bracket is maximized when the pulse center crosses the cylinder middle")
{
    const double t = 1.5;
    const double sq = std::sqrt(4.0 * kDefault.D * t);
    auto bracket = [&](double z0) {
        return 0.5 * (std::erf((z0 + kDefault.v * t - kDefault.zS) / sq)
                      - std::erf((z0 + kDefault.v * t - kDefault.zE) / sq));
    };
    const double best_z0 = 0.5 * (kDefault.zS + kDefault.zE) - kDefault.v * t;
    const double best = bracket(best_z0);
    for (int i = -50; i <= 50; ++i)
        CHECK(bracket(best_z0 + 0.01 * i) <= best + 1e-15);
}

TEST_CASE("parameter validation")
{
    ChannelParams p = kDefault;
    p.D = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = kDefault;
    p.zS = p.zE;
    CHECK_THROWS_AS(p.validate(), ConfigError);
}
