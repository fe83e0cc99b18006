#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "hexmc/channel.hpp"
#include "hexmc/errors.hpp"
#include "hexmc/grid.hpp"
#include "hexmc/iui.hpp"
#include "hexmc/rng.hpp"

using namespace hexmc;

namespace {

// exhaustive expectation over all 2^n activation vectors
double brute_expectation(const std::vector<double>& means, double (*f)(double))
{
    const std::uint64_t n_states = 1ull << means.size();
    double acc = 0.0;
    for (std::uint64_t s = 0; s < n_states; ++s) {
        double lambda = 0.0;
        for (std::size_t j = 0; j < means.size(); ++j)
            if (s & (1ull << j)) lambda += means[j];
        acc += f(lambda);
    }
    return acc / static_cast<double>(n_states);
}

double collapsed_expectation(const std::vector<WeightedState>& states,
                             double (*f)(double))
{
    double acc = 0.0;
    for (const auto& st : states)
        acc += st.weight * f(st.mean);
    return acc;
}

} // namespace

TEST_CASE("signal_mean scales the peak by the molecule budget")
{
    ChannelParams p = ChannelParams::for_hex_spacing(0.2);
    p.n_mol = 100;
    CHECK(signal_mean(p, 0.0).c_bar_s == 0.0);
    CHECK(signal_mean(p, 0.05).c_bar_s == doctest::Approx(5.0).epsilon(1e-13));
}

TEST_CASE("iui_ensemble mirrors the ring structure")
{
    const ChannelParams p = ChannelParams::for_hex_spacing(0.2);
    const auto st = find_sampling_time(p, 20);

    const auto empty = iui_ensemble(build_layout(0.2, 0), p, st.t_max, 20);
    CHECK(empty.means.empty());
    CHECK(empty.classes.empty());

    const auto ring1 = iui_ensemble(build_layout(0.2, 1), p, st.t_max, 20);
    REQUIRE(ring1.means.size() == 6);
    for (double m : ring1.means)
        CHECK(m == ring1.means.front());
    REQUIRE(ring1.classes.size() == 1);
    CHECK(ring1.classes[0].multiplicity == 6);

    const auto ring3 = iui_ensemble(build_layout(0.2, 3), p, st.t_max, 20);
    REQUIRE(ring3.classes.size() == 5);
    const int mult[] = {6, 6, 6, 12, 6};
    for (int i = 0; i < 5; ++i)
        CHECK(ring3.classes[i].multiplicity == mult[i]);
    CHECK(ring3.means.size() == 36);

    // closer interferers contribute larger means
    for (std::size_t i = 1; i < ring3.classes.size(); ++i)
        CHECK(ring3.classes[i].mean <= ring3.classes[i - 1].mean);
}

TEST_CASE("state counts")
{
    CHECK(state_count(ensemble_from_means({})) == 1);
    CHECK(state_count(ensemble_from_means({2.0, 2.0, 2.0, 2.0, 2.0, 2.0})) == 7);
    const ChannelParams p = ChannelParams::for_hex_spacing(0.2);
    const auto st = find_sampling_time(p, 20);
    const auto ring3 = iui_ensemble(build_layout(0.2, 3), p, st.t_max, 20);
    CHECK(state_count(ring3) == 31213);
}

TEST_CASE("enumerate_states single binomial class")
{
    const auto states =
        enumerate_states(ensemble_from_means({0.5, 0.5, 0.5, 0.5, 0.5, 0.5}));
    REQUIRE(states.size() == 7);
    const double binom[] = {1, 6, 15, 20, 15, 6, 1};
    for (int k = 0; k <= 6; ++k) {
        CHECK(states[k].mean == doctest::Approx(0.5 * k).epsilon(1e-13));
        CHECK(states[k].weight == doctest::Approx(binom[k] / 64.0).epsilon(1e-13));
    }
}

TEST_CASE("enumerate_states with no interferers")
{
    const auto states = enumerate_states(ensemble_from_means({}));
    REQUIRE(states.size() == 1);
    CHECK(states[0].mean == 0.0);
    CHECK(states[0].weight == 1.0);
}

TEST_CASE("weights sum to one")
{
    const ChannelParams p = ChannelParams::for_hex_spacing(0.2);
    const auto st = find_sampling_time(p, 20);
    const auto ring3 = iui_ensemble(build_layout(0.2, 3), p, st.t_max, 20);
    const auto states = enumerate_states(ring3);
    CHECK(states.size() == 31213);
    double total = 0.0;
    for (const auto& s : states)
        total += s.weight;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("class collapse equals exhaustive enumeration")
{
    SplitMix64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        // random class structure with at most 12 interferers
        std::vector<double> means;
        while (means.size() < 12) {
            const int mult = 1 + static_cast<int>(rng.next() % 4);
            if (means.size() + mult > 12) break;
            const double m = 5.0 * rng.uniform();
            for (int i = 0; i < mult; ++i)
                means.push_back(m);
        }
        const auto states = enumerate_states(ensemble_from_means(means));
        for (auto f : {+[](double x) { return std::exp(-x); },
                       +[](double x) { return x; },
                       +[](double x) { return x * x; }}) {
            CHECK(collapsed_expectation(states, f)
                  == doctest::Approx(brute_expectation(means, f)).epsilon(1e-12));
        }
    }
}

TEST_CASE("enumeration cap triggers an explicit error")
{
    std::vector<double> means;
    for (int i = 0; i < 40; ++i)
        means.push_back(0.1 * (i + 1)); // 40 singleton classes, 2^40 states
    CHECK_THROWS_AS(enumerate_states(ensemble_from_means(means)),
                    NumericalError);
}

TEST_CASE("sample_states statistics and determinism")
{
    const auto e = ensemble_from_means({1.0, 1.0, 1.0, 1.0, 1.0, 1.0});
    const auto a = sample_states(e, 50'000, 5);
    const auto b = sample_states(e, 50'000, 5);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i].mean == b[i].mean);

    double mean = 0.0;
    for (const auto& s : a)
        mean += s.weight * s.mean;
    // aggregate expectation 6 * 1/2 * 1.0 = 3; SE = sqrt(6)*0.5/sqrt(n)
    const double se = std::sqrt(6.0) * 0.5 / std::sqrt(50'000.0);
    CHECK(std::abs(mean - 3.0) < 3.0 * se);

    const auto none = sample_states(ensemble_from_means({}), 100, 1);
    for (const auto& s : none)
        CHECK(s.mean == 0.0);
}

TEST_CASE("sampled expectation agrees with enumeration on the 3-ring ensemble")
{
    const ChannelParams p = ChannelParams::for_hex_spacing(0.2);
    const auto st = find_sampling_time(p, 20);
    auto ring3 = iui_ensemble(build_layout(0.2, 3), p, st.t_max, 20);
    for (auto& m : ring3.means)
        m *= 100.0;
    for (auto& c : ring3.classes)
        c.mean *= 100.0;

    const auto exact = enumerate_states(ring3);
    const auto sampled = sample_states(ring3, 100'000, 3);

    auto f = +[](double x) { return x; };
    const double ref = collapsed_expectation(exact, f);
    const double est = collapsed_expectation(sampled, f);
    // variance of the aggregate mean under random activation
    double var = 0.0;
    for (double m : ring3.means)
        var += 0.25 * m * m;
    const double se = std::sqrt(var / 100'000.0);
    CHECK(std::abs(est - ref) < 3.0 * se);
}
