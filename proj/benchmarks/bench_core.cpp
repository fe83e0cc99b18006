#include <benchmark/benchmark.h>

#include "hexmc/channel.hpp"
#include "hexmc/detector.hpp"
#include "hexmc/iui.hpp"
#include "hexmc/metrics.hpp"
#include "hexmc/pbs.hpp"
#include "hexmc/rng.hpp"

namespace {

const hexmc::ChannelParams kParams = hexmc::ChannelParams::for_hex_spacing(0.2);

void BM_CirSeries(benchmark::State& state)
{
    const double r0 = 0.2 * state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(hexmc::cir(r0, 2.4, 20, kParams));
}
BENCHMARK(BM_CirSeries)->Arg(0)->Arg(1)->Arg(3);

void BM_FindSamplingTime(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(hexmc::find_sampling_time(kParams, 20));
}
BENCHMARK(BM_FindSamplingTime)->Unit(benchmark::kMillisecond);

void BM_EnumerateStates(benchmark::State& state)
{
    const auto layout = hexmc::build_layout(0.2, static_cast<int>(state.range(0)));
    const auto t = hexmc::find_sampling_time(kParams, 20);
    const auto ensemble = hexmc::iui_ensemble(layout, kParams, t.t_max, 20);
    for (auto _ : state)
        benchmark::DoNotOptimize(hexmc::enumerate_states(ensemble));
}
BENCHMARK(BM_EnumerateStates)->Arg(1)->Arg(3);

void BM_ComputeThreshold(benchmark::State& state)
{
    const auto layout = hexmc::build_layout(0.2, 3);
    const auto t = hexmc::find_sampling_time(kParams, 20);
    const auto ensemble = hexmc::iui_ensemble(layout, kParams, t.t_max, 20);
    const auto states = hexmc::enumerate_states(ensemble);
    const double c_bar_s = 100.0 * t.peak;
    for (auto _ : state)
        benchmark::DoNotOptimize(hexmc::compute_threshold(c_bar_s, states));
}
BENCHMARK(BM_ComputeThreshold)->Unit(benchmark::kMillisecond);

void BM_EvaluateLink(benchmark::State& state)
{
    hexmc::LinkOptions opts;
    for (auto _ : state)
        benchmark::DoNotOptimize(hexmc::evaluate_link(0.2, 100, opts));
}
BENCHMARK(BM_EvaluateLink)->Unit(benchmark::kMillisecond);

void BM_PbsStep(benchmark::State& state)
{
    hexmc::Vec3 pos = {0.0, 0.0, 0.0};
    std::uint64_t step = 0;
    for (auto _ : state) {
        const auto n = hexmc::counter_normals(1, 0, 0, step++);
        pos = hexmc::step_particle(pos, 1e-3, kParams.D, kParams.v, n);
        benchmark::DoNotOptimize(pos);
    }
}
BENCHMARK(BM_PbsStep);

} // namespace

BENCHMARK_MAIN();
