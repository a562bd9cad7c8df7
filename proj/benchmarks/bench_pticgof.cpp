#include "pticgof/alternatives.hpp"
#include "pticgof/montecarlo.hpp"

#include <benchmark/benchmark.h>

using namespace pticgof;

namespace {

const CensoringScheme& scheme() {
    static const auto s = *builtin_scheme("t1p1");
    return s;
}

void BM_SimulateSample(benchmark::State& state) {
    const auto probs = interval_probabilities(scheme(), AlternativeFamily::uniform().as_cdf());
    std::uint64_t index = 0;
    for (auto _ : state) {
        Stream rng(1, index++);
        benchmark::DoNotOptimize(simulate_sample(scheme(), state.range(0), probs, rng));
    }
}
BENCHMARK(BM_SimulateSample)->Arg(40)->Arg(400)->Arg(4000);

void BM_TestUniformity(benchmark::State& state) {
    Stream rng(2);
    const auto sample = simulate_sample(scheme(), 40, AlternativeFamily::lehmann(2).as_cdf(), rng);
    for (auto _ : state) benchmark::DoNotOptimize(test_uniformity(sample));
}
BENCHMARK(BM_TestUniformity);

void BM_CriticalValues(benchmark::State& state) {
    const McOptions options{static_cast<unsigned>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(critical_values(scheme(), 40, 0.05, 20000, 1, options));
    }
    state.SetItemsProcessed(state.iterations() * 20000);
}
BENCHMARK(BM_CriticalValues)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Power(benchmark::State& state) {
    const auto table = critical_values(scheme(), 40, 0.05, 20000, 1);
    const auto family = AlternativeFamily::centered(2.0);
    for (auto _ : state) benchmark::DoNotOptimize(power(scheme(), 40, table, family, 20000, 2));
    state.SetItemsProcessed(state.iterations() * 20000);
}
BENCHMARK(BM_Power)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
