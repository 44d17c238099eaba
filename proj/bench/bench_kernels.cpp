#include <benchmark/benchmark.h>

#include "kbp/datagen.hpp"
#include "kbp/allocation.hpp"
#include "kbp/greedy.hpp"
#include "kbp/simulation.hpp"

using namespace kbp;

namespace {

Instance random_instance(std::size_t n)
{
    Rng rng(7);
    std::uniform_int_distribution<std::int64_t> d(1, 1'000'000);
    std::vector<Size> sizes(n);
    for (Size& s : sizes) s = Size::micro(d(rng));
    return Instance(std::move(sizes), Size::micro(1'000'000));
}

void ffk_kernel(benchmark::State& state, Search search)
{
    const Instance inst = random_instance(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(ffk(inst, 10, search));
    state.SetItemsProcessed(state.iterations() * state.range(0) * 10);
}

void BM_ffk_linear(benchmark::State& state) { ffk_kernel(state, Search::linear); }
void BM_ffk_tree(benchmark::State& state) { ffk_kernel(state, Search::tree); }

const DemandSeries& series()
{
    static const DemandSeries s = [] {
        Rng rng(11);
        return generate_timeseries(367, 2 * hours_per_week, rng);
    }();
    return s;
}

void hours_kernel(benchmark::State& state, bool parallel)
{
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(bins_per_hour(series(), k, Backend::ffk, parallel));
}

void BM_hours_serial(benchmark::State& state) { hours_kernel(state, false); }
void BM_hours_parallel(benchmark::State& state) { hours_kernel(state, true); }

}  // namespace

BENCHMARK(BM_ffk_linear)->Arg(500)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ffk_tree)->Arg(500)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hours_serial)->Arg(5)->Arg(25)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_hours_parallel)->Arg(5)->Arg(25)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
