// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "ecgroups/curves.hpp"
#include "ecgroups/matrixcounts.hpp"
#include "ecgroups/oracle.hpp"
#include "ecgroups/parallel.hpp"
#include "ecgroups/quadforms.hpp"

namespace {

void BM_TallySerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(ecg::brute_force_tally_serial(state.range(0)));
}
void BM_TallyParallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(ecg::brute_force_tally(state.range(0)));
}
BENCHMARK(BM_TallySerial)->Arg(31)->Arg(61)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TallyParallel)->Arg(31)->Arg(61)->Unit(benchmark::kMillisecond);

void BM_FibresSerial(benchmark::State& state) {
    const int e = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(ecg::fiber_histogram_serial(state.range(0), e, 0));
}
void BM_FibresParallel(benchmark::State& state) {
    const int e = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(ecg::fiber_histogram(state.range(0), e, 0));
}
BENCHMARK(BM_FibresSerial)->Args({2, 4})->Args({3, 3})->Args({3, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FibresParallel)->Args({2, 4})->Args({3, 3})->Args({3, 4})->Unit(benchmark::kMillisecond);

// class numbers are cleared each round so both sides pay for the forms
void BM_CensusSerial(benchmark::State& state) {
    const ecg::GroupShape shape{1, state.range(0)};
    for (auto _ : state) {
        ecg::ClassNumberCache::global().clear();
        benchmark::DoNotOptimize(ecg::m_of_group_serial(shape));
    }
}
void BM_CensusParallel(benchmark::State& state) {
    const ecg::GroupShape shape{1, state.range(0)};
    for (auto _ : state) {
        ecg::ClassNumberCache::global().clear();
        benchmark::DoNotOptimize(ecg::m_of_group(shape));
    }
}
BENCHMARK(BM_CensusSerial)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CensusParallel)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
