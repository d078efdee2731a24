#include <benchmark/benchmark.h>

#include "asymdof/alignment.hpp"
#include "asymdof/oracle.hpp"
#include "asymdof/region.hpp"

using namespace asymdof;

namespace {

const NetworkDims kDims = make_dims(Rational(45), Rational(36));
const DofTuple kTarget{{Rational(18), Rational(24), Rational(18)}};

void BM_Classify(benchmark::State& state) {
    const auto d = make_dims(parse_rational("11.25"), Rational(9));
    for (auto _ : state) benchmark::DoNotOptimize(classify(d));
}
BENCHMARK(BM_Classify);

void BM_AllocationSearch(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(allocation_search(kDims, kTarget));
}
BENCHMARK(BM_AllocationSearch)->Unit(benchmark::kMillisecond);

void BM_Frontier(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(achievable_frontier(kDims));
}
BENCHMARK(BM_Frontier)->Unit(benchmark::kMillisecond);

void BM_ChainNullspace(benchmark::State& state) {
    const auto ch = sample_channels(kDims, 1);
    const auto chain = build_chain(1, 4);
    for (auto _ : state) benchmark::DoNotOptimize(chain_nullspace(chain, ch));
}
BENCHMARK(BM_ChainNullspace)->Unit(benchmark::kMillisecond);

void BM_VerifyTrial(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(verify_point(kDims, kTarget, 1, seed++));
}
BENCHMARK(BM_VerifyTrial)->Unit(benchmark::kMillisecond);

void BM_OracleRun(benchmark::State& state) {
    const auto d = make_dims(Rational(3), Rational(2));
    const DofTuple t{{Rational(1), Rational(1), Rational(1)}};
    const auto ch = sample_channels(d, 1);
    for (auto _ : state) benchmark::DoNotOptimize(leakage_minimize(d, t, ch));
}
BENCHMARK(BM_OracleRun)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
