#include <benchmark/benchmark.h>

#include "ladder/classify.hpp"
#include "ladder/laurent.hpp"
#include "ladder/rng.hpp"
#include "ladder/simulate.hpp"

using namespace ladder;

namespace {

IntMatrix random_matrix(std::size_t n, std::uint64_t seed, unsigned max_entry) {
    Xoshiro256 rng(seed);
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = static_cast<unsigned long>(rng.next() % (max_entry + 1));
    return m;
}

IntMatrix big_matrix(std::size_t n) {
    IntMatrix m = random_matrix(n, 7, 9);
    return mat_pow(m, 40);  // entries with a few hundred digits
}

void BM_MatMulSerial(benchmark::State& st) {
    IntMatrix a = big_matrix(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(serial::mat_mul(a, a));
}

void BM_MatMulParallel(benchmark::State& st) {
    IntMatrix a = big_matrix(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(mat_mul(a, a));
}

LaurentBlockMatrix random_laurent(std::size_t d, int band, std::uint64_t seed) {
    LaurentBlockMatrix L(d);
    for (int s = -band; s <= band; ++s) L.set(s, random_matrix(d, seed + static_cast<std::uint64_t>(s + band), 3));
    return L;
}

void BM_LaurentMulSerial(benchmark::State& st) {
    LaurentBlockMatrix a = laurent_pow(random_laurent(6, 2, 11), 6);
    for (auto _ : st) benchmark::DoNotOptimize(serial::laurent_mul(a, a));
}

void BM_LaurentMulParallel(benchmark::State& st) {
    LaurentBlockMatrix a = laurent_pow(random_laurent(6, 2, 11), 6);
    for (auto _ : st) benchmark::DoNotOptimize(laurent_mul(a, a));
}

ShiftChain bench_chain() {
    IntMatrix a = random_matrix(12, 5, 2);
    return {a.transpose(), mat_add(a, a.transpose()), a};
}

void BM_ReturnCountsLaurent(benchmark::State& st) {
    ShiftChain c = bench_chain();
    for (auto _ : st) benchmark::DoNotOptimize(serial::return_counts(c, 0, 32));
}

void BM_ReturnCountsPropagatedSerial(benchmark::State& st) {
    ShiftChain c = bench_chain();
    for (auto _ : st) benchmark::DoNotOptimize(serial::return_counts_propagated(c, 0, 64));
}

void BM_ReturnSeriesParallel(benchmark::State& st) {
    ShiftChain c = bench_chain();
    PerronData pd = perron_eigenpair(c.base());
    for (auto _ : st) benchmark::DoNotOptimize(return_series(c, pd, 0, 0, 64));
}

StochasticChain srw() {
    StochasticChain c{RealMatrix(1, 1), RealMatrix(1, 1), RealMatrix(1, 1)};
    c.minus.at(0, 0) = 0.5;
    c.plus.at(0, 0) = 0.5;
    return c;
}

void BM_ReturnStatsSerial(benchmark::State& st) {
    StochasticChain c = srw();
    for (auto _ : st) benchmark::DoNotOptimize(serial::return_stats(c, {0, 0}, 10000, 200, 42));
}

void BM_ReturnStatsParallel(benchmark::State& st) {
    StochasticChain c = srw();
    for (auto _ : st) benchmark::DoNotOptimize(return_stats(c, {0, 0}, 10000, 200, 42));
}

}  // namespace

BENCHMARK(BM_MatMulSerial)->Arg(8)->Arg(16);
BENCHMARK(BM_MatMulParallel)->Arg(8)->Arg(16);
BENCHMARK(BM_LaurentMulSerial);
BENCHMARK(BM_LaurentMulParallel);
BENCHMARK(BM_ReturnCountsLaurent);
BENCHMARK(BM_ReturnCountsPropagatedSerial);
BENCHMARK(BM_ReturnSeriesParallel);
BENCHMARK(BM_ReturnStatsSerial);
BENCHMARK(BM_ReturnStatsParallel);
BENCHMARK_MAIN();
