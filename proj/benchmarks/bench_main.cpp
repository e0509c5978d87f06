#include <benchmark/benchmark.h>

#include "harmonic/diophantine.hpp"
#include "harmonic/expsums.hpp"
#include "harmonic/phase.hpp"

namespace {

void BM_reduce_phase_mpfr(benchmark::State& state) {
    const harmonic::HarmonicExponent exp(2.5);
    std::int64_t n = 1000000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(harmonic::reduce_phase(n, exp, 0.3));
        n += 7;
    }
}
BENCHMARK(BM_reduce_phase_mpfr);

void BM_pow_table_frac(benchmark::State& state) {
    const harmonic::HarmonicExponent exp(2.5);
    const harmonic::PowTable table(100000, exp);
    std::int64_t n = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(table.frac_mul(n, 0.3));
        n = n % 100000 + 1;
    }
}
BENCHMARK(BM_pow_table_frac);

void BM_exp_sum(benchmark::State& state) {
    const harmonic::HarmonicExponent exp(0.5);
    const harmonic::PowTable table(state.range(0), exp);
    for (auto _ : state)
        benchmark::DoNotOptimize(harmonic::exp_sum(table, 0.3, state.range(0)));
}
BENCHMARK(BM_exp_sum)->Arg(1 << 10)->Arg(1 << 14);

void BM_squarefree_sieve(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(harmonic::squarefree_sieve(state.range(0)));
}
BENCHMARK(BM_squarefree_sieve)->Arg(1 << 20);

}  // namespace

BENCHMARK_MAIN();
