#include "lneg/bernoulli.hpp"
#include "lneg/functional_equation.hpp"
#include "lneg/lvalue_eisenstein.hpp"
#include "lneg/number_theory.hpp"

#include <benchmark/benchmark.h>

using namespace lneg;

namespace {

std::int64_t fundamental_above(std::int64_t x) {
    while (!is_fundamental_discriminant(x)) ++x;
    return x;
}

void BM_SSum(benchmark::State& st) {
    std::int64_t D = fundamental_above(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(s_sum(SigmaKind::plain, 3, D, 4));
}
BENCHMARK(BM_SSum)->RangeMultiplier(100)->Range(10000, 100000000)->Unit(benchmark::kMillisecond);

void BM_Bernoulli(benchmark::State& st) {
    auto chi = DirichletCharacter::from_discriminant(fundamental_above(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(l_via_bernoulli(chi, 4));
}
BENCHMARK(BM_Bernoulli)->RangeMultiplier(10)->Range(1000, 100000)->Unit(benchmark::kMillisecond);

void BM_BernoulliWeight(benchmark::State& st) {
    auto chi = DirichletCharacter::from_discriminant(1001);
    unsigned k = static_cast<unsigned>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(l_via_bernoulli(chi, k));
}
BENCHMARK(BM_BernoulliWeight)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMillisecond);

void BM_FunctionalEquation(benchmark::State& st) {
    auto chi = DirichletCharacter::from_discriminant(1001);
    unsigned k = static_cast<unsigned>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(l_via_functional_equation(chi, k));
}
BENCHMARK(BM_FunctionalEquation)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMillisecond);

void BM_HalfIntegral(benchmark::State& st) {
    std::int64_t D = fundamental_above(st.range(0));
    CoefficientStore::global().get(CoefficientKind::half_even, 4, 4);
    for (auto _ : st) benchmark::DoNotOptimize(l_half_even(D, 4, 4));
}
BENCHMARK(BM_HalfIntegral)->RangeMultiplier(10)->Range(1000000, 1000000000)->Unit(benchmark::kMillisecond);

void BM_HeckeEven(benchmark::State& st) {
    std::int64_t D = fundamental_above(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(l_hecke_even(D, 4));
}
BENCHMARK(BM_HeckeEven)->RangeMultiplier(10)->Range(10000, 10000000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
