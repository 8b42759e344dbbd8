#include "starforge/build.hpp"
#include "starforge/compare.hpp"
#include "starforge/star.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace starforge;

namespace {

TruncSeries random_unit(std::mt19937_64& rng, int trunc) {
    std::uniform_int_distribution<int> d(-9, 9);
    Vec c(trunc);
    for (auto& x : c) x = Scalar(d(rng), 1 + (d(rng) + 9) % 5);
    c[0] = 1 + (d(rng) + 9);
    return TruncSeries(std::move(c));
}

void BM_SeriesMul(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const int n = static_cast<int>(state.range(0));
    const TruncSeries a = random_unit(rng, n), b = random_unit(rng, n);
    for (auto _ : state) benchmark::DoNotOptimize(series_mul(a, b));
}
BENCHMARK(BM_SeriesMul)->Arg(4)->Arg(12)->Arg(32);

void BM_SeriesInverse(benchmark::State& state) {
    std::mt19937_64 rng(2);
    const TruncSeries a = random_unit(rng, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(series_inverse(a));
}
BENCHMARK(BM_SeriesInverse)->Arg(4)->Arg(12)->Arg(32);

void BM_LinearSpaceIntersect(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> d(-3, 3);
    const int n = static_cast<int>(state.range(0));
    auto rows = [&] {
        std::vector<Vec> r(n / 2, Vec(n));
        for (auto& v : r)
            for (auto& x : v) x = d(rng);
        return r;
    };
    const LinearSpace a = LinearSpace::span(n, rows()), b = LinearSpace::span(n, rows());
    for (auto _ : state) benchmark::DoNotOptimize(a.sum(b).dim() + a.intersect(b).dim());
}
BENCHMARK(BM_LinearSpaceIntersect)->Arg(8)->Arg(24)->Arg(48);

void BM_RandomTower(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(random_tower(++seed, static_cast<int>(state.range(0)), 3));
}
BENCHMARK(BM_RandomTower)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_UnitConstants(benchmark::State& state) {
    const Presentation s = random_tower(7, static_cast<int>(state.range(0)), 3).star;
    for (auto _ : state) benchmark::DoNotOptimize(unit_constants(s));
}
BENCHMARK(BM_UnitConstants)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_StepQuotient(benchmark::State& state) {
    Tower t = random_tower(5, static_cast<int>(state.range(0)), 3);
    const ExtensionStep last = t.steps.back();
    t.steps.pop_back();
    const Presentation s = replay(make_congruence_pair_star(t.base_p), t.steps);
    for (auto _ : state) benchmark::DoNotOptimize(quotient(s, last));
}
BENCHMARK(BM_StepQuotient)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Compare(benchmark::State& state) {
    const Presentation s = random_tower(9, 5, 3).star;
    const Presentation sub = deepen(s, 1, 1);
    for (auto _ : state) benchmark::DoNotOptimize(compare_stars(sub, s));
}
BENCHMARK(BM_Compare)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
