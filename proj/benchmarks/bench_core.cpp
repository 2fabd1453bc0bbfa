#include <benchmark/benchmark.h>

#include <cmath>

#include "rrp/drivers.hpp"
#include "rrp/integral.hpp"
#include "rrp/solver.hpp"

namespace {

using namespace rrp;

GridPath<Vec> bench_path(std::size_t n) {
    auto grid = Grid::uniform(n, 1.0);
    std::vector<Vec> v;
    v.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = grid->time(i);
        v.push_back(Vec{std::sin(3.0 * t) + 0.4 * t, std::cos(5.0 * t)});
    }
    return GridPath<Vec>(grid, std::move(v));
}

void BM_HolderSeminormAllPairs(benchmark::State& state) {
    GridPath<Vec> p = bench_path(static_cast<std::size_t>(state.range(0)));
    PairBudget budget;
    budget.policy = PairBudget::Policy::AllPairs;
    for (auto _ : state) benchmark::DoNotOptimize(holder_seminorm(p, 0.45, budget).seminorm);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HolderSeminormAllPairs)->Range(256, 4096)->Complexity();

void BM_HolderSeminormDyadic(benchmark::State& state) {
    GridPath<Vec> p = bench_path(static_cast<std::size_t>(state.range(0)));
    PairBudget budget;
    budget.policy = PairBudget::Policy::Dyadic;
    for (auto _ : state) benchmark::DoNotOptimize(holder_seminorm(p, 0.45, budget).seminorm);
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HolderSeminormDyadic)->Range(1024, 65536)->Complexity();

void BM_SecondLevelQueries(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    ReducedRoughPath r = geometric_lift(bench_path(n), 0.45);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(r.second_level(i % (n / 2), n / 2 + i % (n / 2) + 1));
        ++i;
    }
}
BENCHMARK(BM_SecondLevelQueries)->Range(1024, 16384);

void BM_Integrate(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto base = std::make_shared<const ReducedRoughPath>(geometric_lift(bench_path(n), 0.45));
    std::vector<LinMap> y;
    std::vector<BilinMap> yp;
    for (std::size_t i = 0; i <= n; ++i) {
        const Vec& x = base->path().value(i);
        LinMap v(1, 2);
        v.at(0, 0) = std::sin(x[0]);
        v.at(0, 1) = x[1];
        y.push_back(std::move(v));
        BilinMap b(1, 2);
        b.at(0, 0, 0) = std::cos(x[0]);
        b.at(0, 1, 1) = 1.0;
        yp.push_back(std::move(b));
    }
    IntegrandPath c(base, GridPath<LinMap>(base->grid_ptr(), y),
                    GridPath<BilinMap>(base->grid_ptr(), yp));
    for (auto _ : state) benchmark::DoNotOptimize(integrate_values(c).value(n));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Integrate)->Range(1024, 65536)->Complexity();

void BM_FbmCirculant(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto grid = Grid::uniform(n, 1.0);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(gen_fbm({0.45, seed++, 1}, grid).path);
}
BENCHMARK(BM_FbmCirculant)->Range(256, 16384);

void BM_PicardSolve(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto grid = Grid::uniform(n, 1.0);
    std::vector<Vec> v;
    for (std::size_t i = 0; i <= n; ++i) v.push_back(Vec{grid->time(i)});
    auto base = std::make_shared<const ReducedRoughPath>(
        geometric_lift(GridPath<Vec>(grid, v), 0.45));
    SmoothFunction f = make_linear_field_1d(1.0);
    for (auto _ : state) {
        SolveReport rep = solve_global(Vec{1.0}, f, base, 0.5);
        benchmark::DoNotOptimize(rep.residual_norm);
    }
}
BENCHMARK(BM_PicardSolve)->Range(1024, 8192);

}  // namespace

BENCHMARK_MAIN();
