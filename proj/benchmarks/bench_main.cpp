#include <benchmark/benchmark.h>

#include "hypersep/csp.hpp"
#include "hypersep/experiments.hpp"
#include "hypersep/refutation.hpp"
#include "hypersep/separator.hpp"
#include "hypersep/tseitin.hpp"

namespace {

using namespace hypersep;

Hypergraph bench_instance(int n, int k, int r, std::uint64_t seed) {
    return random_uniform_hypergraph(GeneratorParams{n, k, r, seed});
}

Csp cycle_csp(int n, int d) {
    std::vector<Constraint> constraints;
    for (int i = 1; i <= n; ++i) {
        Constraint c;
        c.scope = {i, i % n + 1};
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                if (a != b) c.allowed.push_back({a, b});
        constraints.push_back(std::move(c));
    }
    return make_csp(n, d, std::move(constraints));
}

void BM_random_separator(benchmark::State& state) {
    auto h = bench_instance(static_cast<int>(state.range(0)), 3, 3, 11);
    auto uni = uniformize(h, 3, max_degree(h) > 0 ? max_degree(h) : 1);
    auto params = SeparatorParams::make(3, std::max(1, max_degree(uni.graph)),
                                        std::max(1, uni.graph.n));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto res = random_separator(uni.graph, params, seed++);
        benchmark::DoNotOptimize(res.edges.data());
    }
}
BENCHMARK(BM_random_separator)->Arg(30)->Arg(60)->Arg(120);

void BM_exhaustive_separator(benchmark::State& state) {
    auto h = bench_instance(static_cast<int>(state.range(0)), 2, 2, 5);
    for (auto _ : state) {
        auto res = exhaustive_separator(h, h.m());
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_exhaustive_separator)->Arg(8)->Arg(10)->Arg(12);

void BM_min_separator_oracle(benchmark::State& state) {
    auto h = bench_instance(static_cast<int>(state.range(0)), 3, 2, 21);
    for (auto _ : state) {
        auto res = min_balanced_separator(h, 40);
        benchmark::DoNotOptimize(res.size);
    }
}
BENCHMARK(BM_min_separator_oracle)->Arg(10)->Arg(12)->Arg(14);

void BM_solve_count(benchmark::State& state) {
    auto csp = cycle_csp(static_cast<int>(state.range(0)), 3);
    SolveOptions opts;
    for (auto _ : state) {
        auto ans = solve(csp, SolveMode::count, opts);
        benchmark::DoNotOptimize(ans.count);
    }
}
BENCHMARK(BM_solve_count)->Arg(8)->Arg(12);

void BM_brute_force_count(benchmark::State& state) {
    auto csp = cycle_csp(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) {
        auto ans = brute_force(csp, SolveMode::count);
        benchmark::DoNotOptimize(ans.count);
    }
}
BENCHMARK(BM_brute_force_count)->Arg(8)->Arg(12);

void BM_refute_tseitin(benchmark::State& state) {
    // cube graph; 3-regular, exercises the vertex-cut separator path
    std::vector<Edge> edges = {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {5, 6}, {6, 7},
                               {7, 8}, {5, 8}, {1, 5}, {2, 6}, {3, 7}, {4, 8}};
    auto g = make_hypergraph(8, edges);
    auto lambda = odd_charge(8);
    for (auto _ : state) {
        auto res = refute_tseitin(g, lambda);
        benchmark::DoNotOptimize(res.stats.leaves);
    }
}
BENCHMARK(BM_refute_tseitin);

}  // namespace

BENCHMARK_MAIN();
