#include <sstream>

#include "doctest.h"
#include "hypersep/errors.hpp"
#include "hypersep/experiments.hpp"
#include "hypersep/separator.hpp"
#include "testutil.hpp"

using namespace hypersep;

TEST_CASE("generator parameters") {
    GeneratorParams p{6, 2, 2, 7};
    CHECK(p.q() == doctest::Approx(6.0 / 15.0));
    CHECK(GeneratorParams{6, 0, 2, 7}.q() == 0.0);
    CHECK(p.trim_threshold() == 11);  // ceil(2e * 2)
    CHECK(GeneratorParams{10, 3, 2, 0}.trim_threshold() == 17);
}

TEST_CASE("generator reproducibility and degree cap") {
    for (std::uint64_t seed : {1ull, 7ull, 42ull}) {
        GeneratorParams p{12, 3, 3, seed};
        auto a = random_uniform_hypergraph(p);
        auto b = random_uniform_hypergraph(p);
        CHECK(a == b);
        CHECK(max_degree(a) <= p.trim_threshold());
        for (const auto& e : a.edges) CHECK(e.size() == 3);
    }
    CHECK(random_uniform_hypergraph(GeneratorParams{8, 0, 2, 1}).m() == 0);
    CHECK_THROWS_AS(random_uniform_hypergraph(GeneratorParams{40, 2, 12, 1}), BudgetError);
}

TEST_CASE("generated edge counts concentrate near n*k/r") {
    // mean within 10% over many seeds (statistical, generous tolerance)
    const GeneratorParams base{6, 2, 2, 0};
    double total = 0;
    const int runs = 1000;
    for (int s = 0; s < runs; ++s) {
        GeneratorParams p = base;
        p.seed = static_cast<std::uint64_t>(s);
        total += random_uniform_hypergraph(p).m();
    }
    double mean = total / runs;
    double expected = 6.0 * 2.0 / 2.0;
    CHECK(mean > expected * 0.9);
    CHECK(mean < expected * 1.1);

    // and individual draws stay within +-25% of n*k/r in at least 90% of
    // 1000 trials once the expectation is a few dozen edges
    int close = 0;
    const double expected_m = 40.0 * 3.0 / 2.0;
    for (int s = 0; s < runs; ++s) {
        GeneratorParams p{40, 3, 2, static_cast<std::uint64_t>(s)};
        int m = random_uniform_hypergraph(p).m();
        if (m >= 0.75 * expected_m && m <= 1.25 * expected_m) ++close;
    }
    CHECK(close >= runs * 9 / 10);
}

TEST_CASE("minimum separator oracle on named instances") {
    CHECK(min_balanced_separator(testutil::path_graph(5)).size == 1);
    CHECK(min_balanced_separator(testutil::path_graph(5)).edges == std::vector<int>{2});

    auto star = make_hypergraph(5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}});
    CHECK(min_balanced_separator(star).size == 2);
    CHECK(min_balanced_separator(star).edges == std::vector<int>{1, 2});

    auto matching = make_hypergraph(6, {{1, 2}, {3, 4}, {5, 6}});
    CHECK(min_balanced_separator(matching).size == 0);

    CHECK(min_balanced_separator(Hypergraph{}).size == 0);
    CHECK_THROWS_AS(min_balanced_separator(testutil::path_graph(40), 20), BudgetError);
}

TEST_CASE("oracle agrees with full enumeration and exhaustive_separator") {
    Rng rng(8675309);
    for (int it = 0; it < 40; ++it) {
        auto h = testutil::random_hypergraph(rng, 10, 10, 3);
        auto mine = min_balanced_separator(h);
        CHECK(mine.size == testutil::oracle_min_separator(h));
        auto ex = exhaustive_separator(h, h.m());
        REQUIRE(ex.has_value());
        CHECK(static_cast<int>(ex->edges.size()) == mine.size);
        CHECK(ex->edges == mine.edges);  // both pick the lexicographically first witness
        CHECK(is_balanced_separator(h, mine.edges).first);
    }
}

TEST_CASE("oracle lower-bounds every separator method") {
    Rng rng(10101);
    for (int it = 0; it < 25; ++it) {
        auto h = testutil::random_hypergraph(rng, 10, 12, 3);
        int lower = min_balanced_separator(h).size;
        int r = 2, k = std::max(1, max_degree(h));
        for (const auto& e : h.edges) r = std::max(r, static_cast<int>(e.size()));
        auto uni = uniformize(h, r, k);
        auto res = random_separator(uni.graph, SeparatorParams::make(r, k, std::max(1, uni.graph.n)),
                                    it);
        CHECK(static_cast<int>(res.edges.size()) >= lower);
        if (auto vc = vertex_cut_separator(h, h.m()))
            CHECK(static_cast<int>(vc->edges.size()) >= lower);
    }
}

TEST_CASE("induced regularity sampler reports ratios near one") {
    GeneratorParams p{16, 4, 2, 3};
    auto h = random_uniform_hypergraph(p);
    auto s = sample_induced_regularity(h, 2, 0.5, 200, 17);
    CHECK(s.samples == 200);
    CHECK(s.mean_ratio > 0.4);
    CHECK(s.mean_ratio < 2.5);
    CHECK(s.min_ratio <= s.mean_ratio);
    CHECK(s.max_ratio >= s.mean_ratio);

    auto again = sample_induced_regularity(h, 2, 0.5, 200, 17);
    CHECK(again.mean_ratio == s.mean_ratio);  // seeded, reproducible

    CHECK(sample_induced_regularity(make_hypergraph(3, {}), 2, 0.5, 10, 1).samples == 0);
}

TEST_CASE("tightness experiment: determinism, schema, row order") {
    ExperimentSweep sweep;
    sweep.r = 2;
    sweep.n_values = {8, 10};
    sweep.k_values = {2, 3};
    sweep.instances_per_cell = 3;
    sweep.seed = 99;
    auto a = tightness_experiment(sweep);
    auto b = tightness_experiment(sweep);
    CHECK(to_csv(a) == to_csv(b));
    CHECK(a.rows.size() == 2 * 2 * 3);

    // parallel execution returns identical rows in identical order
    sweep.jobs = 4;
    CHECK(to_csv(tightness_experiment(sweep)) == to_csv(a));

    // rows follow the sweep order and carry consistent derived columns
    size_t i = 0;
    for (int n : {8, 10})
        for (int k : {2, 3})
            for (int inst = 0; inst < 3; ++inst, ++i) {
                const auto& row = a.rows[i];
                CHECK(row.n == n);
                CHECK(row.k == k);
                CHECK(row.r == 2);
                CHECK(row.theory_bound ==
                      doctest::Approx((0.5 - epsilon_r(2)) * row.m));
                if (row.m > 0)
                    CHECK(row.ratio == doctest::Approx(static_cast<double>(row.min_sep) / row.m));
            }

    std::string csv = to_csv(a);
    CHECK(csv.rfind("n,k,r,m,max_degree,min_sep,theory_bound,ratio,seed\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 12);

    ExperimentSweep empty;
    empty.n_values = {};
    CHECK(to_csv(tightness_experiment(empty)) ==
          "n,k,r,m,max_degree,min_sep,theory_bound,ratio,seed\n");
}
