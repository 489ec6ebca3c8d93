#include <sstream>

#include "doctest.h"
#include "hypersep/errors.hpp"
#include "hypersep/refutation.hpp"
#include "hypersep/separator.hpp"
#include "testutil.hpp"

using namespace hypersep;

namespace {

// Complete binary decision tree over the given variables; every path ends in
// the first clause it falsifies. Used to build known-good trees by hand.
DecisionTree full_tree(const Cnf& cnf, const std::vector<int>& vars) {
    DecisionTree tree;
    tree.domain = 2;
    std::vector<int> value(static_cast<size_t>(cnf.num_vars) + 1, -1);
    std::function<int(size_t)> go = [&](size_t i) -> int {
        for (size_t ci = 0; ci < cnf.clauses.size(); ++ci)
            if (clause_falsified(cnf.clauses[ci], value))
                return tree.add_leaf(static_cast<int>(ci) + 1);
        REQUIRE(i < vars.size());
        int node = tree.add_internal(vars[i]);
        for (int b = 0; b < 2; ++b) {
            value[static_cast<size_t>(vars[i])] = b;
            int child = go(i + 1);
            tree.nodes[static_cast<size_t>(node)].children.push_back(child);
        }
        value[static_cast<size_t>(vars[i])] = -1;
        return node;
    };
    go(0);
    return tree;
}

Cnf contradiction_pair() {
    Cnf cnf;
    cnf.num_vars = 1;
    cnf.clauses = {{1}, {-1}};
    return cnf;
}

}  // namespace

TEST_CASE("check_dtree validates named trees") {
    // CNF with only the empty clause: the single-leaf tree is valid
    Cnf empty;
    empty.num_vars = 0;
    empty.clauses = {{}};
    DecisionTree lone;
    lone.add_leaf(1);
    CHECK(check_dtree(empty, lone).ok);

    auto pair = contradiction_pair();
    DecisionTree good;
    int root = good.add_internal(1);
    good.nodes[static_cast<size_t>(root)].children = {good.add_leaf(1), good.add_leaf(2)};
    CHECK(check_dtree(pair, good).ok);

    DecisionTree swapped;
    root = swapped.add_internal(1);
    swapped.nodes[static_cast<size_t>(root)].children = {swapped.add_leaf(2), swapped.add_leaf(1)};
    auto res = check_dtree(pair, swapped);
    CHECK_FALSE(res.ok);
    CHECK(res.message.find("falsify") != std::string::npos);
}

TEST_CASE("check_dtree rejects repeated queries and malformed shapes") {
    auto pair = contradiction_pair();
    DecisionTree repeat;
    int a = repeat.add_internal(1);
    int b = repeat.add_internal(1);
    repeat.nodes[static_cast<size_t>(a)].children = {b, repeat.add_leaf(2)};
    repeat.nodes[static_cast<size_t>(b)].children = {repeat.add_leaf(1), repeat.add_leaf(1)};
    CHECK_FALSE(check_dtree(pair, repeat).ok);

    DecisionTree missing_child;
    int r = missing_child.add_internal(1);
    missing_child.nodes[static_cast<size_t>(r)].children = {missing_child.add_leaf(1)};
    CHECK_FALSE(check_dtree(pair, missing_child).ok);

    DecisionTree bad_leaf;
    bad_leaf.add_leaf(7);
    CHECK_FALSE(check_dtree(pair, bad_leaf).ok);
}

TEST_CASE("check_dtree in CSP mode uses table falsification") {
    auto csp = testutil::triangle_neq_csp(2);
    DecisionTree tree;
    int root = tree.add_internal(1);
    int left = tree.add_internal(2);
    int right = tree.add_internal(2);
    tree.nodes[static_cast<size_t>(root)].children = {left, right};
    // under x1=0: x2=0 falsifies constraint 1, x2=1 forces x3 both ways -> query x3
    int ll = tree.add_leaf(1);
    int lr = tree.add_internal(3);
    tree.nodes[static_cast<size_t>(left)].children = {ll, lr};
    tree.nodes[static_cast<size_t>(lr)].children = {tree.add_leaf(3), tree.add_leaf(2)};
    int rl = tree.add_internal(3);
    tree.nodes[static_cast<size_t>(right)].children = {rl, tree.add_leaf(1)};
    tree.nodes[static_cast<size_t>(rl)].children = {tree.add_leaf(2), tree.add_leaf(3)};
    CHECK(check_dtree(csp, tree).ok);
}

TEST_CASE("dtree_to_resolution on the contradiction pair") {
    auto pair = contradiction_pair();
    auto tree = full_tree(pair, {1});
    auto trace = dtree_to_resolution(pair, tree);
    REQUIRE(trace.steps.size() == 3);
    CHECK(trace.steps[0].axiom);
    CHECK(trace.steps[1].axiom);
    CHECK_FALSE(trace.steps[2].axiom);
    CHECK(trace.steps[2].pivot == 1);
    CHECK(trace.steps[2].clause.empty());
    CHECK(check_resolution(pair, trace).ok);
}

TEST_CASE("dtree_to_resolution on a single-leaf empty-clause tree") {
    Cnf empty;
    empty.num_vars = 0;
    empty.clauses = {{}};
    DecisionTree lone;
    lone.add_leaf(1);
    auto trace = dtree_to_resolution(empty, lone);
    REQUIRE(trace.steps.size() == 1);
    CHECK(trace.steps[0].axiom);
    CHECK(trace.steps[0].clause.empty());
    CHECK(check_resolution(empty, trace).ok);
}

TEST_CASE("dtree_to_resolution: triangle Tseitin full tree stays within 2L-1") {
    auto enc = tseitin_cnf(make_tseitin(testutil::triangle_graph(), make_charge(3, {{1, 1}})));
    auto tree = full_tree(enc.cnf, {1, 2, 3});
    REQUIRE(check_dtree(enc.cnf, tree).ok);
    auto trace = dtree_to_resolution(enc.cnf, tree);
    CHECK(check_resolution(enc.cnf, trace).ok);
    CHECK(trace.steps.size() <= 15);
    CHECK(static_cast<long long>(trace.steps.size()) <= 2 * count_leaves(tree) - 1);
    CHECK(trace.steps.back().clause.empty());

    CHECK_THROWS_AS(dtree_to_resolution(enc.cnf, DecisionTree{}), std::invalid_argument);
}

TEST_CASE("check_resolution rejects corrupted traces") {
    auto pair = contradiction_pair();
    auto good = dtree_to_resolution(pair, full_tree(pair, {1}));

    auto leftover = good;
    leftover.steps[2].clause = {1};  // pivot literal left in the resolvent
    auto r1 = check_resolution(pair, leftover);
    CHECK_FALSE(r1.ok);
    CHECK(r1.message.find("step 3") != std::string::npos);

    auto reuse = good;
    reuse.steps.push_back({4, false, 1, 2, 1, {}});
    // antecedents 1 and 2 are now each used twice
    CHECK_FALSE(check_resolution(pair, reuse).ok);

    auto bad_axiom = good;
    bad_axiom.steps[0].clause = {1, -1};
    CHECK_FALSE(check_resolution(pair, bad_axiom).ok);

    auto gap = good;
    gap.steps[1].id = 5;
    CHECK_FALSE(check_resolution(pair, gap).ok);

    auto nonempty_end = good;
    nonempty_end.steps.pop_back();
    CHECK_FALSE(check_resolution(pair, nonempty_end).ok);
}

TEST_CASE("refute_csp2 on the triangle Tseitin CSP") {
    auto csp = tseitin_csp(make_tseitin(testutil::triangle_graph(), make_charge(3, {{1, 1}})));
    auto res = refute_csp2(csp);
    CHECK(check_dtree(res.cnf, res.tree).ok);
    CHECK(check_resolution(res.cnf, res.trace).ok);
    CHECK(res.stats.depth <= 3);
    CHECK(res.stats.proof_size <= 2 * res.stats.leaves - 1);
    REQUIRE(res.stats.separators_used.size() == 1);
    CHECK(res.stats.separators_used[0].first == 3);
}

TEST_CASE("refute_csp2 on K4 Tseitin stays within the savings-flavored depth bound") {
    auto k4 = testutil::complete_graph(4);
    auto csp = tseitin_csp(make_tseitin(k4, odd_charge(4)));
    RefuteOptions opts;
    opts.seed = 5;
    auto res = refute_csp2(csp, opts);
    CHECK(check_dtree(res.cnf, res.tree).ok);
    CHECK(check_resolution(res.cnf, res.trace).ok);
    // depth <= |R| + ceil(m/2) with |R| within the separator bound
    auto params = SeparatorParams::make(2, 3, 4);  // frequency 2, max arity 3, 4 constraints
    CHECK(res.stats.depth <= (1.0 - epsilon_r(2)) * 6 + 3.0 * params.slack);
}

TEST_CASE("refute_csp2 descends into one part of a disconnected input") {
    auto one = tseitin_csp(make_tseitin(testutil::triangle_graph(), make_charge(3, {{1, 1}})));
    std::vector<Constraint> cs = one.constraints;
    for (auto c : one.constraints) {
        for (int& v : c.scope) v += 3;
        cs.push_back(c);
    }
    auto both = make_csp(6, 2, cs);
    auto res = refute_csp2(both);
    CHECK(check_dtree(res.cnf, res.tree).ok);
    CHECK(check_resolution(res.cnf, res.trace).ok);
    CHECK(res.stats.depth <= 3);  // only one triangle is entered
}

TEST_CASE("refute_csp2 raises a witnessed error on satisfiable input") {
    auto sat = testutil::triangle_neq_csp(2);
    sat.constraints.pop_back();
    auto csp = make_csp(3, 2, sat.constraints);
    CHECK_THROWS_AS(refute_csp2(csp), SatisfiableError);
    try {
        refute_csp2(csp);
    } catch (const SatisfiableError& e) {
        REQUIRE(e.witness().size() == 4);
        PartialAssignment w;
        for (int v = 1; v <= 3; ++v) w[v] = e.witness()[static_cast<size_t>(v)];
        for (const auto& c : csp.constraints) {
            std::vector<int> tuple;
            for (int v : c.scope) tuple.push_back(w[v]);
            CHECK(std::binary_search(c.allowed.begin(), c.allowed.end(), tuple));
        }
    }
}

TEST_CASE("refute_csp2 handles fuzzed unsatisfiable instances") {
    Rng rng(515151);
    int done = 0;
    for (int it = 0; it < 200 && done < 25; ++it) {
        auto csp = testutil::random_csp(rng, 9, 2, 3, 3, 9, 0.4);
        if (brute_force(csp, SolveMode::decide).satisfiable) continue;
        ++done;
        RefuteOptions opts;
        opts.seed = it;
        opts.exhaustive_separator = (it % 2 == 0);
        auto res = refute_csp2(csp, opts);
        CHECK(check_dtree(res.cnf, res.tree).ok);
        CHECK(check_resolution(res.cnf, res.trace).ok);
        CHECK(res.stats.proof_size <= 2 * res.stats.leaves - 1);
        CHECK(res.stats.leaves <= (1ll << tree_depth(res.tree)));
    }
    CHECK(done == 25);
}

TEST_CASE("refute_tseitin: triangle") {
    auto res = refute_tseitin(testutil::triangle_graph(), make_charge(3, {{1, 1}}));
    CHECK(check_dtree(res.cnf, res.tree).ok);
    CHECK(check_resolution(res.cnf, res.trace).ok);
    CHECK(res.stats.leaves <= 8);
    CHECK(res.stats.proof_size <= 2 * res.stats.leaves - 1);
}

TEST_CASE("refute_tseitin: single edge has a leaf child") {
    auto g = make_hypergraph(2, {{1, 2}});
    auto res = refute_tseitin(g, odd_charge(2));
    CHECK(check_dtree(res.cnf, res.tree).ok);
    CHECK(res.stats.leaves == 2);
    const auto& root = res.tree.nodes[0];
    REQUIRE_FALSE(root.is_leaf);
    bool has_leaf_child = false;
    for (int c : root.children)
        if (res.tree.nodes[static_cast<size_t>(c)].is_leaf) has_leaf_child = true;
    CHECK(has_leaf_child);
}

TEST_CASE("refute_tseitin: degree-one rule fires on long paths") {
    auto g = testutil::path_graph(9);  // 8 edges, threshold 2*sqrt(8) < 8
    auto res = refute_tseitin(g, odd_charge(9));
    CHECK(check_dtree(res.cnf, res.tree).ok);
    CHECK(check_resolution(res.cnf, res.trace).ok);
    // each degree-1 query kills one side immediately, so the tree stays tiny
    CHECK(res.stats.leaves <= 2 * 8);
}

TEST_CASE("refute_tseitin: 3-regular on 8 vertices exercises the separator path") {
    // cube graph: 3-regular, 12 edges, k*sqrt(m) = 3*sqrt(12) < 12
    std::vector<Edge> edges = {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {5, 6}, {6, 7},
                               {7, 8}, {5, 8}, {1, 5}, {2, 6}, {3, 7}, {4, 8}};
    auto g = make_hypergraph(8, edges);
    REQUIRE(max_degree(g) == 3);
    auto res = refute_tseitin(g, odd_charge(8));
    CHECK(check_dtree(res.cnf, res.tree).ok);
    CHECK(check_resolution(res.cnf, res.trace).ok);
    CHECK_FALSE(res.stats.separators_used.empty());
    CHECK(res.stats.leaves <=
          std::pow(2.0, tseitin_leaf_bound_log2(g.m(), max_degree(g), g.m())));
}

TEST_CASE("refute_tseitin rejects malformed inputs") {
    CHECK_THROWS_AS(refute_tseitin(make_hypergraph(3, {{1, 2, 3}}), odd_charge(3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(refute_tseitin(make_hypergraph(2, {{1, 2}, {1, 2}}), odd_charge(2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(refute_tseitin(testutil::triangle_graph(), make_charge(3, {})),
                    SatisfiableError);
}

TEST_CASE("refute_tseitin query choices ignore the charge labeling") {
    Rng rng(616161);
    for (int it = 0; it < 10; ++it) {
        auto g = testutil::random_connected_graph(rng, 7, 4, 4);
        auto a = refute_tseitin(g, odd_charge(g.n));
        std::vector<std::pair<int, int>> charges{{1, 1}, {2, 1}, {g.n, 1}};
        auto lam2 = make_charge(g.n, charges);
        if (!is_odd_charge(lam2)) continue;
        auto b = refute_tseitin(g, lam2);
        for (const auto& [eset, edge] : a.query_log) {
            auto it2 = b.query_log.find(eset);
            if (it2 != b.query_log.end()) CHECK(it2->second == edge);
        }
    }
}

TEST_CASE("refute_tseitin leaf counts satisfy the inductive budget on random graphs") {
    Rng rng(717171);
    for (int it = 0; it < 20; ++it) {
        auto g = testutil::random_connected_graph(rng, rng.uniform_int(3, 9), 4,
                                                  rng.uniform_int(0, 5));
        auto res = refute_tseitin(g, odd_charge(g.n));
        CHECK(check_dtree(res.cnf, res.tree).ok);
        CHECK(check_resolution(res.cnf, res.trace).ok);
        int k = std::max(1, max_degree(g));
        CHECK(std::log2(static_cast<double>(res.stats.leaves)) <=
              tseitin_leaf_bound_log2(g.m(), k, g.m()));
        CHECK(res.stats.proof_width <= res.stats.depth + k);
    }
}

TEST_CASE("decision tree format round trip") {
    auto enc = tseitin_cnf(make_tseitin(testutil::triangle_graph(), make_charge(3, {{1, 1}})));
    auto tree = full_tree(enc.cnf, {1, 2, 3});
    std::stringstream ss;
    write_dtree(ss, tree);
    auto back = parse_dtree(ss);
    CHECK(back.domain == tree.domain);
    REQUIRE(back.nodes.size() == tree.nodes.size());
    CHECK(check_dtree(enc.cnf, back).ok);

    auto parse = [](const std::string& text) {
        std::stringstream s(text);
        return parse_dtree(s);
    };
    CHECK_THROWS_AS(parse("p dt 2\nn 1\nl 1\n"), ParseError);         // missing child
    CHECK_THROWS_AS(parse("p dt 2\nl 1\nl 2\n"), ParseError);         // extra node
    CHECK_THROWS_AS(parse("n 1\n"), ParseError);                      // no header
    CHECK(parse("p dt 2\nn 1\nl 1\nl 2\n").nodes.size() == 3);
    CHECK(parse("p dt 3\nn 1\nl 1\nl 2\nl 3\n").nodes.size() == 4);
}

TEST_CASE("resolution trace format round trip") {
    auto pair = contradiction_pair();
    auto trace = dtree_to_resolution(pair, full_tree(pair, {1}));
    std::stringstream ss;
    write_restrace(ss, trace);
    auto back = parse_restrace(ss);
    REQUIRE(back.steps.size() == trace.steps.size());
    for (size_t i = 0; i < back.steps.size(); ++i) {
        CHECK(back.steps[i].id == trace.steps[i].id);
        CHECK(back.steps[i].axiom == trace.steps[i].axiom);
        CHECK(back.steps[i].clause == trace.steps[i].clause);
    }
    CHECK(check_resolution(pair, back).ok);

    auto parse = [](const std::string& text) {
        std::stringstream s(text);
        return parse_restrace(s);
    };
    CHECK_THROWS_AS(parse("1 a 1\n"), ParseError);     // missing terminator
    CHECK_THROWS_AS(parse("1 q 0\n"), ParseError);     // unknown kind
    CHECK_THROWS_AS(parse("1 r 1 2 0\n"), ParseError); // truncated resolution step
    CHECK_THROWS_AS(parse(""), ParseError);            // empty
}
