#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "hypersep/csp.hpp"
#include "hypersep/hypergraph.hpp"
#include "hypersep/rng.hpp"
#include "hypersep/tseitin.hpp"

namespace testutil {

using namespace hypersep;

// ---- independent oracles (kept free of the production code paths) ----

// Component decomposition by boolean transitive closure over vertices.
inline std::vector<std::vector<int>> closure_components(const Hypergraph& h) {
    const int n = h.n;
    std::vector<std::vector<char>> reach(static_cast<size_t>(n) + 1,
                                         std::vector<char>(static_cast<size_t>(n) + 1, 0));
    for (int v = 1; v <= n; ++v) reach[v][v] = 1;
    for (const auto& e : h.edges)
        for (int a : e)
            for (int b : e) reach[a][b] = 1;
    for (int k = 1; k <= n; ++k)
        for (int i = 1; i <= n; ++i)
            if (reach[i][k])
                for (int j = 1; j <= n; ++j)
                    if (reach[k][j]) reach[i][j] = 1;

    std::vector<char> covered(static_cast<size_t>(n) + 1, 0);
    for (const auto& e : h.edges)
        for (int v : e) covered[v] = 1;
    std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
    std::vector<std::vector<int>> comps;
    for (int v = 1; v <= n; ++v) {
        if (!covered[v] || seen[v]) continue;
        std::vector<int> comp;
        for (int u = v; u <= n; ++u)
            if (covered[u] && reach[v][u]) {
                comp.push_back(u);
                seen[u] = 1;
            }
        comps.push_back(std::move(comp));
    }
    return comps;
}

// Balance check against the full-subset definition, written independently.
inline bool oracle_balanced(const Hypergraph& h, const std::vector<int>& removed) {
    std::set<int> gone(removed.begin(), removed.end());
    std::vector<Edge> kept;
    for (int i = 1; i <= h.m(); ++i)
        if (!gone.count(i)) kept.push_back(h.edge(i));
    Hypergraph rest{h.n, kept};
    for (const auto& comp : closure_components(rest)) {
        std::set<int> in(comp.begin(), comp.end());
        int count = 0;
        for (const auto& e : kept) {
            bool inside = true;
            for (int v : e)
                if (!in.count(v)) inside = false;
            if (inside) ++count;
        }
        if (count > h.m() / 2) return false;
    }
    return true;
}

// Exact minimum balanced separator by scanning all 2^m bitmasks.
inline int oracle_min_separator(const Hypergraph& h) {
    const int m = h.m();
    int best = m + 1;
    for (long mask = 0; mask < (1l << m); ++mask) {
        int size = __builtin_popcountl(static_cast<unsigned long>(mask));
        if (size >= best) continue;
        std::vector<int> removed;
        for (int i = 0; i < m; ++i)
            if (mask & (1l << i)) removed.push_back(i + 1);
        if (oracle_balanced(h, removed)) best = size;
    }
    return best;
}

// ---- deterministic random instances ----

inline Hypergraph random_hypergraph(Rng& rng, int max_n, int max_m, int max_r) {
    int n = rng.uniform_int(1, max_n);
    int m = rng.uniform_int(0, max_m);
    std::vector<Edge> edges;
    for (int i = 0; i < m; ++i) {
        int r = rng.uniform_int(1, std::min(max_r, n));
        std::set<int> e;
        while (static_cast<int>(e.size()) < r) e.insert(rng.uniform_int(1, n));
        edges.emplace_back(e.begin(), e.end());
    }
    return make_hypergraph(n, std::move(edges));
}

// r-uniform with every vertex of degree exactly k (configuration model).
inline Hypergraph regular_uniform_hypergraph(int m, int r, int k, std::uint64_t seed) {
    if ((static_cast<long long>(m) * r) % k != 0)
        throw std::invalid_argument("m*r must be divisible by k");
    const int n = static_cast<int>(static_cast<long long>(m) * r / k);
    std::vector<int> slots;
    for (int v = 1; v <= n; ++v)
        for (int c = 0; c < k; ++c) slots.push_back(v);
    Rng rng(seed);
    for (int attempt = 0; attempt < 2000; ++attempt) {
        // Fisher-Yates
        for (size_t i = slots.size(); i > 1; --i)
            std::swap(slots[i - 1], slots[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(i) - 1))]);
        std::vector<Edge> edges;
        bool ok = true;
        for (int i = 0; i < m && ok; ++i) {
            std::set<int> e(slots.begin() + static_cast<long>(i) * r,
                            slots.begin() + static_cast<long>(i + 1) * r);
            if (static_cast<int>(e.size()) != r) ok = false;
            else edges.emplace_back(e.begin(), e.end());
        }
        if (ok) return make_hypergraph(n, std::move(edges));
    }
    throw std::runtime_error("configuration model did not converge");
}

// Random connected simple graph with a degree cap (path backbone + extras).
inline Hypergraph random_connected_graph(Rng& rng, int n, int max_degree, int extra_edges) {
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i + 1;
    for (size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(i) - 1))]);
    std::set<Edge> edge_set;
    std::vector<int> deg(static_cast<size_t>(n) + 1, 0);
    for (int i = 0; i + 1 < n; ++i) {
        Edge e{order[static_cast<size_t>(i)], order[static_cast<size_t>(i + 1)]};
        std::sort(e.begin(), e.end());
        edge_set.insert(e);
        ++deg[e[0]];
        ++deg[e[1]];
    }
    for (int t = 0; t < extra_edges * 4 && static_cast<int>(edge_set.size()) < n - 1 + extra_edges; ++t) {
        int a = rng.uniform_int(1, n), b = rng.uniform_int(1, n);
        if (a == b) continue;
        Edge e{std::min(a, b), std::max(a, b)};
        if (edge_set.count(e)) continue;
        if (deg[e[0]] >= max_degree || deg[e[1]] >= max_degree) continue;
        edge_set.insert(e);
        ++deg[e[0]];
        ++deg[e[1]];
    }
    return make_hypergraph(n, std::vector<Edge>(edge_set.begin(), edge_set.end()));
}

// Random table CSP; per-variable frequency capped.
inline Csp random_csp(Rng& rng, int max_vars, int max_domain, int max_arity, int max_freq,
                      int max_constraints, double tuple_keep = 0.5) {
    int m = rng.uniform_int(1, max_vars);
    int d = rng.uniform_int(2, max_domain);
    while (std::pow(static_cast<double>(d), m) > (1 << 20)) {
        if (m > 1) --m;
        else d = 2;
    }
    int want = rng.uniform_int(1, max_constraints);
    std::vector<int> freq(static_cast<size_t>(m) + 1, 0);
    std::vector<Constraint> constraints;
    for (int c = 0; c < want; ++c) {
        int arity = rng.uniform_int(1, std::min(max_arity, m));
        std::set<int> scope_set;
        for (int tries = 0; tries < 40 && static_cast<int>(scope_set.size()) < arity; ++tries) {
            int v = rng.uniform_int(1, m);
            if (freq[static_cast<size_t>(v)] < max_freq) scope_set.insert(v);
        }
        if (scope_set.empty()) continue;
        Constraint k;
        k.scope.assign(scope_set.begin(), scope_set.end());
        for (int v : k.scope) ++freq[static_cast<size_t>(v)];
        long long tuples = 1;
        for (size_t i = 0; i < k.scope.size(); ++i) tuples *= d;
        for (long long t = 0; t < tuples; ++t) {
            if (!rng.coin(tuple_keep)) continue;
            std::vector<int> tuple;
            long long x = t;
            for (size_t i = 0; i < k.scope.size(); ++i) {
                tuple.push_back(static_cast<int>(x % d));
                x /= d;
            }
            k.allowed.push_back(std::move(tuple));
        }
        constraints.push_back(std::move(k));
    }
    return make_csp(m, d, std::move(constraints));
}

// The not-equal CSP of a cycle (proper d-coloring of C_n).
inline Csp cycle_coloring_csp(int n, int d) {
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

// Triangle not-equal CSP over domain d.
inline Csp triangle_neq_csp(int d) {
    std::vector<Constraint> constraints;
    for (auto [x, y] : {std::pair{1, 2}, {2, 3}, {1, 3}}) {
        Constraint c;
        c.scope = {x, y};
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                if (a != b) c.allowed.push_back({a, b});
        constraints.push_back(std::move(c));
    }
    return make_csp(3, d, std::move(constraints));
}

inline Hypergraph triangle_graph() {
    return make_hypergraph(3, {{1, 2}, {2, 3}, {1, 3}});
}

inline Hypergraph path_graph(int n) {
    std::vector<Edge> edges;
    for (int i = 1; i < n; ++i) edges.push_back({i, i + 1});
    return make_hypergraph(n, std::move(edges));
}

inline Hypergraph complete_graph(int n) {
    std::vector<Edge> edges;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) edges.push_back({i, j});
    return make_hypergraph(n, std::move(edges));
}

}  // namespace testutil
