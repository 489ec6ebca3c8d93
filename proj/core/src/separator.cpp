#include "hypersep/separator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hypersep/rng.hpp"

namespace hypersep {

double epsilon_r(int r) {
    if (r < 2) throw std::invalid_argument("epsilon_r requires r >= 2");
    return std::pow(1.0 - std::pow(2.0, -1.0 / r), r);
}

std::string to_string(SeparatorMethod m) {
    switch (m) {
        case SeparatorMethod::trivial: return "trivial";
        case SeparatorMethod::random: return "random";
        case SeparatorMethod::exhaustive: return "exhaustive";
        case SeparatorMethod::vertex_cut: return "vertex-cut";
    }
    return "?";
}

std::pair<bool, std::vector<int>> is_balanced_separator(const Hypergraph& h,
                                                        const std::vector<int>& r_edges) {
    const int m = h.m();
    auto removed = remove_edges(h, r_edges);
    auto decomp = connected_components(removed.graph);
    std::vector<int> counts;
    counts.reserve(decomp.components.size());
    bool ok = true;
    for (const auto& comp : decomp.components) {
        int c = static_cast<int>(comp.edges.size());
        counts.push_back(c);
        if (c > m / 2) ok = false;
    }
    return {ok, std::move(counts)};
}

SeparatorParams SeparatorParams::make(int r, int k, int n, long max_trials) {
    if (r < 2) throw std::invalid_argument("SeparatorParams: r must be >= 2");
    if (max_trials < 1) throw std::invalid_argument("SeparatorParams: max_trials must be positive");
    SeparatorParams params;
    params.r = r;
    params.p = std::pow(2.0, -1.0 / r);
    params.epsilon = epsilon_r(r);
    params.slack = 4.0 * k * std::sqrt(n * params.p * (1.0 - params.p));
    params.max_trials = max_trials;
    return params;
}

namespace {

SeparatorResult finish(const Hypergraph& h, std::vector<int> edges, SeparatorMethod method,
                       long trials, double bound) {
    std::sort(edges.begin(), edges.end());
    auto [ok, counts] = is_balanced_separator(h, edges);
    (void)ok;
    SeparatorResult res;
    res.edges = std::move(edges);
    res.component_edge_counts = std::move(counts);
    res.method = method;
    res.trials_used = trials;
    res.size_bound_used = bound;
    return res;
}

}  // namespace

SeparatorResult random_separator(const Hypergraph& h, const SeparatorParams& params,
                                 std::uint64_t seed) {
    for (const auto& e : h.edges)
        if (static_cast<int>(e.size()) != params.r)
            throw std::invalid_argument("random_separator: input is not r-uniform");

    const int m = h.m();
    const double bound = params.size_bound(m);

    if (m == 0) return finish(h, {}, SeparatorMethod::trivial, 0, bound);
    if (m == 1)  // a lone edge is its own over-half component; it must go
        return finish(h, {1}, SeparatorMethod::trivial, 0, bound);

    if (is_balanced_separator(h, {}).first)
        return finish(h, {}, SeparatorMethod::trivial, 0, bound);

    const int half = m / 2;
    for (long trial = 1; trial <= params.max_trials; ++trial) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
        std::vector<char> in_s(static_cast<size_t>(h.n) + 1, 0);
        for (int v = 1; v <= h.n; ++v) in_s[static_cast<size_t>(v)] = rng.coin(params.p) ? 1 : 0;

        auto part = edge_partition(h, in_s);
        const int inside = static_cast<int>(part.inside.size());
        const int outside = static_cast<int>(part.outside.size());
        const int crossing = static_cast<int>(part.crossing.size());
        if (std::abs(inside - m / 2.0) > params.slack) continue;
        if (crossing > (0.5 - params.epsilon) * m + params.slack) continue;

        // Trim each side down to floor(m/2) with its lexicographically
        // smallest surplus edges; components then stay within either side.
        std::vector<int> r_edges = part.crossing;
        for (int i = 0; i < inside - half; ++i) r_edges.push_back(part.inside[static_cast<size_t>(i)]);
        for (int i = 0; i < outside - half; ++i) r_edges.push_back(part.outside[static_cast<size_t>(i)]);
        return finish(h, std::move(r_edges), SeparatorMethod::random, trial, bound);
    }

    // Fallback: the first ceil(m/2) edges leave only floor(m/2) behind.
    std::vector<int> r_edges;
    for (int i = 1; i <= (m + 1) / 2; ++i) r_edges.push_back(i);
    return finish(h, std::move(r_edges), SeparatorMethod::trivial, params.max_trials, bound);
}

namespace {

// Visits index subsets of {1..m} of the given size in lexicographic order.
// Returns false once the callback accepts a subset.
template <typename F>
bool for_each_combination(int m, int size, F&& visit) {
    std::vector<int> pick(static_cast<size_t>(size));
    for (int i = 0; i < size; ++i) pick[static_cast<size_t>(i)] = i + 1;
    while (true) {
        if (visit(pick)) return false;
        int i = size - 1;
        while (i >= 0 && pick[static_cast<size_t>(i)] == m - (size - 1 - i)) --i;
        if (i < 0) return true;
        ++pick[static_cast<size_t>(i)];
        for (int j = i + 1; j < size; ++j)
            pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
    }
}

}  // namespace

std::optional<SeparatorResult> exhaustive_separator(const Hypergraph& h, int size_cap) {
    const int m = h.m();
    const int cap = std::min(size_cap, m);
    long tested = 0;
    for (int size = 0; size <= cap; ++size) {
        std::optional<std::vector<int>> hit;
        for_each_combination(m, size, [&](const std::vector<int>& pick) {
            ++tested;
            if (is_balanced_separator(h, pick).first) {
                hit = pick;
                return true;
            }
            return false;
        });
        if (hit) return finish(h, std::move(*hit), SeparatorMethod::exhaustive, tested,
                               static_cast<double>(size_cap));
    }
    return std::nullopt;
}

std::optional<SeparatorResult> vertex_cut_separator(const Hypergraph& h, double size_bound) {
    const int n = h.n;
    long tested = 0;
    for (int size = 0; size <= n; ++size) {
        std::optional<std::vector<int>> hit;
        for_each_combination(n, size, [&](const std::vector<int>& pick) {
            ++tested;
            auto part = edge_partition(h, pick);
            if (static_cast<double>(part.crossing.size()) > size_bound) return false;
            if (!is_balanced_separator(h, part.crossing).first) return false;
            hit = part.crossing;
            return true;
        });
        if (hit)
            return finish(h, std::move(*hit), SeparatorMethod::vertex_cut, tested, size_bound);
    }
    return std::nullopt;
}

}  // namespace hypersep
