#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypersep/hypergraph.hpp"

namespace hypersep {

/// Returns (1 - 2^(-1/r))^r, the separator savings constant. Requires r >= 2.
double epsilon_r(int r);

/// True iff every connected component of (V, E \ R) holds at most floor(m/2)
/// edges, m counting all edges of h. Component edge counts are returned
/// regardless, in component order.
std::pair<bool, std::vector<int>> is_balanced_separator(const Hypergraph& h,
                                                        const std::vector<int>& r_edges);

enum class SeparatorMethod { trivial, random, exhaustive, vertex_cut };

std::string to_string(SeparatorMethod m);

struct SeparatorResult {
    std::vector<int> edges;                 // sorted 1-based edge indices
    std::vector<int> component_edge_counts; // components of (V, E \ R), component order
    SeparatorMethod method = SeparatorMethod::trivial;
    long trials_used = 0;
    double size_bound_used = 0.0;           // the target |R| threshold

    /// The sampler gave up and fell back to removing the first ceil(m/2) edges.
    bool used_fallback() const { return method == SeparatorMethod::trivial && trials_used > 0; }
};

/// Parameters of the randomized construction. `slack` concretizes the
/// concentration deviation as 4*k*sqrt(n*p*(1-p)); the certified size bound is
/// (1/2 - epsilon)*m + 3*slack (crossing excess plus the two trim sets).
struct SeparatorParams {
    int r = 2;
    double p = 0.0;        // vertex sampling probability, 2^(-1/r)
    double epsilon = 0.0;  // epsilon_r
    double slack = 0.0;
    long max_trials = 1000;

    static SeparatorParams make(int r, int k, int n, long max_trials = 1000);

    double size_bound(int m) const { return (0.5 - epsilon) * m + 3.0 * slack; }
};

/// Randomized separator for an r-uniform hypergraph (run uniformize first).
/// Trial i samples S with an independent p-coin per vertex from a generator
/// derived from (seed, i); a trial is accepted when |E(S)| lands in
/// m/2 +- slack and |E(S,S~)| <= (1/2 - epsilon)m + slack, after which the
/// lexicographically smallest surplus edges of each side are added to R.
/// Exhausting max_trials falls back to the first ceil(m/2) edge indices.
SeparatorResult random_separator(const Hypergraph& h, const SeparatorParams& params,
                                 std::uint64_t seed);

/// Minimum-cardinality balanced separator of size <= size_cap, enumerating
/// edge subsets in increasing size and lexicographic order within a size.
std::optional<SeparatorResult> exhaustive_separator(const Hypergraph& h, int size_cap);

/// Enumerates vertex subsets S (increasing size, then lexicographic) and
/// returns the first cut R = E(S, S~) that is balanced with |R| <= size_bound.
std::optional<SeparatorResult> vertex_cut_separator(const Hypergraph& h, double size_bound);

}  // namespace hypersep
