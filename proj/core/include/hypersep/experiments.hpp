#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hypersep/hypergraph.hpp"

namespace hypersep {

/// Random r-uniform hypergraph parameters. Each of the C(n, r) candidate
/// edges is kept independently with probability q = (n*k/r) / C(n, r), then
/// edges at vertices above the 2ek degree threshold are trimmed greedily.
struct GeneratorParams {
    int n = 0;
    int k = 0;
    int r = 2;
    std::uint64_t seed = 0;

    double q() const;
    int trim_threshold() const;  // ceil(2 * e * k)
};

/// Deterministic per (params, seed); candidate subsets are visited in
/// lexicographic order. Throws BudgetError when C(n, r) exceeds max_candidates.
Hypergraph random_uniform_hypergraph(const GeneratorParams& params,
                                     long long max_candidates = 10'000'000);

struct MinSeparator {
    int size = 0;
    std::vector<int> edges;  // lexicographically first witness of minimum size
};

/// Exact minimum balanced separator by branch-and-bound over edge subsets
/// (keep/remove per edge in index order, pruning any branch whose kept prefix
/// already holds an over-half component). Throws BudgetError past max_edges
/// or when the search exceeds max_nodes.
MinSeparator min_balanced_separator(const Hypergraph& h, int max_edges = 30,
                                    long long max_nodes = 400'000'000);

/// Spot check of induced-edge regularity: for random S with |S| = alpha*n,
/// |E(S)| should concentrate around (|S|/n)^r * |E|. Reported, never asserted;
/// certifying it per instance would itself take exponential time.
struct InducedRegularitySample {
    int samples = 0;
    double alpha = 0.0;
    double mean_ratio = 0.0;  // observed |E(S)| over the expectation
    double min_ratio = 0.0;
    double max_ratio = 0.0;
};

InducedRegularitySample sample_induced_regularity(const Hypergraph& h, int r, double alpha,
                                                  int samples, std::uint64_t seed);

struct ExperimentRow {
    int n = 0, k = 0, r = 0;
    int m = 0, max_degree = 0, min_sep = 0;
    double theory_bound = 0.0;  // (1/2 - epsilon_r) * m
    double ratio = 0.0;         // min_sep / m
    std::uint64_t seed = 0;
};

struct ExperimentReport {
    std::vector<ExperimentRow> rows;
};

struct ExperimentSweep {
    int r = 2;
    std::vector<int> n_values;
    std::vector<int> k_values;
    int instances_per_cell = 20;
    std::uint64_t seed = 0;
    int oracle_edge_cap = 30;
    int jobs = 1;
};

/// Probes how close minimum separators come to (1/2 - epsilon_r) * m on the
/// random family. Row order follows the sweep (n outer, k inner, then
/// instance); per-instance seeds derive from (seed, row index).
ExperimentReport tightness_experiment(const ExperimentSweep& sweep);

/// CSV schema: n,k,r,m,max_degree,min_sep,theory_bound,ratio,seed
void write_csv(std::ostream& out, const ExperimentReport& report);
std::string to_csv(const ExperimentReport& report);

}  // namespace hypersep
