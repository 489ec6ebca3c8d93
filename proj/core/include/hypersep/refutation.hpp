#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hypersep/cnf.hpp"
#include "hypersep/csp.hpp"
#include "hypersep/hypergraph.hpp"
#include "hypersep/tseitin.hpp"

namespace hypersep {

/// d-ary query tree; leaves name the clause (CNF mode) or constraint (CSP
/// mode) falsified by the path assignment. Node 0 is the root.
struct DecisionTree {
    struct Node {
        bool is_leaf = false;
        int var = 0;                // queried variable (internal nodes)
        int leaf = 0;               // falsified clause/constraint index (leaves)
        std::vector<int> children;  // one per domain value, in value order
    };

    int domain = 2;
    std::vector<Node> nodes;

    int add_leaf(int index) {
        nodes.push_back(Node{true, 0, index, {}});
        return static_cast<int>(nodes.size()) - 1;
    }
    int add_internal(int var) {
        Node n;
        n.var = var;
        nodes.push_back(std::move(n));
        return static_cast<int>(nodes.size()) - 1;
    }
};

long long count_leaves(const DecisionTree& t);
int tree_depth(const DecisionTree& t);  // queries on the longest root-to-leaf path

struct ResolutionStep {
    int id = 0;
    bool axiom = false;
    int ant1 = 0, ant2 = 0;  // antecedent ids (resolution steps)
    int pivot = 0;           // pivot variable
    Clause clause;
};

struct ResolutionTrace {
    std::vector<ResolutionStep> steps;
};

struct CheckResult {
    bool ok = true;
    std::string message;
};

/// Verifies the decision-tree invariants against a CNF: no variable queried
/// twice on a path, every leaf's clause falsified by the path assignment.
CheckResult check_dtree(const Cnf& cnf, const DecisionTree& tree);

/// CSP mode: a leaf constraint is falsified when no allowed tuple is
/// consistent with the path assignment.
CheckResult check_dtree(const Csp& csp, const DecisionTree& tree);

/// Binary decision tree -> tree-like resolution: leaves become axioms, each
/// internal node resolves its children's clauses on the queried variable, or
/// passes a child's clause up when it lacks the pivot.
ResolutionTrace dtree_to_resolution(const Cnf& cnf, const DecisionTree& tree);

/// Verifies a trace: consecutive ids, axioms from the input CNF, resolvents
/// recomputed exactly, single-use antecedents, empty final clause.
CheckResult check_resolution(const Cnf& cnf, const ResolutionTrace& trace);

struct RefuterStats {
    long long leaves = 0;
    int depth = 0;
    long long proof_size = 0;
    int proof_width = 0;
    std::vector<std::pair<int, int>> separators_used;  // (|E'|, |R|) per computation
    int separator_fallbacks = 0;
};

struct RefutationResult {
    DecisionTree tree;
    ResolutionTrace trace;
    RefuterStats stats;
    Cnf cnf;  // the refuted CNF (encoding of the input)
    // First edge queried per distinct subgraph (canonical sorted edge set);
    // populated by refute_tseitin, whose query choices ignore the charges.
    std::map<std::vector<int>, int> query_log;
};

struct RefuteOptions {
    bool exhaustive_separator = false;
    std::uint64_t seed = 0;
    long max_trials = 1000;
    std::uint64_t enum_budget = 1ull << 26;
};

/// Separator refuter for unsatisfiable (2,k)-CSPs: queries a balanced
/// separator of the constraint hypergraph exhaustively, then descends into an
/// unsatisfiable component of each restriction. Throws SatisfiableError when
/// a branch satisfies every constraint.
RefutationResult refute_csp2(const Csp& csp, const RefuteOptions& options = {});

/// Deterministic Tseitin refuter for simple graphs with an odd charge
/// labeling: degree-0 violations become leaves, degree-1/2 vertices are
/// queried directly, min-degree-3 subgraphs are split by an exhaustively
/// found vertex-cut separator, descending into the odd-charge component.
/// Separator searches are memoized per subgraph.
RefutationResult refute_tseitin(const Hypergraph& graph, const ChargeLabeling& lambda,
                                const RefuteOptions& options = {});

/// Thm 5.4-style leaf budget 2^((1-2*eps2)*E + 4*C*k*sqrt(E) + k*sqrt(m)).
double tseitin_leaf_bound_log2(int edges, int k, int m);

/// Decision tree format (.dt): header `p dt <d>`, then preorder node lines
/// `n <var>` / `l <index>`.
DecisionTree parse_dtree(std::istream& in);
DecisionTree parse_dtree_file(const std::string& path);
void write_dtree(std::ostream& out, const DecisionTree& tree);

/// Resolution trace format (.res): `<id> a <lit...> 0` or
/// `<id> r <id1> <id2> <pivot> <lit...> 0`.
ResolutionTrace parse_restrace(std::istream& in);
ResolutionTrace parse_restrace_file(const std::string& path);
void write_restrace(std::ostream& out, const ResolutionTrace& trace);

}  // namespace hypersep
