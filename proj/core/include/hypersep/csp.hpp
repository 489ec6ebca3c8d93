#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hypersep/cnf.hpp"
#include "hypersep/hypergraph.hpp"

namespace hypersep {

using BigInt = boost::multiprecision::cpp_int;

/// Table constraint: an ordered scope of variable ids plus the set of allowed
/// value tuples (sorted, duplicate-free). An empty scope encodes a constant:
/// allowed = {()} is TRUE, allowed = {} is FALSE.
struct Constraint {
    std::vector<int> scope;
    std::vector<std::vector<int>> allowed;

    int arity() const { return static_cast<int>(scope.size()); }
    bool trivially_true() const { return scope.empty() && !allowed.empty(); }
    bool trivially_false() const { return scope.empty() && allowed.empty(); }

    bool operator==(const Constraint&) const = default;
};

/// A (d, k)-CSP. `vars` is the variable universe (sorted original ids); for a
/// freshly built or parsed CSP it is 1..num_vars, while restriction and
/// decomposition produce sub-CSPs over a smaller universe with ids kept.
struct Csp {
    int num_vars = 0;
    int domain = 2;
    std::vector<Constraint> constraints;
    std::vector<int> vars;

    bool operator==(const Csp&) const = default;
};

/// Validates scopes, tuple ranges and canonicalizes allowed sets (sorted,
/// deduplicated). Throws std::invalid_argument on violations.
Csp make_csp(int num_vars, int domain, std::vector<Constraint> constraints);

using PartialAssignment = std::map<int, int>;  // variable id -> value in [0, d)

/// Sorted variable ids that occur in at least one constraint scope.
std::vector<int> occurring_vars(const Csp& csp);

/// Per-variable frequency (number of constraints containing it), id-indexed.
std::vector<int> variable_frequencies(const Csp& csp);

struct ConstraintHypergraph {
    Hypergraph graph;            // vertices = constraint indices
    std::vector<int> edge_var;   // 1-based edge index -> variable id
    std::vector<int> free_vars;  // universe variables occurring in no constraint
};

/// The hypergraph with one vertex per constraint and one hyperedge per
/// occurring variable, collecting the constraints that contain it.
ConstraintHypergraph constraint_hypergraph(const Csp& csp);

/// Restricts by a partial assignment: assigned variables leave the universe,
/// each constraint's allowed set is filtered and projected onto its unassigned
/// scope positions. Fully assigned constraints stay behind as TRUE/FALSE
/// constants so constraint indices are stable.
Csp restrict_csp(const Csp& csp, const PartialAssignment& rho);

struct Decomposition {
    std::vector<Csp> parts;   // one per connected component, component order
    int free_vars = 0;        // universe variables in no constraint
    int trivially_true = 0;   // zero-scope TRUE constraints (satisfied)
    int trivially_false = 0;  // zero-scope FALSE constraints (violated)
};

/// Splits along connected components of the constraint hypergraph. Each part
/// keeps original variable ids; its universe is exactly its occurring
/// variables.
Decomposition decompose(const Csp& csp);

enum class SolveMode { decide, count, max };

struct SolveStats {
    BigInt branch_space = 0;      // d^|R| for the top-level separator R
    BigInt branches_visited = 0;  // rho branches actually evaluated
    int separator_size = 0;
    double separator_bound = 0.0;
    bool separator_fallback = false;
    std::string separator_method;
};

struct SolveAnswer {
    SolveMode mode = SolveMode::decide;
    bool satisfiable = false;
    BigInt count = 0;
    long long max_satisfied = 0;
    std::optional<PartialAssignment> witness;  // over the universe; verifies
    SolveStats stats;
};

/// Exact answer by lexicographic enumeration over the occurring variables
/// (free universe variables are folded in per mode). Throws BudgetError when
/// the enumeration exceeds `budget` visited nodes.
SolveAnswer brute_force(const Csp& csp, SolveMode mode, std::uint64_t budget = 1ull << 28);

struct SolveOptions {
    bool recursive = false;
    bool exhaustive_separator = false;  // deterministic variant; default randomized
    std::uint64_t seed = 0;
    int leaf_budget = 8;          // recursive calls bottom out at this many variables
    long max_trials = 1000;
    std::uint64_t enum_budget = 1ull << 28;
};

/// Separator-based branching solver: builds the constraint hypergraph,
/// uniformizes it, finds a balanced separator over the variables, enumerates
/// all assignments to the separator and combines the decomposed parts per
/// mode. Parts are answered by brute force, or recursively when
/// options.recursive is set and the part exceeds leaf_budget variables.
SolveAnswer solve(const Csp& csp, SolveMode mode, const SolveOptions& options = {});

struct HighFrequencyPlan {
    std::vector<int> branch_vars;    // frequency >= ceil(2 * r_avg); at most half
    int residual_bound = 0;          // ceil(2 * r_avg) - 1
};

/// Variables worth branching exhaustively before the separator solver runs,
/// per the averaging argument: at most m/2 variables can have frequency at
/// least ceil(2 * r_avg).
HighFrequencyPlan high_frequency_preprocess(const Csp& csp, double r_avg);

struct CnfEncoding {
    Cnf cnf;
    std::vector<int> clause_constraint;  // 1-based clause index -> constraint index
};

/// CNF encoding for d = 2: one clause per forbidden tuple of each constraint,
/// in constraint order then tuple lexicographic order.
CnfEncoding cnf_encode(const Csp& csp);

/// Text format (.csp): header `p csp <m> <d> <constraints>`, then per
/// constraint a line `<arity> <scope...> <t>` followed by t tuple lines.
Csp parse_csp(std::istream& in);
Csp parse_csp_file(const std::string& path);
void write_csp(std::ostream& out, const Csp& csp);

}  // namespace hypersep
