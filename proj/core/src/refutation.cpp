#include "hypersep/refutation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hypersep/errors.hpp"
#include "hypersep/rng.hpp"
#include "hypersep/separator.hpp"

namespace hypersep {

long long count_leaves(const DecisionTree& t) {
    if (t.nodes.empty()) return 0;
    long long leaves = 0;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int idx = stack.back();
        stack.pop_back();
        const auto& n = t.nodes[static_cast<size_t>(idx)];
        if (n.is_leaf)
            ++leaves;
        else
            for (int c : n.children) stack.push_back(c);
    }
    return leaves;
}

int tree_depth(const DecisionTree& t) {
    if (t.nodes.empty()) return 0;
    std::function<int(int)> go = [&](int idx) -> int {
        const auto& n = t.nodes[static_cast<size_t>(idx)];
        if (n.is_leaf) return 0;
        int best = 0;
        for (int c : n.children) best = std::max(best, go(c));
        return best + 1;
    };
    return go(0);
}

namespace {

// Clause as a canonical literal set for comparisons.
Clause canonical_clause(const Clause& c) {
    Clause out = normalized(c);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool clause_contains(const Clause& c, int lit) {
    return std::find(c.begin(), c.end(), lit) != c.end();
}

bool constraint_falsified_partial(const Constraint& c, const std::vector<int>& value) {
    for (const auto& t : c.allowed) {
        bool consistent = true;
        for (size_t i = 0; i < c.scope.size(); ++i) {
            int v = value[static_cast<size_t>(c.scope[i])];
            if (v >= 0 && v != t[i]) {
                consistent = false;
                break;
            }
        }
        if (consistent) return false;
    }
    return true;
}

template <typename FalsifiedFn>
CheckResult walk_dtree(const DecisionTree& tree, int num_vars, int max_leaf_index,
                       FalsifiedFn&& falsified) {
    if (tree.domain < 2) return {false, "domain must be at least 2"};
    if (tree.nodes.empty()) return {false, "tree has no nodes"};
    std::vector<int> value(static_cast<size_t>(num_vars) + 1, -1);
    std::vector<char> visited(tree.nodes.size(), 0);
    CheckResult res;

    std::function<bool(int)> go = [&](int idx) -> bool {
        if (idx < 0 || idx >= static_cast<int>(tree.nodes.size())) {
            res = {false, "child index out of range"};
            return false;
        }
        if (visited[static_cast<size_t>(idx)]) {
            res = {false, "node " + std::to_string(idx) + " reached twice (not a tree)"};
            return false;
        }
        visited[static_cast<size_t>(idx)] = 1;
        const auto& n = tree.nodes[static_cast<size_t>(idx)];
        if (n.is_leaf) {
            if (n.leaf < 1 || n.leaf > max_leaf_index) {
                res = {false, "node " + std::to_string(idx) + ": leaf index out of range"};
                return false;
            }
            if (!falsified(n.leaf, value)) {
                res = {false, "node " + std::to_string(idx) + ": path assignment does not falsify leaf " +
                              std::to_string(n.leaf)};
                return false;
            }
            return true;
        }
        if (n.var < 1 || n.var > num_vars) {
            res = {false, "node " + std::to_string(idx) + ": queried variable out of range"};
            return false;
        }
        if (value[static_cast<size_t>(n.var)] != -1) {
            res = {false, "node " + std::to_string(idx) + ": variable " + std::to_string(n.var) +
                          " queried twice on a path"};
            return false;
        }
        if (static_cast<int>(n.children.size()) != tree.domain) {
            res = {false, "node " + std::to_string(idx) + ": expected " + std::to_string(tree.domain) +
                          " children"};
            return false;
        }
        for (int b = 0; b < tree.domain; ++b) {
            value[static_cast<size_t>(n.var)] = b;
            if (!go(n.children[static_cast<size_t>(b)])) return false;
        }
        value[static_cast<size_t>(n.var)] = -1;
        return true;
    };
    if (!go(0)) return res;
    for (size_t i = 0; i < visited.size(); ++i)
        if (!visited[i]) return {false, "node " + std::to_string(i) + " unreachable from the root"};
    return {true, ""};
}

}  // namespace

CheckResult check_dtree(const Cnf& cnf, const DecisionTree& tree) {
    if (tree.domain != 2) return {false, "CNF decision trees must be binary"};
    return walk_dtree(tree, cnf.num_vars, static_cast<int>(cnf.clauses.size()),
                      [&](int leaf, const std::vector<int>& value) {
                          return clause_falsified(cnf.clauses[static_cast<size_t>(leaf - 1)], value);
                      });
}

CheckResult check_dtree(const Csp& csp, const DecisionTree& tree) {
    if (tree.domain != csp.domain) return {false, "tree domain differs from the CSP domain"};
    return walk_dtree(tree, csp.num_vars, static_cast<int>(csp.constraints.size()),
                      [&](int leaf, const std::vector<int>& value) {
                          return constraint_falsified_partial(
                              csp.constraints[static_cast<size_t>(leaf - 1)], value);
                      });
}

ResolutionTrace dtree_to_resolution(const Cnf& cnf, const DecisionTree& tree) {
    if (tree.domain != 2)
        throw std::invalid_argument("resolution conversion requires a binary decision tree");
    auto pre = check_dtree(cnf, tree);
    if (!pre.ok) throw std::invalid_argument("decision tree invalid: " + pre.message);

    ResolutionTrace trace;
    // Returns (step id, canonical clause). A child whose clause lacks the
    // pivot is passed up unchanged and the sibling subtree is skipped.
    std::function<std::pair<int, Clause>(int)> go = [&](int idx) -> std::pair<int, Clause> {
        const auto& n = tree.nodes[static_cast<size_t>(idx)];
        if (n.is_leaf) {
            ResolutionStep step;
            step.id = static_cast<int>(trace.steps.size()) + 1;
            step.axiom = true;
            step.clause = cnf.clauses[static_cast<size_t>(n.leaf - 1)];
            trace.steps.push_back(step);
            return {step.id, canonical_clause(step.clause)};
        }
        auto [id0, cl0] = go(n.children[0]);
        if (!clause_contains(cl0, n.var)) return {id0, cl0};
        auto [id1, cl1] = go(n.children[1]);
        if (!clause_contains(cl1, -n.var)) return {id1, cl1};

        Clause resolvent;
        for (int lit : cl0)
            if (lit != n.var) resolvent.push_back(lit);
        for (int lit : cl1)
            if (lit != -n.var) resolvent.push_back(lit);
        resolvent = canonical_clause(resolvent);

        ResolutionStep step;
        step.id = static_cast<int>(trace.steps.size()) + 1;
        step.ant1 = id0;
        step.ant2 = id1;
        step.pivot = n.var;
        step.clause = resolvent;
        trace.steps.push_back(step);
        return {step.id, resolvent};
    };
    go(0);
    return trace;
}

CheckResult check_resolution(const Cnf& cnf, const ResolutionTrace& trace) {
    if (trace.steps.empty()) return {false, "empty trace"};
    std::set<Clause> inputs;
    for (const auto& c : cnf.clauses) inputs.insert(canonical_clause(c));

    std::vector<int> uses(trace.steps.size() + 1, 0);
    for (size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& step = trace.steps[i];
        const std::string where = "step " + std::to_string(step.id);
        if (step.id != static_cast<int>(i) + 1)
            return {false, "step ids must be consecutive from 1 (found " + std::to_string(step.id) + ")"};
        for (int lit : step.clause) {
            if (lit == 0 || std::abs(lit) > cnf.num_vars)
                return {false, where + ": literal out of range"};
        }
        if (step.axiom) {
            if (!inputs.count(canonical_clause(step.clause)))
                return {false, where + ": axiom clause does not occur in the input CNF"};
            continue;
        }
        if (step.ant1 < 1 || step.ant1 >= step.id || step.ant2 < 1 || step.ant2 >= step.id)
            return {false, where + ": antecedent id out of range"};
        if (++uses[static_cast<size_t>(step.ant1)] > 1)
            return {false, where + ": antecedent " + std::to_string(step.ant1) +
                          " already used (trace is not tree-like)"};
        if (++uses[static_cast<size_t>(step.ant2)] > 1)
            return {false, where + ": antecedent " + std::to_string(step.ant2) +
                          " already used (trace is not tree-like)"};
        if (step.pivot < 1 || step.pivot > cnf.num_vars)
            return {false, where + ": pivot variable out of range"};

        const Clause a = canonical_clause(trace.steps[static_cast<size_t>(step.ant1 - 1)].clause);
        const Clause b = canonical_clause(trace.steps[static_cast<size_t>(step.ant2 - 1)].clause);
        const bool pos_a = clause_contains(a, step.pivot), neg_a = clause_contains(a, -step.pivot);
        const bool pos_b = clause_contains(b, step.pivot), neg_b = clause_contains(b, -step.pivot);
        if (!((pos_a && neg_b) || (pos_b && neg_a)))
            return {false, where + ": pivot does not occur positively in one antecedent and negatively in the other"};

        Clause resolvent;
        for (int lit : a)
            if (lit != step.pivot && lit != -step.pivot) resolvent.push_back(lit);
        for (int lit : b)
            if (lit != step.pivot && lit != -step.pivot) resolvent.push_back(lit);
        resolvent = canonical_clause(resolvent);
        for (size_t j = 0; j + 1 < resolvent.size(); ++j)
            if (resolvent[j] == -resolvent[j + 1])
                return {false, where + ": resolvent is tautological"};
        if (canonical_clause(step.clause) != resolvent)
            return {false, where + ": recorded clause is not the resolvent of its antecedents"};
    }
    if (!trace.steps.back().clause.empty())
        return {false, "final clause is not empty"};
    return {true, ""};
}

namespace {

// Separator over the constraint hypergraph, shared by the solver-style
// refuter. Returns the separator variables in ascending order.
struct VariableSeparator {
    std::vector<int> vars;
    int hypergraph_edges = 0;
    bool fallback = false;
};

VariableSeparator separator_variables(const Csp& csp, const RefuteOptions& opts) {
    auto ch = constraint_hypergraph(csp);
    const Hypergraph& h = ch.graph;
    int freq = 0;
    for (const auto& e : h.edges) freq = std::max(freq, static_cast<int>(e.size()));
    const int r_eff = std::max(2, freq);
    const int k = std::max(1, max_degree(h));
    auto uni = uniformize(h, r_eff, k);
    auto params = SeparatorParams::make(r_eff, k, uni.graph.n, opts.max_trials);

    SeparatorResult sep;
    if (opts.exhaustive_separator) {
        int cap = std::min(h.m(), std::max((h.m() + 1) / 2,
                                           static_cast<int>(std::floor(params.size_bound(h.m())))));
        sep = *exhaustive_separator(uni.graph, cap);
    } else {
        sep = random_separator(uni.graph, params, opts.seed);
    }

    VariableSeparator out;
    out.hypergraph_edges = h.m();
    out.fallback = sep.used_fallback();
    for (int e : sep.edges) out.vars.push_back(ch.edge_var[static_cast<size_t>(e)]);
    std::sort(out.vars.begin(), out.vars.end());
    return out;
}

std::vector<int> witness_vector(int num_vars, const PartialAssignment& w) {
    std::vector<int> out(static_cast<size_t>(num_vars) + 1, 0);
    for (const auto& [var, val] : w) out[static_cast<size_t>(var)] = val;
    return out;
}

void fill_stats(RefutationResult& r) {
    r.stats.leaves = count_leaves(r.tree);
    r.stats.depth = tree_depth(r.tree);
    r.stats.proof_size = static_cast<long long>(r.trace.steps.size());
    r.stats.proof_width = 0;
    for (const auto& s : r.trace.steps)
        r.stats.proof_width = std::max(r.stats.proof_width, static_cast<int>(s.clause.size()));
}

void verify_or_die(const RefutationResult& r) {
    auto dt = check_dtree(r.cnf, r.tree);
    if (!dt.ok) throw std::logic_error("refuter produced an invalid decision tree: " + dt.message);
    auto res = check_resolution(r.cnf, r.trace);
    if (!res.ok) throw std::logic_error("refuter produced an invalid trace: " + res.message);
}

}  // namespace

RefutationResult refute_csp2(const Csp& csp, const RefuteOptions& options) {
    if (csp.domain != 2) throw std::invalid_argument("refute_csp2 requires domain 2");
    auto enc = cnf_encode(csp);

    // Clause block offsets per constraint.
    std::vector<int> block_start(csp.constraints.size() + 2, 0);
    {
        int clause = static_cast<int>(enc.cnf.clauses.size());
        for (int c = static_cast<int>(csp.constraints.size()); c >= 1; --c) {
            while (clause >= 1 && enc.clause_constraint[static_cast<size_t>(clause)] == c) --clause;
            block_start[static_cast<size_t>(c)] = clause + 1;
        }
    }

    auto occ = occurring_vars(csp);
    if (occ.size() <= 20) {
        auto bf = brute_force(csp, SolveMode::decide, options.enum_budget);
        if (bf.satisfiable)
            throw SatisfiableError("input CSP is satisfiable",
                                   witness_vector(csp.num_vars, *bf.witness));
    }

    auto sep = separator_variables(csp, options);

    RefutationResult out;
    out.cnf = enc.cnf;
    out.stats.separators_used.emplace_back(sep.hypergraph_edges, static_cast<int>(sep.vars.size()));
    out.stats.separator_fallbacks = sep.fallback ? 1 : 0;

    std::vector<int> value(static_cast<size_t>(csp.num_vars) + 1, -1);

    // First constraint fully assigned and violated by the current path.
    auto find_falsified = [&]() -> int {
        for (size_t ci = 0; ci < csp.constraints.size(); ++ci) {
            const Constraint& c = csp.constraints[ci];
            std::vector<int> tuple;
            tuple.reserve(c.scope.size());
            bool complete = true;
            for (int v : c.scope) {
                int x = value[static_cast<size_t>(v)];
                if (x < 0) {
                    complete = false;
                    break;
                }
                tuple.push_back(x);
            }
            if (!complete) continue;
            if (!std::binary_search(c.allowed.begin(), c.allowed.end(), tuple))
                return static_cast<int>(ci) + 1;
        }
        return 0;
    };

    // Clause of constraint ci falsified by the (complete) current assignment:
    // its block offset plus the forbidden-tuple rank of the assigned tuple.
    auto violated_clause = [&](int ci) {
        const Constraint& c = csp.constraints[static_cast<size_t>(ci - 1)];
        const int a = c.arity();
        std::vector<int> tuple;
        for (int v : c.scope) tuple.push_back(value[static_cast<size_t>(v)]);
        int rank = 0;
        std::vector<int> probe(static_cast<size_t>(a));
        for (long long x = 0; x < (1ll << a); ++x) {
            for (int i = 0; i < a; ++i)
                probe[static_cast<size_t>(i)] = static_cast<int>((x >> (a - 1 - i)) & 1);
            if (probe == tuple) break;
            if (!std::binary_search(c.allowed.begin(), c.allowed.end(), probe)) ++rank;
        }
        return block_start[static_cast<size_t>(ci)] + rank;
    };

    std::function<int(const std::vector<int>&, size_t)> build_over =
        [&](const std::vector<int>& vars, size_t i) -> int {
        if (int ci = find_falsified()) return out.tree.add_leaf(violated_clause(ci));
        if (i == vars.size()) {
            PartialAssignment rho;
            for (int v = 1; v <= csp.num_vars; ++v)
                if (value[static_cast<size_t>(v)] >= 0) rho[v] = value[static_cast<size_t>(v)];
            auto restricted = restrict_csp(csp, rho);
            auto dec = decompose(restricted);
            std::vector<PartialAssignment> part_witnesses;
            for (const auto& part : dec.parts) {
                auto pa = brute_force(part, SolveMode::decide, options.enum_budget);
                if (!pa.satisfiable) return build_over(part.vars, 0);
                part_witnesses.push_back(*pa.witness);
            }
            // Every part satisfiable and nothing falsified: the input was
            // satisfiable after all.
            PartialAssignment w = rho;
            for (const auto& pw : part_witnesses)
                for (const auto& [var, val] : pw) w[var] = val;
            throw SatisfiableError("branch satisfies every constraint",
                                   witness_vector(csp.num_vars, w));
        }
        int node = out.tree.add_internal(vars[i]);
        for (int b = 0; b < 2; ++b) {
            value[static_cast<size_t>(vars[i])] = b;
            int child = build_over(vars, i + 1);
            out.tree.nodes[static_cast<size_t>(node)].children.push_back(child);
        }
        value[static_cast<size_t>(vars[i])] = -1;
        return node;
    };

    build_over(sep.vars, 0);
    out.trace = dtree_to_resolution(out.cnf, out.tree);
    fill_stats(out);
    verify_or_die(out);
    return out;
}

double tseitin_leaf_bound_log2(int edges, int k, int m) {
    const double eps = epsilon_r(2);
    const double c = 6.0 * std::sqrt(2.0);
    return (1.0 - 2.0 * eps) * edges + 4.0 * c * k * std::sqrt(static_cast<double>(edges)) +
           k * std::sqrt(static_cast<double>(m));
}

namespace {

class TseitinRefuter {
public:
    TseitinRefuter(const TseitinInstance& inst, const RefuteOptions& opts)
        : inst_(inst), enc_(tseitin_cnf(inst)) {
        (void)opts;
        k_ = std::max(1, max_degree(inst_.graph));
        m_ = inst_.graph.m();
        base_threshold_ = k_ * std::sqrt(static_cast<double>(m_));
        incident_.assign(static_cast<size_t>(inst_.graph.n) + 1, {});
        for (int e = 1; e <= m_; ++e)
            for (int v : inst_.graph.edge(e)) incident_[static_cast<size_t>(v)].push_back(e);
        val_.assign(static_cast<size_t>(m_) + 1, -1);
    }

    RefutationResult run() {
        std::vector<int> verts(static_cast<size_t>(inst_.graph.n));
        for (int v = 1; v <= inst_.graph.n; ++v) verts[static_cast<size_t>(v - 1)] = v;
        std::vector<int> eset(static_cast<size_t>(m_));
        for (int e = 1; e <= m_; ++e) eset[static_cast<size_t>(e - 1)] = e;

        build(verts, eset, inst_.lambda.bit);

        out_.cnf = enc_.cnf;
        out_.trace = dtree_to_resolution(out_.cnf, out_.tree);
        fill_stats(out_);
        verify_or_die(out_);
        return std::move(out_);
    }

private:
    using Charges = std::vector<std::uint8_t>;

    std::vector<int> degrees(const std::vector<int>& eset) const {
        std::vector<int> deg(static_cast<size_t>(inst_.graph.n) + 1, 0);
        for (int e : eset)
            for (int v : inst_.graph.edge(e)) ++deg[static_cast<size_t>(v)];
        return deg;
    }

    // Leaf rule: a degree-0 vertex whose residual charge is 1 has its parity
    // constraint falsified by the path (all its edges are assigned).
    int leaf_if_violated(const std::vector<int>& verts, const std::vector<int>& deg,
                         const Charges& lam) {
        for (int v : verts) {
            if (deg[static_cast<size_t>(v)] != 0 || lam[static_cast<size_t>(v)] != 1) continue;
            std::vector<int> tuple;
            for (int e : incident_[static_cast<size_t>(v)]) {
                if (val_[static_cast<size_t>(e)] < 0)
                    throw std::logic_error("violated vertex has an unassigned edge");
                tuple.push_back(val_[static_cast<size_t>(e)]);
            }
            return out_.tree.add_leaf(falsified_clause(enc_, inst_, v, tuple));
        }
        return -1;
    }

    Charges flipped(const Charges& lam, int e, int b) const {
        Charges out = lam;
        if (b)
            for (int v : inst_.graph.edge(e)) out[static_cast<size_t>(v)] ^= 1;
        return out;
    }

    void log_query(const std::vector<int>& eset, int e) {
        auto [it, inserted] = out_.query_log.emplace(eset, e);
        if (!inserted && it->second != e)
            throw std::logic_error("query choice depended on the charge labeling");
    }

    int query_node(int e, const std::vector<int>& verts, const std::vector<int>& eset,
                   const Charges& lam) {
        log_query(eset, e);
        std::vector<int> rest;
        rest.reserve(eset.size() - 1);
        for (int x : eset)
            if (x != e) rest.push_back(x);
        int node = out_.tree.add_internal(e);
        for (int b = 0; b < 2; ++b) {
            val_[static_cast<size_t>(e)] = b;
            int child = build(verts, rest, flipped(lam, e, b));
            out_.tree.nodes[static_cast<size_t>(node)].children.push_back(child);
        }
        val_[static_cast<size_t>(e)] = -1;
        return node;
    }

    int build(const std::vector<int>& verts, const std::vector<int>& eset, const Charges& lam) {
        auto deg = degrees(eset);
        if (int leaf = leaf_if_violated(verts, deg, lam); leaf >= 0) return leaf;

        // Satisfied degree-0 vertices play no further role.
        std::vector<int> live;
        live.reserve(verts.size());
        for (int v : verts)
            if (deg[static_cast<size_t>(v)] > 0) live.push_back(v);
        if (eset.empty()) throw std::logic_error("odd charge with no edges and no violation");

        if (static_cast<double>(eset.size()) <= base_threshold_)
            return query_node(eset.front(), live, eset, lam);

        for (int want = 1; want <= 2; ++want)
            for (int v : live)
                if (deg[static_cast<size_t>(v)] == want)
                    for (int e : eset)
                        for (int u : inst_.graph.edge(e))
                            if (u == v) return query_node(e, live, eset, lam);

        // Minimum degree >= 3: balanced separator by exhaustive vertex cuts,
        // memoized on the subgraph's edge set.
        auto it = sep_memo_.find(eset);
        if (it == sep_memo_.end()) {
            it = sep_memo_.emplace(eset, compute_separator(live, eset)).first;
            out_.stats.separators_used.emplace_back(static_cast<int>(eset.size()),
                                                    static_cast<int>(it->second.size()));
        }
        const std::vector<int>& r = it->second;
        if (r.empty()) return descend(eset, lam);
        return chain(r, 0, live, eset, lam);
    }

    std::vector<int> compute_separator(const std::vector<int>& verts, const std::vector<int>& eset) {
        // Compact the subgraph so the cut enumeration only sees live vertices.
        std::vector<int> vmap(static_cast<size_t>(inst_.graph.n) + 1, 0);
        for (size_t i = 0; i < verts.size(); ++i) vmap[static_cast<size_t>(verts[i])] = static_cast<int>(i) + 1;
        std::vector<Edge> edges;
        edges.reserve(eset.size());
        for (int e : eset) {
            Edge local;
            for (int v : inst_.graph.edge(e)) local.push_back(vmap[static_cast<size_t>(v)]);
            std::sort(local.begin(), local.end());
            edges.push_back(std::move(local));
        }
        Hypergraph sub{static_cast<int>(verts.size()), std::move(edges)};

        const int edge_count = static_cast<int>(eset.size());
        double bound = (0.5 - epsilon_r(2)) * edge_count +
                       6.0 * std::sqrt(2.0) * k_ * std::sqrt(static_cast<double>(edge_count));
        auto found = vertex_cut_separator(sub, bound);
        if (!found) {
            ++out_.stats.separator_fallbacks;
            found = vertex_cut_separator(sub, std::floor(edge_count / 2.0));
        }
        std::vector<int> r;
        if (found) {
            for (int local : found->edges) r.push_back(eset[static_cast<size_t>(local - 1)]);
        } else {
            // No balanced cut at all; degrade to querying one edge.
            ++out_.stats.separator_fallbacks;
            r.push_back(eset.front());
        }
        std::sort(r.begin(), r.end());
        return r;
    }

    int chain(const std::vector<int>& r, size_t i, const std::vector<int>& verts,
              const std::vector<int>& eset, const Charges& lam) {
        auto deg = degrees(eset);
        if (int leaf = leaf_if_violated(verts, deg, lam); leaf >= 0) return leaf;
        if (i == r.size()) return descend(eset, lam);

        int e = r[i];
        log_query(eset, e);
        std::vector<int> rest;
        rest.reserve(eset.size() - 1);
        for (int x : eset)
            if (x != e) rest.push_back(x);
        int node = out_.tree.add_internal(e);
        for (int b = 0; b < 2; ++b) {
            val_[static_cast<size_t>(e)] = b;
            int child = chain(r, i + 1, verts, rest, flipped(lam, e, b));
            out_.tree.nodes[static_cast<size_t>(node)].children.push_back(child);
        }
        val_[static_cast<size_t>(e)] = -1;
        return node;
    }

    // Descend into the odd-charge component of the remaining edges.
    int descend(const std::vector<int>& eset, const Charges& lam) {
        std::vector<int> comp_of(static_cast<size_t>(inst_.graph.n) + 1, -1);
        std::vector<std::vector<int>> comp_verts, comp_edges;
        for (int e : eset) {
            for (int v : inst_.graph.edge(e)) {
                if (comp_of[static_cast<size_t>(v)] >= 0) continue;
                // BFS over the remaining edges from v.
                int id = static_cast<int>(comp_verts.size());
                comp_verts.emplace_back();
                comp_edges.emplace_back();
                std::vector<int> stack{v};
                comp_of[static_cast<size_t>(v)] = id;
                while (!stack.empty()) {
                    int u = stack.back();
                    stack.pop_back();
                    comp_verts[static_cast<size_t>(id)].push_back(u);
                    for (int f : incident_[static_cast<size_t>(u)]) {
                        if (!std::binary_search(eset.begin(), eset.end(), f)) continue;
                        for (int w : inst_.graph.edge(f)) {
                            if (comp_of[static_cast<size_t>(w)] >= 0) continue;
                            comp_of[static_cast<size_t>(w)] = id;
                            stack.push_back(w);
                        }
                    }
                }
            }
        }
        for (int e : eset)
            comp_edges[static_cast<size_t>(comp_of[static_cast<size_t>(inst_.graph.edge(e)[0])])]
                .push_back(e);

        for (size_t id = 0; id < comp_verts.size(); ++id) {
            int parity = 0;
            for (int v : comp_verts[id]) parity ^= lam[static_cast<size_t>(v)];
            if (parity == 1) {
                std::sort(comp_verts[id].begin(), comp_verts[id].end());
                std::sort(comp_edges[id].begin(), comp_edges[id].end());
                return build(comp_verts[id], comp_edges[id], lam);
            }
        }
        throw std::logic_error("odd total charge but no odd component");
    }

    const TseitinInstance& inst_;
    TseitinCnf enc_;
    int k_ = 1;
    int m_ = 0;
    double base_threshold_ = 0.0;
    std::vector<std::vector<int>> incident_;
    std::vector<int> val_;
    std::map<std::vector<int>, std::vector<int>> sep_memo_;
    RefutationResult out_;
};

}  // namespace

RefutationResult refute_tseitin(const Hypergraph& graph, const ChargeLabeling& lambda,
                                const RefuteOptions& options) {
    for (const auto& e : graph.edges)
        if (e.size() != 2) throw std::invalid_argument("refute_tseitin requires a 2-uniform graph");
    {
        auto sorted = graph.edges;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("refute_tseitin requires a simple graph");
    }
    auto inst = make_tseitin(graph, lambda);
    if (!is_odd_charge(inst.lambda))
        throw SatisfiableError("total charge is even; the refuter needs an odd charge labeling", {});
    return TseitinRefuter(inst, options).run();
}

namespace {

std::string trimmed(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

DecisionTree parse_dtree(std::istream& in) {
    std::string line;
    int lineno = 0;
    DecisionTree tree;
    bool have_header = false, done = false;
    std::vector<std::pair<int, int>> open;  // (node index, children attached)

    auto attach = [&](int idx) {
        if (done) throw ParseError("extra nodes after the tree is complete", lineno);
        if (!open.empty()) {
            auto& [parent, got] = open.back();
            tree.nodes[static_cast<size_t>(parent)].children.push_back(idx);
            ++got;
        }
        if (!tree.nodes[static_cast<size_t>(idx)].is_leaf) {
            open.emplace_back(idx, 0);
        } else {
            while (!open.empty() && open.back().second == tree.domain) open.pop_back();
            if (open.empty()) done = true;
        }
    };

    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trimmed(line);
        if (t.empty() || t[0] == 'c') continue;
        std::istringstream ss(t);
        if (!have_header) {
            std::string p, tag;
            int d;
            ss >> p >> tag >> d;
            if (ss.fail() || p != "p" || tag != "dt" || d < 2)
                throw ParseError("expected header 'p dt <d>'", lineno);
            tree.domain = d;
            have_header = true;
            continue;
        }
        std::string kind;
        int arg;
        ss >> kind >> arg;
        if (ss.fail() || (kind != "n" && kind != "l"))
            throw ParseError("expected 'n <var>' or 'l <index>'", lineno);
        std::string extra;
        if (ss >> extra) throw ParseError("trailing tokens on node line", lineno);
        int idx = kind == "n" ? tree.add_internal(arg) : tree.add_leaf(arg);
        attach(idx);
    }
    if (!have_header) throw ParseError("missing 'p dt' header");
    if (tree.nodes.empty()) throw ParseError("tree has no nodes");
    if (!open.empty()) throw ParseError("truncated tree: internal node missing children");
    return tree;
}

DecisionTree parse_dtree_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return parse_dtree(in);
}

void write_dtree(std::ostream& out, const DecisionTree& tree) {
    out << "p dt " << tree.domain << '\n';
    std::function<void(int)> go = [&](int idx) {
        const auto& n = tree.nodes[static_cast<size_t>(idx)];
        if (n.is_leaf) {
            out << "l " << n.leaf << '\n';
            return;
        }
        out << "n " << n.var << '\n';
        for (int c : n.children) go(c);
    };
    if (!tree.nodes.empty()) go(0);
}

ResolutionTrace parse_restrace(std::istream& in) {
    ResolutionTrace trace;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trimmed(line);
        if (t.empty() || t[0] == 'c') continue;
        std::istringstream ss(t);
        ResolutionStep step;
        std::string kind;
        if (!(ss >> step.id >> kind)) throw ParseError("expected '<id> a|r ...'", lineno);
        if (kind == "a") {
            step.axiom = true;
        } else if (kind == "r") {
            step.axiom = false;
            if (!(ss >> step.ant1 >> step.ant2 >> step.pivot))
                throw ParseError("expected '<id> r <id1> <id2> <pivot> ...'", lineno);
        } else {
            throw ParseError("unknown step kind '" + kind + "'", lineno);
        }
        int lit;
        bool terminated = false;
        while (ss >> lit) {
            if (lit == 0) {
                terminated = true;
                break;
            }
            step.clause.push_back(lit);
        }
        if (!terminated) throw ParseError("step not zero-terminated", lineno);
        std::string extra;
        if (ss >> extra) throw ParseError("trailing tokens after terminator", lineno);
        trace.steps.push_back(std::move(step));
    }
    if (trace.steps.empty()) throw ParseError("empty trace");
    return trace;
}

ResolutionTrace parse_restrace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return parse_restrace(in);
}

void write_restrace(std::ostream& out, const ResolutionTrace& trace) {
    for (const auto& step : trace.steps) {
        out << step.id << ' ' << (step.axiom ? "a" : "r");
        if (!step.axiom) out << ' ' << step.ant1 << ' ' << step.ant2 << ' ' << step.pivot;
        for (int lit : step.clause) out << ' ' << lit;
        out << " 0\n";
    }
}

}  // namespace hypersep
