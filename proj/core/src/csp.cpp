#include "hypersep/csp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hypersep/errors.hpp"
#include "hypersep/rng.hpp"
#include "hypersep/separator.hpp"

namespace hypersep {

namespace {

std::vector<int> default_universe(int num_vars) {
    std::vector<int> vars(static_cast<size_t>(num_vars));
    for (int i = 0; i < num_vars; ++i) vars[static_cast<size_t>(i)] = i + 1;
    return vars;
}

bool tuple_allowed(const Constraint& c, const std::vector<int>& tuple) {
    return std::binary_search(c.allowed.begin(), c.allowed.end(), tuple);
}

}  // namespace

Csp make_csp(int num_vars, int domain, std::vector<Constraint> constraints) {
    if (num_vars < 0) throw std::invalid_argument("negative variable count");
    if (domain < 2) throw std::invalid_argument("domain must be at least 2");
    for (auto& c : constraints) {
        std::vector<int> seen = c.scope;
        std::sort(seen.begin(), seen.end());
        for (size_t i = 0; i < seen.size(); ++i) {
            if (seen[i] < 1 || seen[i] > num_vars)
                throw std::invalid_argument("scope variable out of range");
            if (i > 0 && seen[i] == seen[i - 1])
                throw std::invalid_argument("duplicate variable in scope");
        }
        for (const auto& t : c.allowed) {
            if (t.size() != c.scope.size()) throw std::invalid_argument("tuple arity mismatch");
            for (int v : t)
                if (v < 0 || v >= domain) throw std::invalid_argument("tuple value out of range");
        }
        std::sort(c.allowed.begin(), c.allowed.end());
        if (std::adjacent_find(c.allowed.begin(), c.allowed.end()) != c.allowed.end())
            throw std::invalid_argument("duplicate allowed tuple");
    }
    return Csp{num_vars, domain, std::move(constraints), default_universe(num_vars)};
}

std::vector<int> occurring_vars(const Csp& csp) {
    std::vector<int> occ;
    for (const auto& c : csp.constraints) occ.insert(occ.end(), c.scope.begin(), c.scope.end());
    std::sort(occ.begin(), occ.end());
    occ.erase(std::unique(occ.begin(), occ.end()), occ.end());
    return occ;
}

std::vector<int> variable_frequencies(const Csp& csp) {
    std::vector<int> freq(static_cast<size_t>(csp.num_vars) + 1, 0);
    for (const auto& c : csp.constraints)
        for (int v : c.scope) ++freq[static_cast<size_t>(v)];
    return freq;
}

ConstraintHypergraph constraint_hypergraph(const Csp& csp) {
    std::map<int, Edge> by_var;  // variable id -> constraints containing it
    for (size_t i = 0; i < csp.constraints.size(); ++i)
        for (int v : csp.constraints[i].scope) by_var[v].push_back(static_cast<int>(i) + 1);

    ConstraintHypergraph out;
    out.graph.n = static_cast<int>(csp.constraints.size());
    out.edge_var.push_back(0);
    for (auto& [var, constraints] : by_var) {
        out.graph.edges.push_back(std::move(constraints));
        out.edge_var.push_back(var);
    }
    for (int v : csp.vars)
        if (!by_var.count(v)) out.free_vars.push_back(v);
    return out;
}

Csp restrict_csp(const Csp& csp, const PartialAssignment& rho) {
    for (const auto& [var, val] : rho) {
        if (val < 0 || val >= csp.domain)
            throw std::invalid_argument("restriction assigns out-of-range value");
        if (!std::binary_search(csp.vars.begin(), csp.vars.end(), var))
            throw std::invalid_argument("restriction assigns a variable outside the universe");
    }
    Csp out;
    out.num_vars = csp.num_vars;
    out.domain = csp.domain;
    for (int v : csp.vars)
        if (!rho.count(v)) out.vars.push_back(v);

    for (const auto& c : csp.constraints) {
        Constraint nc;
        std::vector<int> keep_pos;
        std::vector<std::pair<int, int>> fixed;  // (position, required value)
        for (size_t i = 0; i < c.scope.size(); ++i) {
            auto it = rho.find(c.scope[i]);
            if (it == rho.end()) {
                keep_pos.push_back(static_cast<int>(i));
                nc.scope.push_back(c.scope[i]);
            } else {
                fixed.emplace_back(static_cast<int>(i), it->second);
            }
        }
        for (const auto& t : c.allowed) {
            bool match = true;
            for (auto [pos, val] : fixed)
                if (t[static_cast<size_t>(pos)] != val) { match = false; break; }
            if (!match) continue;
            std::vector<int> projected;
            projected.reserve(keep_pos.size());
            for (int pos : keep_pos) projected.push_back(t[static_cast<size_t>(pos)]);
            nc.allowed.push_back(std::move(projected));
        }
        std::sort(nc.allowed.begin(), nc.allowed.end());
        nc.allowed.erase(std::unique(nc.allowed.begin(), nc.allowed.end()), nc.allowed.end());
        out.constraints.push_back(std::move(nc));
    }
    return out;
}

Decomposition decompose(const Csp& csp) {
    auto ch = constraint_hypergraph(csp);
    auto comps = connected_components(ch.graph);

    Decomposition out;
    out.free_vars = static_cast<int>(ch.free_vars.size());
    for (int c : comps.isolated_vertices) {
        const Constraint& k = csp.constraints[static_cast<size_t>(c - 1)];
        if (k.trivially_true())
            ++out.trivially_true;
        else
            ++out.trivially_false;
    }
    for (const auto& comp : comps.components) {
        Csp part;
        part.num_vars = csp.num_vars;
        part.domain = csp.domain;
        for (int c : comp.vertices)
            part.constraints.push_back(csp.constraints[static_cast<size_t>(c - 1)]);
        for (int e : comp.edges) part.vars.push_back(ch.edge_var[static_cast<size_t>(e)]);
        std::sort(part.vars.begin(), part.vars.end());
        out.parts.push_back(std::move(part));
    }
    return out;
}

namespace {

BigInt bigint_pow(int base, long long exp) {
    BigInt result = 1;
    for (long long i = 0; i < exp; ++i) result *= base;
    return result;
}

class BruteForcer {
public:
    BruteForcer(const Csp& csp, SolveMode mode, std::uint64_t budget)
        : csp_(csp), mode_(mode), budget_(budget) {
        occ_ = occurring_vars(csp);
        value_.assign(static_cast<size_t>(csp.num_vars) + 1, -1);
        std::vector<int> pos(static_cast<size_t>(csp.num_vars) + 1, -1);
        for (size_t i = 0; i < occ_.size(); ++i) pos[static_cast<size_t>(occ_[i])] = static_cast<int>(i);
        completes_at_.assign(occ_.size(), {});
        for (size_t ci = 0; ci < csp_.constraints.size(); ++ci) {
            const Constraint& c = csp_.constraints[ci];
            if (c.scope.empty()) {
                if (c.trivially_true())
                    ++base_true_;
                else
                    any_false_ = true;
                continue;
            }
            int last = 0;
            for (int v : c.scope) last = std::max(last, pos[static_cast<size_t>(v)]);
            completes_at_[static_cast<size_t>(last)].push_back(static_cast<int>(ci));
        }
    }

    SolveAnswer run() {
        SolveAnswer ans;
        ans.mode = mode_;
        if (any_false_ && mode_ != SolveMode::max) {
            ans.satisfiable = false;
            ans.count = 0;
            return ans;
        }
        recurse(0, 0);
        long long free_count = static_cast<long long>(csp_.vars.size()) -
                               static_cast<long long>(occ_.size());
        switch (mode_) {
            case SolveMode::decide:
                ans.satisfiable = found_;
                if (found_) ans.witness = to_witness(first_witness_);
                break;
            case SolveMode::count:
                ans.count = count_ * bigint_pow(csp_.domain, free_count);
                ans.satisfiable = ans.count != 0;
                break;
            case SolveMode::max:
                ans.max_satisfied = best_max_;
                ans.witness = to_witness(best_witness_);
                break;
        }
        return ans;
    }

private:
    // Returns true to cut the whole search (decide found a witness).
    bool recurse(size_t depth, int sat_running) {
        if (++visited_ > budget_) throw BudgetError("brute force enumeration budget exceeded");
        if (depth == occ_.size()) return leaf(sat_running);
        int var = occ_[depth];
        for (int val = 0; val < csp_.domain; ++val) {
            value_[static_cast<size_t>(var)] = val;
            bool ok = true;
            int newly_sat = 0;
            for (int ci : completes_at_[depth]) {
                if (evaluate(csp_.constraints[static_cast<size_t>(ci)]))
                    ++newly_sat;
                else
                    ok = false;
                if (!ok && mode_ != SolveMode::max) break;
            }
            if (mode_ == SolveMode::max || ok) {
                if (recurse(depth + 1, sat_running + newly_sat)) return true;
            }
        }
        value_[static_cast<size_t>(var)] = -1;
        return false;
    }

    bool leaf(int sat_running) {
        switch (mode_) {
            case SolveMode::decide:
                found_ = true;
                first_witness_ = value_;
                return true;
            case SolveMode::count:
                ++count_;
                return false;
            case SolveMode::max: {
                long long total = base_true_ + sat_running;
                if (total > best_max_) {
                    best_max_ = total;
                    best_witness_ = value_;
                }
                return false;
            }
        }
        return false;
    }

    bool evaluate(const Constraint& c) const {
        std::vector<int> tuple;
        tuple.reserve(c.scope.size());
        for (int v : c.scope) tuple.push_back(value_[static_cast<size_t>(v)]);
        return tuple_allowed(c, tuple);
    }

    PartialAssignment to_witness(const std::vector<int>& value) const {
        PartialAssignment w;
        for (int v : csp_.vars) {
            int val = value.empty() ? -1 : value[static_cast<size_t>(v)];
            w[v] = val < 0 ? 0 : val;
        }
        return w;
    }

    const Csp& csp_;
    SolveMode mode_;
    std::uint64_t budget_;
    std::uint64_t visited_ = 0;
    std::vector<int> occ_;
    std::vector<int> value_;
    std::vector<std::vector<int>> completes_at_;
    int base_true_ = 0;
    bool any_false_ = false;
    BigInt count_ = 0;
    bool found_ = false;
    std::vector<int> first_witness_;
    long long best_max_ = -1;
    std::vector<int> best_witness_;
};

}  // namespace

SolveAnswer brute_force(const Csp& csp, SolveMode mode, std::uint64_t budget) {
    return BruteForcer(csp, mode, budget).run();
}

namespace {

struct SolveContext {
    SolveOptions opts;
    std::uint64_t seed_stream = 0;
};

SolveAnswer solve_rec(const Csp& csp, SolveMode mode, SolveContext& ctx);

SolveAnswer answer_part(const Csp& part, SolveMode mode, SolveContext& ctx) {
    if (ctx.opts.recursive && static_cast<int>(part.vars.size()) > ctx.opts.leaf_budget)
        return solve_rec(part, mode, ctx);
    return brute_force(part, mode, ctx.opts.enum_budget);
}

PartialAssignment merged_witness(const Csp& csp, const PartialAssignment& rho,
                                 const std::vector<PartialAssignment>& parts) {
    PartialAssignment w;
    for (int v : csp.vars) w[v] = 0;
    for (const auto& [var, val] : rho) w[var] = val;
    for (const auto& pw : parts)
        for (const auto& [var, val] : pw) w[var] = val;
    return w;
}

SolveAnswer solve_rec(const Csp& csp, SolveMode mode, SolveContext& ctx) {
    SolveAnswer ans;
    ans.mode = mode;
    ans.stats.separator_method = "trivial";

    auto occ = occurring_vars(csp);
    if (occ.empty()) {
        auto dec = decompose(csp);
        ans.stats.branch_space = 1;
        ans.stats.branches_visited = 1;
        bool sat = dec.trivially_false == 0;
        switch (mode) {
            case SolveMode::decide:
                ans.satisfiable = sat;
                if (sat) ans.witness = merged_witness(csp, {}, {});
                break;
            case SolveMode::count:
                ans.count = sat ? bigint_pow(csp.domain, static_cast<long long>(csp.vars.size()))
                               : BigInt(0);
                ans.satisfiable = sat && ans.count != 0;
                break;
            case SolveMode::max:
                ans.max_satisfied = dec.trivially_true;
                ans.witness = merged_witness(csp, {}, {});
                break;
        }
        return ans;
    }

    auto ch = constraint_hypergraph(csp);
    const Hypergraph& h = ch.graph;
    int freq = 0;
    for (const auto& e : h.edges) freq = std::max(freq, static_cast<int>(e.size()));
    const int r_eff = std::max(2, freq);
    const int k = std::max(1, max_degree(h));
    auto uni = uniformize(h, r_eff, k);
    auto params = SeparatorParams::make(r_eff, k, uni.graph.n, ctx.opts.max_trials);

    SeparatorResult sep;
    if (ctx.opts.exhaustive_separator) {
        int cap = std::min(h.m(), std::max((h.m() + 1) / 2,
                                           static_cast<int>(std::floor(params.size_bound(h.m())))));
        sep = *exhaustive_separator(uni.graph, cap);
    } else {
        sep = random_separator(uni.graph, params, derive_seed(ctx.opts.seed, ctx.seed_stream++));
    }

    std::vector<int> r_vars;
    r_vars.reserve(sep.edges.size());
    for (int e : sep.edges) r_vars.push_back(ch.edge_var[static_cast<size_t>(e)]);
    std::sort(r_vars.begin(), r_vars.end());

    ans.stats.branch_space = bigint_pow(csp.domain, static_cast<long long>(r_vars.size()));
    ans.stats.separator_size = static_cast<int>(r_vars.size());
    ans.stats.separator_bound = params.size_bound(h.m());
    ans.stats.separator_fallback = sep.used_fallback();
    ans.stats.separator_method = to_string(sep.method);

    BigInt total_count = 0;
    long long best_max = -1;
    std::optional<PartialAssignment> best_witness;
    bool sat_found = false;

    std::vector<int> odom(r_vars.size(), 0);
    bool more = true;
    while (more) {
        ans.stats.branches_visited += 1;
        PartialAssignment rho;
        for (size_t i = 0; i < r_vars.size(); ++i) rho[r_vars[i]] = odom[i];

        auto restricted = restrict_csp(csp, rho);
        auto dec = decompose(restricted);

        if (mode == SolveMode::max || dec.trivially_false == 0) {
            bool all_sat = true;
            long long branch_max = dec.trivially_true;
            BigInt branch_count = bigint_pow(csp.domain, dec.free_vars);
            std::vector<PartialAssignment> part_witnesses;
            for (const auto& part : dec.parts) {
                auto pa = answer_part(part, mode, ctx);
                switch (mode) {
                    case SolveMode::decide:
                        if (!pa.satisfiable) all_sat = false;
                        else if (pa.witness) part_witnesses.push_back(*pa.witness);
                        break;
                    case SolveMode::count:
                        branch_count *= pa.count;
                        break;
                    case SolveMode::max:
                        branch_max += pa.max_satisfied;
                        if (pa.witness) part_witnesses.push_back(*pa.witness);
                        break;
                }
                if (mode == SolveMode::decide && !all_sat) break;
                if (mode == SolveMode::count && branch_count == 0) break;
            }
            switch (mode) {
                case SolveMode::decide:
                    if (all_sat) {
                        ans.satisfiable = true;
                        ans.witness = merged_witness(csp, rho, part_witnesses);
                        sat_found = true;
                    }
                    break;
                case SolveMode::count:
                    total_count += branch_count;
                    break;
                case SolveMode::max:
                    if (branch_max > best_max) {
                        best_max = branch_max;
                        best_witness = merged_witness(csp, rho, part_witnesses);
                    }
                    break;
            }
        }
        if (sat_found) break;

        // next assignment, lexicographic over the sorted separator variables
        more = false;
        for (size_t i = odom.size(); i-- > 0;) {
            if (++odom[i] < csp.domain) {
                more = true;
                break;
            }
            odom[i] = 0;
        }
        if (odom.empty()) more = false;
    }

    switch (mode) {
        case SolveMode::decide:
            break;  // satisfiable/witness already set
        case SolveMode::count:
            ans.count = total_count;
            ans.satisfiable = total_count != 0;
            break;
        case SolveMode::max:
            ans.max_satisfied = best_max < 0 ? 0 : best_max;
            ans.witness = best_witness;
            break;
    }
    return ans;
}

}  // namespace

SolveAnswer solve(const Csp& csp, SolveMode mode, const SolveOptions& options) {
    SolveContext ctx{options, 0};
    return solve_rec(csp, mode, ctx);
}

HighFrequencyPlan high_frequency_preprocess(const Csp& csp, double r_avg) {
    HighFrequencyPlan plan;
    int threshold = static_cast<int>(std::ceil(2.0 * r_avg));
    plan.residual_bound = threshold - 1;
    auto freq = variable_frequencies(csp);
    for (int v : csp.vars)
        if (freq[static_cast<size_t>(v)] >= threshold) plan.branch_vars.push_back(v);
    return plan;
}

CnfEncoding cnf_encode(const Csp& csp) {
    if (csp.domain != 2) throw std::invalid_argument("cnf_encode requires domain 2");
    CnfEncoding enc;
    enc.cnf.num_vars = csp.num_vars;
    enc.clause_constraint.push_back(0);
    for (size_t ci = 0; ci < csp.constraints.size(); ++ci) {
        const Constraint& c = csp.constraints[ci];
        const int a = c.arity();
        std::vector<int> tuple(static_cast<size_t>(a));
        for (long long v = 0; v < (1ll << a); ++v) {
            for (int i = 0; i < a; ++i) tuple[static_cast<size_t>(i)] = static_cast<int>((v >> (a - 1 - i)) & 1);
            if (tuple_allowed(c, tuple)) continue;
            Clause clause;
            clause.reserve(static_cast<size_t>(a));
            for (int i = 0; i < a; ++i)
                clause.push_back(tuple[static_cast<size_t>(i)] == 0 ? c.scope[static_cast<size_t>(i)]
                                                                    : -c.scope[static_cast<size_t>(i)]);
            enc.cnf.clauses.push_back(std::move(clause));
            enc.clause_constraint.push_back(static_cast<int>(ci) + 1);
        }
    }
    return enc;
}

namespace {

// Pulls raw lines, tracking line numbers and skipping `c` comments.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    // Next line that is not a comment; returns false at EOF. Blank lines are
    // returned (arity-0 tuples are blank).
    bool next(std::string& line) {
        while (std::getline(in_, line)) {
            ++lineno_;
            if (!line.empty() && line[0] == 'c') continue;
            return true;
        }
        return false;
    }

    // Next line with actual content.
    bool next_content(std::string& line) {
        while (next(line)) {
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    }

    int lineno() const { return lineno_; }

private:
    std::istream& in_;
    int lineno_ = 0;
};

}  // namespace

Csp parse_csp(std::istream& in) {
    LineReader reader(in);
    std::string line;
    if (!reader.next_content(line)) throw ParseError("missing 'p csp' header");
    std::istringstream hs(line);
    std::string p, tag;
    int m = -1, d = -1, nc = -1;
    hs >> p >> tag >> m >> d >> nc;
    if (hs.fail() || p != "p" || tag != "csp" || m < 0 || d < 2 || nc < 0)
        throw ParseError("expected header 'p csp <vars> <domain> <constraints>'", reader.lineno());

    std::vector<Constraint> constraints;
    for (int i = 0; i < nc; ++i) {
        if (!reader.next_content(line))
            throw ParseError("fewer constraints than the header declares");
        std::istringstream ss(line);
        int arity;
        if (!(ss >> arity) || arity < 0) throw ParseError("bad constraint arity", reader.lineno());
        Constraint c;
        for (int j = 0; j < arity; ++j) {
            int v;
            if (!(ss >> v)) throw ParseError("truncated constraint scope", reader.lineno());
            if (v < 1 || v > m) throw ParseError("scope variable out of range", reader.lineno());
            c.scope.push_back(v);
        }
        long t;
        if (!(ss >> t) || t < 0) throw ParseError("bad tuple count", reader.lineno());
        std::string extra;
        if (ss >> extra) throw ParseError("trailing tokens after constraint line", reader.lineno());
        for (long j = 0; j < t; ++j) {
            if (arity == 0) {
                if (!reader.next(line)) throw ParseError("missing tuple line");
                std::istringstream ts(line);
                std::string anything;
                if (ts >> anything) throw ParseError("arity-0 tuple line must be empty", reader.lineno());
                c.allowed.push_back({});
                continue;
            }
            if (!reader.next_content(line)) throw ParseError("missing tuple line");
            std::istringstream ts(line);
            std::vector<int> tuple;
            int v;
            while (ts >> v) {
                if (v < 0 || v >= d) throw ParseError("tuple value out of range", reader.lineno());
                tuple.push_back(v);
            }
            if (!ts.eof()) throw ParseError("non-integer token in tuple", reader.lineno());
            if (static_cast<int>(tuple.size()) != arity)
                throw ParseError("tuple arity mismatch", reader.lineno());
            c.allowed.push_back(std::move(tuple));
        }
        std::sort(c.allowed.begin(), c.allowed.end());
        if (std::adjacent_find(c.allowed.begin(), c.allowed.end()) != c.allowed.end())
            throw ParseError("duplicate allowed tuple", reader.lineno());
        constraints.push_back(std::move(c));
    }
    if (reader.next_content(line)) throw ParseError("trailing content after constraints", reader.lineno());

    try {
        return make_csp(m, d, std::move(constraints));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

Csp parse_csp_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return parse_csp(in);
}

void write_csp(std::ostream& out, const Csp& csp) {
    out << "p csp " << csp.num_vars << ' ' << csp.domain << ' ' << csp.constraints.size() << '\n';
    for (const auto& c : csp.constraints) {
        out << c.arity();
        for (int v : c.scope) out << ' ' << v;
        out << ' ' << c.allowed.size() << '\n';
        for (const auto& t : c.allowed) {
            for (size_t i = 0; i < t.size(); ++i) out << (i ? " " : "") << t[i];
            out << '\n';
        }
    }
}

}  // namespace hypersep
