// Command line front end: balanced separators, exact CSP solving/counting,
// Tseitin generation, refutation construction and proof checking.
//
// Exit codes: 0 success; 1 invalid proof object (check); 2 malformed input;
// 3 separator not found within the cap; 4 enumeration budget exceeded;
// 5 refuter given a satisfiable instance; 10/20 SAT/UNSAT for `csp solve`.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hypersep/cnf.hpp"
#include "hypersep/csp.hpp"
#include "hypersep/errors.hpp"
#include "hypersep/experiments.hpp"
#include "hypersep/hypergraph.hpp"
#include "hypersep/refutation.hpp"
#include "hypersep/separator.hpp"
#include "hypersep/tseitin.hpp"

namespace {

using namespace hypersep;

constexpr int kExitOk = 0;
constexpr int kExitInvalidProof = 1;
constexpr int kExitParse = 2;
constexpr int kExitNotFound = 3;
constexpr int kExitBudget = 4;
constexpr int kExitSatisfiable = 5;
constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;

struct SeparatorArgs {
    std::string input;
    std::string method = "auto";
    std::uint64_t seed = 0;
    long max_trials = 1000;
    int cap = -1;
};

int run_separator(const SeparatorArgs& args) {
    Hypergraph h = parse_hg_file(args.input);
    int r = 2, k = std::max(1, max_degree(h));
    for (const auto& e : h.edges) r = std::max(r, static_cast<int>(e.size()));

    std::string method = args.method;
    if (method == "auto") method = h.m() <= 16 ? "exhaustive" : "random";

    SeparatorResult res;
    double threshold = 0.0;
    if (method == "random") {
        auto uni = uniformize(h, r, k);
        auto params = SeparatorParams::make(r, k, std::max(1, uni.graph.n), args.max_trials);
        threshold = params.size_bound(h.m());
        res = random_separator(uni.graph, params, args.seed);
    } else {
        auto uni = uniformize(h, r, k);
        threshold = SeparatorParams::make(r, k, std::max(1, uni.graph.n)).size_bound(h.m());
        int cap = args.cap >= 0 ? args.cap : h.m();
        auto found = exhaustive_separator(h, cap);
        if (!found) {
            std::cout << "ANSWER: NOT_FOUND cap=" << cap << "\n";
            return kExitNotFound;
        }
        res = *found;
    }
    auto counts = is_balanced_separator(h, res.edges).second;

    std::cout << "separator:";
    for (int e : res.edges) std::cout << ' ' << e;
    std::cout << "\ncomponent_edges:";
    for (int c : counts) std::cout << ' ' << c;
    std::cout << "\nANSWER: size=" << res.edges.size() << " method=" << to_string(res.method)
              << " trials=" << res.trials_used << " threshold=" << threshold
              << " fallback=" << (res.used_fallback() ? 1 : 0) << "\n";
    return kExitOk;
}

struct CspArgs {
    std::string input;
    std::string method = "auto";
    bool recursive = false;
    bool witness = false;
    std::uint64_t seed = 0;
    long max_trials = 1000;
    int leaf_budget = 8;
    std::uint64_t enum_budget = 1ull << 28;
};

SolveOptions make_solve_options(const Csp& csp, const CspArgs& args) {
    SolveOptions opts;
    opts.recursive = args.recursive;
    opts.seed = args.seed;
    opts.max_trials = args.max_trials;
    opts.leaf_budget = args.leaf_budget;
    opts.enum_budget = args.enum_budget;
    if (args.method == "exhaustive")
        opts.exhaustive_separator = true;
    else if (args.method == "auto")
        opts.exhaustive_separator = occurring_vars(csp).size() <= 16;
    return opts;
}

void print_witness(const Csp& csp, const PartialAssignment& w) {
    std::cout << "witness:";
    for (int v = 1; v <= csp.num_vars; ++v) {
        auto it = w.find(v);
        std::cout << ' ' << (it == w.end() ? 0 : it->second);
    }
    std::cout << "\n";
}

int run_csp(const CspArgs& args, SolveMode mode) {
    Csp csp = parse_csp_file(args.input);
    auto ans = solve(csp, mode, make_solve_options(csp, args));
    switch (mode) {
        case SolveMode::decide:
            std::cout << "ANSWER: " << (ans.satisfiable ? "SAT" : "UNSAT") << "\n";
            if (ans.satisfiable && args.witness && ans.witness) print_witness(csp, *ans.witness);
            return ans.satisfiable ? kExitSat : kExitUnsat;
        case SolveMode::count:
            std::cout << "ANSWER: " << ans.count.str() << "\n";
            return kExitOk;
        case SolveMode::max:
            std::cout << "ANSWER: " << ans.max_satisfied << "\n";
            if (args.witness && ans.witness) print_witness(csp, *ans.witness);
            return kExitOk;
    }
    return kExitOk;
}

struct TseitinArgs {
    std::string input;
    std::string charge_file;
    bool odd = false;
    std::string csp_out;
    std::string cnf_out;
};

ChargeLabeling load_charge(const Hypergraph& h, const std::string& charge_file, bool odd) {
    if (odd) return odd_charge(h.n);
    if (charge_file.empty()) throw ParseError("a charge file or --odd is required");
    return parse_charge_file(charge_file, h.n);
}

int run_tseitin_gen(const TseitinArgs& args) {
    Hypergraph h = parse_hg_file(args.input);
    auto inst = make_tseitin(h, load_charge(h, args.charge_file, args.odd));
    if (args.csp_out.empty() && args.cnf_out.empty())
        throw ParseError("nothing to do: pass --csp-out and/or --cnf-out");
    if (!args.csp_out.empty()) {
        std::ofstream out(args.csp_out);
        if (!out) throw ParseError("cannot write " + args.csp_out);
        write_csp(out, tseitin_csp(inst));
    }
    if (!args.cnf_out.empty()) {
        std::ofstream out(args.cnf_out);
        if (!out) throw ParseError("cannot write " + args.cnf_out);
        write_tseitin_dimacs(out, tseitin_cnf(inst));
    }
    return kExitOk;
}

struct RefuteArgs {
    std::string input;
    std::string charge_file;
    bool odd = false;
    std::string dt_out;
    std::string res_out;
    std::string method = "auto";
    std::uint64_t seed = 0;
    long max_trials = 1000;
};

void emit_refutation(const RefutationResult& res, const RefuteArgs& args) {
    if (!args.dt_out.empty()) {
        std::ofstream out(args.dt_out);
        if (!out) throw ParseError("cannot write " + args.dt_out);
        write_dtree(out, res.tree);
    }
    if (!args.res_out.empty()) {
        std::ofstream out(args.res_out);
        if (!out) throw ParseError("cannot write " + args.res_out);
        write_restrace(out, res.trace);
    }
    std::cout << "STATS: leaves=" << res.stats.leaves << " depth=" << res.stats.depth
              << " proof_size=" << res.stats.proof_size << " proof_width=" << res.stats.proof_width
              << " separators_used=";
    for (size_t i = 0; i < res.stats.separators_used.size(); ++i) {
        if (i) std::cout << ',';
        std::cout << res.stats.separators_used[i].first << ':'
                  << res.stats.separators_used[i].second;
    }
    std::cout << " fallbacks=" << res.stats.separator_fallbacks << "\n";
}

int run_refute_tseitin(const RefuteArgs& args) {
    Hypergraph h = parse_hg_file(args.input);
    auto lambda = load_charge(h, args.charge_file, args.odd);
    RefuteOptions opts;
    opts.seed = args.seed;
    opts.max_trials = args.max_trials;
    emit_refutation(refute_tseitin(h, lambda, opts), args);
    return kExitOk;
}

int run_refute_csp2(const RefuteArgs& args) {
    Csp csp = parse_csp_file(args.input);
    RefuteOptions opts;
    opts.seed = args.seed;
    opts.max_trials = args.max_trials;
    opts.exhaustive_separator =
        args.method == "exhaustive" ||
        (args.method == "auto" && occurring_vars(csp).size() <= 16);
    emit_refutation(refute_csp2(csp, opts), args);
    return kExitOk;
}

struct CheckArgs {
    std::string cnf_file;
    std::string csp_file;
    std::string tree_file;
    std::string trace_file;
};

int report_check(const CheckResult& res) {
    if (res.ok) {
        std::cout << "ANSWER: VALID\n";
        return kExitOk;
    }
    std::cout << "ANSWER: INVALID " << res.message << "\n";
    return kExitInvalidProof;
}

int run_check_dtree(const CheckArgs& args) {
    auto tree = parse_dtree_file(args.tree_file);
    if (!args.csp_file.empty()) return report_check(check_dtree(parse_csp_file(args.csp_file), tree));
    return report_check(check_dtree(parse_dimacs_file(args.cnf_file), tree));
}

int run_check_res(const CheckArgs& args) {
    auto trace = parse_restrace_file(args.trace_file);
    return report_check(check_resolution(parse_dimacs_file(args.cnf_file), trace));
}

struct ExperimentArgs {
    std::string output;
    int r = 2;
    std::vector<int> n_values = {10, 12, 14};
    std::vector<int> k_values = {3, 4};
    int per_cell = 20;
    std::uint64_t seed = 0;
    int oracle_cap = 30;
    int jobs = 1;
    int sample_induced = 0;
    double alpha = 0.0;  // defaults to 1 - 2^(-1/r)
};

int run_experiment(const ExperimentArgs& args) {
    ExperimentSweep sweep;
    sweep.r = args.r;
    sweep.n_values = args.n_values;
    sweep.k_values = args.k_values;
    sweep.instances_per_cell = args.per_cell;
    sweep.seed = args.seed;
    sweep.oracle_edge_cap = args.oracle_cap;
    sweep.jobs = args.jobs;
    auto report = tightness_experiment(sweep);
    if (args.output.empty()) {
        write_csv(std::cout, report);
    } else {
        std::ofstream out(args.output);
        if (!out) throw ParseError("cannot write " + args.output);
        write_csv(out, report);
        std::cout << "rows=" << report.rows.size() << "\n";
    }
    if (args.sample_induced > 0) {
        // informational spot check of induced-edge regularity per instance
        double alpha = args.alpha > 0 ? args.alpha : 1.0 - std::pow(2.0, -1.0 / args.r);
        for (const auto& row : report.rows) {
            auto h = random_uniform_hypergraph(GeneratorParams{row.n, row.k, row.r, row.seed});
            auto s = sample_induced_regularity(h, row.r, alpha, args.sample_induced, row.seed);
            std::cout << "c induced n=" << row.n << " k=" << row.k << " seed=" << row.seed
                      << " alpha=" << alpha << " samples=" << s.samples
                      << " mean_ratio=" << s.mean_ratio << " min=" << s.min_ratio
                      << " max=" << s.max_ratio << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"balanced hypergraph separators, sparse CSP solving and tree-like refutations"};
    app.require_subcommand(1);

    SeparatorArgs sep_args;
    auto* sep = app.add_subcommand("separator", "find a balanced separator of a .hg hypergraph");
    sep->add_option("--input", sep_args.input, ".hg file")->required();
    sep->add_option("--method", sep_args.method, "random|exhaustive|auto")
        ->check(CLI::IsMember({"random", "exhaustive", "auto"}));
    sep->add_option("--seed", sep_args.seed, "random seed");
    sep->add_option("--max-trials", sep_args.max_trials, "sampling trials before fallback");
    sep->add_option("--cap", sep_args.cap, "size cap for the exhaustive search");

    CspArgs csp_args;
    auto* csp = app.add_subcommand("csp", "solve, count or maximize a .csp instance");
    csp->require_subcommand(1);
    auto add_csp_opts = [&](CLI::App* cmd) {
        cmd->add_option("--input", csp_args.input, ".csp file")->required();
        cmd->add_option("--method", csp_args.method, "random|exhaustive|auto separator")
            ->check(CLI::IsMember({"random", "exhaustive", "auto"}));
        cmd->add_flag("--recursive", csp_args.recursive, "recurse on parts instead of brute force");
        cmd->add_flag("--witness", csp_args.witness, "print a witness assignment");
        cmd->add_option("--seed", csp_args.seed, "random seed");
        cmd->add_option("--max-trials", csp_args.max_trials, "sampling trials before fallback");
        cmd->add_option("--leaf-budget", csp_args.leaf_budget, "recursion cutoff in variables");
        cmd->add_option("--enum-budget", csp_args.enum_budget, "brute force node budget");
    };
    auto* csp_solve = csp->add_subcommand("solve", "decide satisfiability (exit 10 SAT / 20 UNSAT)");
    auto* csp_count = csp->add_subcommand("count", "count satisfying assignments exactly");
    auto* csp_max = csp->add_subcommand("max", "maximize the number of satisfied constraints");
    add_csp_opts(csp_solve);
    add_csp_opts(csp_count);
    add_csp_opts(csp_max);

    TseitinArgs ts_args;
    auto* ts = app.add_subcommand("tseitin", "Tseitin formula generation");
    auto* ts_gen = ts->add_subcommand("gen", "materialize a Tseitin instance as .csp / DIMACS");
    ts_gen->add_option("--input", ts_args.input, ".hg file")->required();
    ts_gen->add_option("--charge", ts_args.charge_file, "charge file (vertex bit per line)");
    ts_gen->add_flag("--odd", ts_args.odd, "odd charge: 1 on the minimum vertex id");
    ts_gen->add_option("--csp-out", ts_args.csp_out, "write the CSP form here");
    ts_gen->add_option("--cnf-out", ts_args.cnf_out, "write the DIMACS form here");
    ts->require_subcommand(1);

    RefuteArgs ref_args;
    auto* ref = app.add_subcommand("refute", "construct tree-like resolution refutations");
    ref->require_subcommand(1);
    auto* ref_ts = ref->add_subcommand("tseitin", "deterministic Tseitin refuter (.hg + charge)");
    ref_ts->add_option("--input", ref_args.input, ".hg file")->required();
    ref_ts->add_option("--charge", ref_args.charge_file, "charge file");
    ref_ts->add_flag("--odd", ref_args.odd, "odd charge: 1 on the minimum vertex id");
    auto* ref_csp = ref->add_subcommand("csp2", "separator refuter for an unsatisfiable (2,k)-CSP");
    ref_csp->add_option("--input", ref_args.input, ".csp file")->required();
    for (auto* cmd : {ref_ts, ref_csp}) {
        cmd->add_option("--dt-out", ref_args.dt_out, "write the decision tree here");
        cmd->add_option("--res-out", ref_args.res_out, "write the resolution trace here");
        cmd->add_option("--method", ref_args.method, "random|exhaustive|auto separator")
            ->check(CLI::IsMember({"random", "exhaustive", "auto"}));
        cmd->add_option("--seed", ref_args.seed, "random seed");
        cmd->add_option("--max-trials", ref_args.max_trials, "sampling trials before fallback");
    }

    CheckArgs chk_args;
    auto* chk = app.add_subcommand("check", "verify decision trees and resolution traces");
    chk->require_subcommand(1);
    auto* chk_dt = chk->add_subcommand("dtree", "check a .dt decision tree");
    chk_dt->add_option("--tree", chk_args.tree_file, ".dt file")->required();
    chk_dt->add_option("--cnf", chk_args.cnf_file, "DIMACS source");
    chk_dt->add_option("--csp", chk_args.csp_file, ".csp source");
    auto* chk_res = chk->add_subcommand("res", "check a .res resolution trace");
    chk_res->add_option("--trace", chk_args.trace_file, ".res file")->required();
    chk_res->add_option("--cnf", chk_args.cnf_file, "DIMACS source")->required();

    ExperimentArgs exp_args;
    auto* exp = app.add_subcommand("experiment", "separator tightness sweep (CSV report)");
    exp->add_option("--output", exp_args.output, "CSV path (stdout when omitted)");
    exp->add_option("--r", exp_args.r, "edge uniformity");
    exp->add_option("--n", exp_args.n_values, "vertex counts")->delimiter(',');
    exp->add_option("--k", exp_args.k_values, "target degrees")->delimiter(',');
    exp->add_option("--per-cell", exp_args.per_cell, "instances per (n, k) cell");
    exp->add_option("--seed", exp_args.seed, "sweep seed");
    exp->add_option("--oracle-cap", exp_args.oracle_cap, "oracle edge cap");
    exp->add_option("--jobs", exp_args.jobs, "worker thread cap");
    exp->add_option("--sample-induced", exp_args.sample_induced,
                    "sample induced-edge regularity with this many subsets per instance");
    exp->add_option("--alpha", exp_args.alpha, "subset fraction for the regularity samples");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sep->parsed()) return run_separator(sep_args);
        if (csp->parsed()) {
            if (csp_solve->parsed()) return run_csp(csp_args, SolveMode::decide);
            if (csp_count->parsed()) return run_csp(csp_args, SolveMode::count);
            if (csp_max->parsed()) return run_csp(csp_args, SolveMode::max);
        }
        if (ts->parsed() && ts_gen->parsed()) return run_tseitin_gen(ts_args);
        if (ref->parsed()) {
            if (ref_ts->parsed()) return run_refute_tseitin(ref_args);
            if (ref_csp->parsed()) return run_refute_csp2(ref_args);
        }
        if (chk->parsed()) {
            if (chk_dt->parsed()) {
                if (chk_args.cnf_file.empty() && chk_args.csp_file.empty())
                    throw ParseError("check dtree needs --cnf or --csp");
                return run_check_dtree(chk_args);
            }
            if (chk_res->parsed()) return run_check_res(chk_args);
        }
        if (exp->parsed()) return run_experiment(exp_args);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const SatisfiableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (!e.witness().empty()) {
            std::cerr << "witness:";
            for (size_t v = 1; v < e.witness().size(); ++v) std::cerr << ' ' << e.witness()[v];
            std::cerr << "\n";
        }
        return kExitSatisfiable;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitOk;
}
