#include "hypersep/tseitin.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hypersep/errors.hpp"

namespace hypersep {

ChargeLabeling make_charge(int n, const std::vector<std::pair<int, int>>& assignments) {
    ChargeLabeling lambda;
    lambda.bit.assign(static_cast<size_t>(n) + 1, 0);
    for (auto [v, b] : assignments) {
        if (v < 1 || v > n) throw std::invalid_argument("charge vertex out of range");
        if (b != 0 && b != 1) throw std::invalid_argument("charge bit must be 0 or 1");
        lambda.bit[static_cast<size_t>(v)] = static_cast<std::uint8_t>(b);
    }
    for (int v = 1; v <= n; ++v) lambda.parity ^= lambda.bit[static_cast<size_t>(v)];
    return lambda;
}

ChargeLabeling odd_charge(int n) {
    if (n < 1) throw std::invalid_argument("odd charge needs at least one vertex");
    return make_charge(n, {{1, 1}});
}

bool is_odd_charge(const ChargeLabeling& lambda) { return lambda.parity == 1; }

TseitinInstance make_tseitin(Hypergraph graph, ChargeLabeling lambda) {
    if (lambda.n() != graph.n)
        throw std::invalid_argument("charge labeling does not match the vertex count");
    return TseitinInstance{std::move(graph), std::move(lambda)};
}

namespace {

std::vector<std::vector<int>> incident_edges(const Hypergraph& h) {
    std::vector<std::vector<int>> inc(static_cast<size_t>(h.n) + 1);
    for (int i = 1; i <= h.m(); ++i)
        for (int v : h.edge(i)) inc[static_cast<size_t>(v)].push_back(i);
    return inc;
}

int tuple_parity(const std::vector<int>& tuple) {
    int p = 0;
    for (int b : tuple) p ^= b;
    return p;
}

}  // namespace

Csp tseitin_csp(const TseitinInstance& t) {
    auto inc = incident_edges(t.graph);
    std::vector<Constraint> constraints;
    constraints.reserve(static_cast<size_t>(t.graph.n));
    for (int v = 1; v <= t.graph.n; ++v) {
        Constraint c;
        c.scope = inc[static_cast<size_t>(v)];
        const int deg = static_cast<int>(c.scope.size());
        const int want = t.lambda.bit[static_cast<size_t>(v)];
        std::vector<int> tuple(static_cast<size_t>(deg));
        for (long long x = 0; x < (1ll << deg); ++x) {
            for (int i = 0; i < deg; ++i)
                tuple[static_cast<size_t>(i)] = static_cast<int>((x >> (deg - 1 - i)) & 1);
            if (tuple_parity(tuple) == want) c.allowed.push_back(tuple);
        }
        constraints.push_back(std::move(c));
    }
    return make_csp(t.graph.m(), 2, std::move(constraints));
}

TseitinCnf tseitin_cnf(const TseitinInstance& t) {
    auto enc = cnf_encode(tseitin_csp(t));
    TseitinCnf out;
    out.cnf = std::move(enc.cnf);
    out.clause_vertex = std::move(enc.clause_constraint);  // constraint i is vertex i
    out.block_start.assign(static_cast<size_t>(t.graph.n) + 2, 0);
    // block_start[v] = first clause of vertex v; vertices with no clauses get
    // the next block's start so lookups stay monotone.
    int clause = static_cast<int>(out.cnf.clauses.size());
    for (int v = t.graph.n; v >= 1; --v) {
        while (clause >= 1 && out.clause_vertex[static_cast<size_t>(clause)] == v) --clause;
        out.block_start[static_cast<size_t>(v)] = clause + 1;
    }
    out.block_start[static_cast<size_t>(t.graph.n) + 1] = static_cast<int>(out.cnf.clauses.size()) + 1;
    return out;
}

int falsified_clause(const TseitinCnf& enc, const TseitinInstance& t, int v,
                     const std::vector<int>& tuple) {
    const int want = t.lambda.bit[static_cast<size_t>(v)];
    if (tuple_parity(tuple) == want)
        throw std::invalid_argument("tuple satisfies the vertex parity");
    // Forbidden tuples alternate with allowed ones in lexicographic order;
    // the rank of a forbidden tuple is its numeric value halved.
    long long value = 0;
    for (int b : tuple) value = (value << 1) | b;
    return enc.block_start[static_cast<size_t>(v)] + static_cast<int>(value >> 1);
}

ChargeLabeling update_charge(const ChargeLabeling& lambda, const Edge& e, int b) {
    ChargeLabeling out = lambda;
    if (b == 0) return out;
    for (int v : e) {
        out.bit[static_cast<size_t>(v)] ^= 1;
        out.parity ^= 1;
    }
    return out;
}

ChargeLabeling parse_charge(std::istream& in, int n) {
    std::vector<std::pair<int, int>> assignments;
    std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ss(line);
        int v, b;
        if (!(ss >> v >> b)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw ParseError("expected '<vertex> <bit>'", lineno);
        }
        std::string extra;
        if (ss >> extra) throw ParseError("trailing tokens", lineno);
        if (v < 1 || v > n) throw ParseError("vertex id out of range", lineno);
        if (b != 0 && b != 1) throw ParseError("charge bit must be 0 or 1", lineno);
        if (seen[static_cast<size_t>(v)]) throw ParseError("duplicate vertex", lineno);
        seen[static_cast<size_t>(v)] = 1;
        assignments.emplace_back(v, b);
    }
    return make_charge(n, assignments);
}

ChargeLabeling parse_charge_file(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return parse_charge(in, n);
}

void write_charge(std::ostream& out, const ChargeLabeling& lambda) {
    for (int v = 1; v <= lambda.n(); ++v)
        out << v << ' ' << static_cast<int>(lambda.bit[static_cast<size_t>(v)]) << '\n';
}

void write_tseitin_dimacs(std::ostream& out, const TseitinCnf& enc) {
    std::vector<std::pair<int, std::string>> comments;
    int prev = 0;
    for (size_t i = 1; i < enc.clause_vertex.size(); ++i) {
        if (enc.clause_vertex[i] != prev) {
            prev = enc.clause_vertex[i];
            comments.emplace_back(static_cast<int>(i), "vertex " + std::to_string(prev));
        }
    }
    write_dimacs(out, enc.cnf, comments);
}

}  // namespace hypersep
