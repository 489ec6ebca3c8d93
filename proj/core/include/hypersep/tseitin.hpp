#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hypersep/cnf.hpp"
#include "hypersep/csp.hpp"
#include "hypersep/hypergraph.hpp"

namespace hypersep {

/// Vertex bit-labeling with the total parity cached.
struct ChargeLabeling {
    std::vector<std::uint8_t> bit;  // index 1..n, slot 0 unused
    int parity = 0;                 // XOR of all charges

    int n() const { return static_cast<int>(bit.size()) - 1; }
    bool operator==(const ChargeLabeling&) const = default;
};

ChargeLabeling make_charge(int n, const std::vector<std::pair<int, int>>& assignments);

/// Charge 1 on the minimum vertex id, 0 elsewhere. Requires n >= 1.
ChargeLabeling odd_charge(int n);

bool is_odd_charge(const ChargeLabeling& lambda);

/// One parity constraint per vertex over its incident edge variables.
struct TseitinInstance {
    Hypergraph graph;
    ChargeLabeling lambda;
};

TseitinInstance make_tseitin(Hypergraph graph, ChargeLabeling lambda);

/// Variables are the edges of the graph; vertex v contributes the constraint
/// whose allowed tuples are the bit vectors of parity lambda(v) over its
/// incident edges. A degree-0 vertex becomes TRUE (charge 0) or FALSE.
Csp tseitin_csp(const TseitinInstance& t);

struct TseitinCnf {
    Cnf cnf;
    std::vector<int> clause_vertex;  // 1-based clause index -> vertex
    std::vector<int> block_start;    // vertex -> first clause index of its block
};

/// CNF of the parity constraints; per vertex 2^(deg-1) clauses forbidding the
/// wrong-parity assignments, lexicographic over incident edges sorted by edge
/// index. A charge-1 degree-0 vertex emits the empty clause.
TseitinCnf tseitin_cnf(const TseitinInstance& t);

/// Clause index falsified by assigning `tuple` (wrong parity) to vertex v's
/// incident edges in edge-index order.
int falsified_clause(const TseitinCnf& enc, const TseitinInstance& t, int v,
                     const std::vector<int>& tuple);

/// Flips lambda at every vertex of e when b = 1; charge parity is preserved
/// whenever |e| is even.
ChargeLabeling update_charge(const ChargeLabeling& lambda, const Edge& e, int b);

/// Charge file: `<vertex-id> <bit>` lines; missing vertices default to 0.
ChargeLabeling parse_charge(std::istream& in, int n);
ChargeLabeling parse_charge_file(const std::string& path, int n);
void write_charge(std::ostream& out, const ChargeLabeling& lambda);

/// DIMACS with a `c vertex <v>` provenance comment before each clause block.
void write_tseitin_dimacs(std::ostream& out, const TseitinCnf& enc);

}  // namespace hypersep
