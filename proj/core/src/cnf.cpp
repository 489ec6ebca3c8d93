#include "hypersep/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hypersep/errors.hpp"

namespace hypersep {

Clause normalized(const Clause& c) {
    Clause out = c;
    std::sort(out.begin(), out.end(),
              [](int a, int b) { return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a < b; });
    return out;
}

bool clause_falsified(const Clause& c, const std::vector<int>& value) {
    for (int lit : c) {
        int v = value[static_cast<size_t>(std::abs(lit))];
        if (v < 0) return false;
        if ((lit > 0 && v == 1) || (lit < 0 && v == 0)) return false;
    }
    return true;
}

bool clause_satisfied(const Clause& c, const std::vector<int>& value) {
    for (int lit : c) {
        int v = value[static_cast<size_t>(std::abs(lit))];
        if (v < 0) continue;
        if ((lit > 0 && v == 1) || (lit < 0 && v == 0)) return true;
    }
    return false;
}

Cnf parse_dimacs(std::istream& in) {
    std::string line;
    int lineno = 0;
    int num_vars = -1;
    long num_clauses = -1;
    Cnf cnf;
    Clause current;
    bool open_clause = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ss(line);
        if (num_vars < 0) {
            std::string p, tag;
            ss >> p >> tag >> num_vars >> num_clauses;
            if (ss.fail() || p != "p" || tag != "cnf" || num_vars < 0 || num_clauses < 0)
                throw ParseError("expected header 'p cnf <vars> <clauses>'", lineno);
            continue;
        }
        int lit;
        while (ss >> lit) {
            if (lit == 0) {
                cnf.clauses.push_back(current);
                current.clear();
                open_clause = false;
            } else {
                if (std::abs(lit) > num_vars) throw ParseError("literal out of range", lineno);
                current.push_back(lit);
                open_clause = true;
            }
        }
        if (!ss.eof()) throw ParseError("non-integer token", lineno);
    }
    if (num_vars < 0) throw ParseError("missing 'p cnf' header");
    if (open_clause) throw ParseError("last clause not zero-terminated");
    if (static_cast<long>(cnf.clauses.size()) != num_clauses)
        throw ParseError("clause count does not match header");
    cnf.num_vars = num_vars;
    return cnf;
}

Cnf parse_dimacs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return parse_dimacs(in);
}

void write_dimacs(std::ostream& out, const Cnf& cnf,
                  const std::vector<std::pair<int, std::string>>& comment_before) {
    out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
    size_t next_comment = 0;
    for (size_t i = 0; i < cnf.clauses.size(); ++i) {
        while (next_comment < comment_before.size() &&
               comment_before[next_comment].first == static_cast<int>(i) + 1) {
            out << "c " << comment_before[next_comment].second << '\n';
            ++next_comment;
        }
        for (int lit : cnf.clauses[i]) out << lit << ' ';
        out << "0\n";
    }
}

}  // namespace hypersep
