#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypersep {

/// A clause: nonzero DIMACS-signed literals over variables 1..num_vars.
using Clause = std::vector<int>;

struct Cnf {
    int num_vars = 0;
    std::vector<Clause> clauses;  // clause index = position + 1

    bool operator==(const Cnf&) const = default;
};

/// Sorted-by-variable copy used for clause comparisons.
Clause normalized(const Clause& c);

/// True iff the partial assignment falsifies the clause: every literal's
/// variable is assigned and evaluates false. Values are 0/1, -1 = unassigned,
/// indexed by variable id.
bool clause_falsified(const Clause& c, const std::vector<int>& value);

bool clause_satisfied(const Clause& c, const std::vector<int>& value);

Cnf parse_dimacs(std::istream& in);
Cnf parse_dimacs_file(const std::string& path);

/// Writer; `comment_before`, when nonempty, maps a clause index (1-based) to a
/// comment line emitted right before that clause.
void write_dimacs(std::ostream& out, const Cnf& cnf,
                  const std::vector<std::pair<int, std::string>>& comment_before = {});

}  // namespace hypersep
