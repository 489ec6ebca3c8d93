#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hypersep {

/// Malformed input file or text format. Carries a line number when known.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// An enumeration exceeded its configured budget (brute force, oracle, generator).
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A refuter was handed a satisfiable instance; the witness proves it.
class SatisfiableError : public std::runtime_error {
public:
    SatisfiableError(const std::string& what, std::vector<int> witness)
        : std::runtime_error(what), witness_(std::move(witness)) {}
    const std::vector<int>& witness() const { return witness_; }

private:
    std::vector<int> witness_;  // value per variable, index 1..m (slot 0 unused)
};

}  // namespace hypersep
