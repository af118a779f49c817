#pragma once

#include <cstdint>
#include <cstdlib>
#include <iosfwd>
#include <string>
#include <vector>

namespace gradsat {

/// A literal in DIMACS convention: +v / -v for variable v >= 1.
using DimacsLit = std::int32_t;
using DimacsClause = std::vector<DimacsLit>;

/// Plain CNF formula in DIMACS numbering.
struct Cnf {
  std::int32_t num_vars = 0;
  std::vector<DimacsClause> clauses;
  /// Free-form "c ..." lines emitted before the header (without the "c ").
  std::vector<std::string> comments;
};

/// Reads "p cnf V C" followed by zero-terminated clauses. Comment lines
/// are kept. Clauses may span lines. Throws ParseError.
Cnf parse_dimacs(std::istream& in);

/// Comments first, then the header, then one clause per line.
void write_dimacs(std::ostream& out, const Cnf& cnf);

/// True when `model[v]` (index v, entry 0 unused) satisfies every clause.
bool satisfies(const std::vector<DimacsClause>& clauses, const std::vector<bool>& model);

}  // namespace gradsat
