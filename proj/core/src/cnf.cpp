#include "gradsat/cnf.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "gradsat/error.hpp"

namespace gradsat {

Cnf parse_dimacs(std::istream& in) {
  Cnf cnf;
  bool have_header = false;
  std::int64_t declared_clauses = 0;
  DimacsClause current;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == 'c') {
      std::string text = line.substr(first + 1);
      if (!text.empty() && text.front() == ' ') text.erase(0, 1);
      while (!text.empty() && text.back() == '\r') text.pop_back();
      cnf.comments.push_back(std::move(text));
      continue;
    }
    if (line[first] == '%') break;  // SATLIB trailer
    std::istringstream tokens(line);
    if (line[first] == 'p') {
      if (have_header) throw ParseError(line_no, "duplicate problem line");
      std::string p, fmt;
      std::int64_t vars = -1;
      tokens >> p >> fmt >> vars >> declared_clauses;
      if (!tokens || fmt != "cnf" || vars < 0 || declared_clauses < 0 ||
          vars > std::numeric_limits<std::int32_t>::max())
        throw ParseError(line_no, "malformed problem line");
      cnf.num_vars = static_cast<std::int32_t>(vars);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "clause before problem line");
    std::int64_t lit = 0;
    while (tokens >> lit) {
      if (lit == 0) {
        cnf.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (std::llabs(lit) > cnf.num_vars)
        throw ParseError(line_no, "literal " + std::to_string(lit) + " exceeds declared variable count");
      current.push_back(static_cast<DimacsLit>(lit));
    }
    if (!tokens.eof()) throw ParseError(line_no, "non-integer token");
  }
  if (!have_header) throw ParseError(line_no, "missing problem line");
  if (!current.empty()) cnf.clauses.push_back(std::move(current));
  if (static_cast<std::int64_t>(cnf.clauses.size()) != declared_clauses)
    throw ParseError(line_no, "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                                  std::to_string(cnf.clauses.size()));
  return cnf;
}

void write_dimacs(std::ostream& out, const Cnf& cnf) {
  for (const auto& c : cnf.comments) out << "c " << c << '\n';
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& clause : cnf.clauses) {
    for (DimacsLit l : clause) out << l << ' ';
    out << "0\n";
  }
}

bool satisfies(const std::vector<DimacsClause>& clauses, const std::vector<bool>& model) {
  for (const auto& clause : clauses) {
    bool sat = false;
    for (DimacsLit l : clause) {
      const auto v = static_cast<std::size_t>(std::abs(l));
      if (v < model.size() && model[v] == (l > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

}  // namespace gradsat
