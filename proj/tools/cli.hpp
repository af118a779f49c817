#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gradsat/encoder.hpp"
#include "gradsat/miner.hpp"

namespace gradsat::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kInfeasible = 2,
  kResourceCap = 3,
};

enum class IdColumn { Auto, Yes, No };

struct RunConfig {
  std::string input;
  std::string min_supp;
  std::size_t min_len = 2;
  OrderEncoding encoding = OrderEncoding::Successor;
  SymmetryMode symmetry = SymmetryMode::Blocking;
  bool closed = false;
  bool temporal = false;
  bool simplify = true;
  IdColumn id_column = IdColumn::Auto;
  std::optional<std::string> export_dimacs;
  bool encode_only = false;
  bool verify = true;
  std::uint64_t max_models = 0;
  std::uint64_t max_conflicts = 0;
  std::size_t chain_limit = 100000;
  std::uint64_t seed = 0;
  ReportFormat format = ReportFormat::Json;
};

/// Stats header echoing the effective options, e.g.
/// "# k=5 min_len=2 encoding=successor symmetry=blocking ...".
std::string stats_header(const RunConfig& config, std::size_t k);
/// "vars=V clauses=C time=T" with T the encoding wall time in seconds.
std::string stats_line(std::size_t vars, std::size_t clauses, double encode_seconds);

/// Mines per `config`, writing the report to `out` and diagnostics and
/// statistics to `err`. Returns the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Reads DIMACS from `path` and prints every model, one per line, as
/// space-separated signed integers.
int enumerate_dimacs(const std::string& path, std::uint64_t max_models, std::ostream& out, std::ostream& err);

/// Full command line entry point (argv[0] included).
int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gradsat::cli
