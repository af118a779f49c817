#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "gradsat/cnf.hpp"
#include "gradsat/error.hpp"
#include "gradsat/solver.hpp"

namespace gradsat::cli {

namespace {

// A first data field that does not parse as a number means an id column.
bool looks_like_id_column(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int non_empty = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (++non_empty < 2) continue;
    std::string field = line.substr(0, line.find(','));
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    if (b == std::string::npos) return false;
    field = field.substr(b, e - b + 1);
    if (!field.empty() && field.front() == '+') field.erase(0, 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    return ec != std::errc() || ptr != field.data() + field.size();
  }
  return false;
}

const char* name_of(OrderEncoding e) { return e == OrderEncoding::Successor ? "successor" : "forbidden"; }
const char* name_of(SymmetryMode s) { return s == SymmetryMode::Blocking ? "blocking" : "static"; }
const char* on_off(bool b) { return b ? "on" : "off"; }

}  // namespace

std::string stats_header(const RunConfig& c, std::size_t k) {
  std::ostringstream os;
  os << "# k=" << k << " min_len=" << c.min_len << " encoding=" << name_of(c.encoding)
     << " symmetry=" << name_of(c.symmetry) << " temporal=" << on_off(c.temporal) << " closed=" << on_off(c.closed)
     << " simplify=" << on_off(c.simplify) << " verify=" << on_off(c.verify) << " seed=" << c.seed;
  return os.str();
}

std::string stats_line(std::size_t vars, std::size_t clauses, double encode_seconds) {
  std::ostringstream os;
  os << "vars=" << vars << " clauses=" << clauses << " time=" << std::fixed << std::setprecision(6)
     << encode_seconds;
  return os.str();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    std::ifstream file(config.input);
    if (!file) {
      err << "error: cannot read '" << config.input << "'\n";
      return kUsageError;
    }
    std::stringstream buffer;
    buffer << file.rdbuf();
    const std::string text = buffer.str();
    const bool has_ids =
        config.id_column == IdColumn::Yes || (config.id_column == IdColumn::Auto && looks_like_id_column(text));
    const NumericalDataset ds = parse_csv(text, has_ids);

    const Threshold threshold = parse_threshold(config.min_supp);
    const std::size_t k = threshold_to_k(threshold, ds.num_transactions());

    MinerOptions options;
    options.encoder.order = config.encoding;
    options.encoder.symmetry = config.symmetry;
    options.encoder.min_len = config.min_len;
    options.encoder.temporal = config.temporal;
    options.encoder.simplify = config.simplify;
    options.closed = config.closed;
    options.verify = config.verify;
    options.chain_limit = config.chain_limit;
    options.solver.max_models = config.max_models;
    options.solver.max_conflicts = config.max_conflicts;
    options.solver.seed = config.seed;

    if (config.encode_only || config.export_dimacs) {
      const auto t0 = std::chrono::steady_clock::now();
      const CnfInstance instance = build(ds, k, options.encoder);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (config.export_dimacs) {
        std::ofstream dimacs(*config.export_dimacs);
        if (!dimacs) {
          err << "error: cannot write '" << *config.export_dimacs << "'\n";
          return kUsageError;
        }
        write_dimacs(dimacs, instance);
      }
      if (config.encode_only) {
        out << stats_header(config, k) << '\n' << stats_line(instance.num_vars(), instance.num_clauses(), secs) << '\n';
        return kSuccess;
      }
    }

    const MiningReport result = mine_k(ds, k, options);
    err << stats_header(config, k) << '\n'
        << stats_line(result.stats.num_vars, result.stats.num_clauses, result.stats.encode_seconds) << '\n';
    report(out, result.results, ds, config.format);
    if (result.partial()) {
      err << "warning: resource cap reached, results are partial\n";
      return kResourceCap;
    }
    return kSuccess;
  } catch (const InfeasibleThreshold& e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

int enumerate_dimacs(const std::string& path, std::uint64_t max_models, std::ostream& out, std::ostream& err) {
  try {
    std::ifstream file(path);
    if (!file) {
      err << "error: cannot read '" << path << "'\n";
      return kUsageError;
    }
    const Cnf cnf = parse_dimacs(file);
    sat::SolverOptions opts;
    opts.max_models = max_models;
    sat::Solver solver(opts);
    solver.load(cnf);
    const auto result = solver.enumerate([&](const sat::Model& model) {
      for (std::size_t v = 1; v < model.size(); ++v) {
        if (v > 1) out << ' ';
        out << (model[v] ? "" : "-") << v;
      }
      out << '\n';
      return std::vector<DimacsClause>{sat::block_full_model(model)};
    });
    err << "models=" << result.models << '\n';
    return result.status == sat::EnumerationStatus::Complete ? kSuccess : kResourceCap;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mine frequent gradual patterns through SAT model enumeration", "gradsat"};
  app.set_version_flag("--version", "gradsat 1.0.0");

  RunConfig config;
  std::string id_column = "auto";
  std::string format = "json";
  bool no_verify = false;
  bool no_simplify = false;

  app.add_option("-i,--input", config.input, "CSV dataset");
  app.add_option("-s,--min-supp", config.min_supp, "minimum support: fraction (0.625, 5/8) or chain length (5)");
  app.add_option("--min-len", config.min_len, "minimum pattern length")->check(CLI::PositiveNumber);
  app.add_option("--encoding", config.encoding, "order constraint encoding")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, OrderEncoding>{{"successor", OrderEncoding::Successor},
                                               {"forbidden", OrderEncoding::Forbidden}},
          CLI::ignore_case));
  app.add_option("--symmetry", config.symmetry, "complement handling")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, SymmetryMode>{{"blocking", SymmetryMode::Blocking}, {"static", SymmetryMode::Static}},
          CLI::ignore_case));
  app.add_flag("--closed", config.closed, "flag closed patterns");
  app.add_flag("--temporal", config.temporal, "chains must follow row order");
  app.add_flag("--no-simplify", no_simplify, "keep full order clauses for unreachable positions");
  app.add_option("--id-column", id_column, "first column holds transaction ids")
      ->check(CLI::IsMember({"auto", "yes", "no"}));
  app.add_option("--export-dimacs", config.export_dimacs, "write the CNF instance here");
  app.add_flag("--encode-only", config.encode_only, "print instance statistics and stop");
  app.add_flag("--no-verify", no_verify, "skip the longest-chain oracle re-check");
  app.add_option("--max-models", config.max_models, "stop after this many patterns (0 = unlimited)");
  app.add_option("--max-conflicts", config.max_conflicts, "solver conflict budget (0 = unlimited)");
  app.add_option("--chain-limit", config.chain_limit, "maximal-chain cap for --closed")->check(CLI::PositiveNumber);
  app.add_option("--seed", config.seed, "solver seed");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));

  auto* enumerate = app.add_subcommand("enumerate", "enumerate all models of a DIMACS CNF file");
  std::string cnf_path;
  std::uint64_t enum_max_models = 0;
  enumerate->add_option("cnf", cnf_path, "DIMACS file")->required();
  enumerate->add_option("--max-models", enum_max_models, "stop after this many models (0 = unlimited)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
  }

  if (enumerate->parsed()) return enumerate_dimacs(cnf_path, enum_max_models, out, err);

  if (config.input.empty() || config.min_supp.empty()) {
    err << "error: --input and --min-supp are required\n" << app.help();
    return kUsageError;
  }
  config.verify = !no_verify;
  config.simplify = !no_simplify;
  config.format = format == "text" ? ReportFormat::Text : ReportFormat::Json;
  config.id_column = id_column == "yes" ? IdColumn::Yes : id_column == "no" ? IdColumn::No : IdColumn::Auto;
  if (config.temporal && config.symmetry == SymmetryMode::Static) {
    err << "error: --temporal keeps both orientations of a pattern; it cannot be combined with --symmetry static\n";
    return kUsageError;
  }
  return run(config, out, err);
}

}  // namespace gradsat::cli
