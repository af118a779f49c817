#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "gradsat/dataset.hpp"
#include "gradsat/encoder.hpp"
#include "gradsat/precedence.hpp"
#include "gradsat/rational.hpp"
#include "gradsat/solver.hpp"

namespace gradsat {

enum class Closedness { NotChecked, Closed, NotClosed, Unknown };

struct MiningResult {
  /// Canonical, except in temporal mode where both orientations are
  /// distinct patterns.
  GradualPattern pattern;
  /// Exact longest-chain support (temporal chains in temporal mode). Without
  /// verification this is the k/n lower bound certified by the model.
  Rational support;
  Chain witness;
  Closedness closed = Closedness::NotChecked;
  /// The k transactions the model placed, position by position.
  Chain model_placement;
  bool verified = false;
};

struct MinerOptions {
  EncoderOptions encoder;
  sat::SolverOptions solver;
  bool closed = false;
  bool verify = true;
  std::size_t chain_limit = 100000;
};

struct MiningStats {
  std::size_t k = 0;
  std::size_t num_vars = 0;
  std::size_t num_clauses = 0;
  double encode_seconds = 0.0;
  double solve_seconds = 0.0;
  std::uint64_t models = 0;
  sat::SolverStats solver;
};

struct MiningReport {
  std::vector<MiningResult> results;
  sat::EnumerationStatus status = sat::EnumerationStatus::Complete;
  MiningStats stats;

  bool partial() const { return status != sat::EnumerationStatus::Complete; }
};

struct DecodedModel {
  GradualPattern pattern;
  Chain placement;
};

/// Pattern from the true item variables, placement from the true placement
/// variables. Throws InternalError when a position is empty or filled twice,
/// a transaction is placed twice, no item is selected, or (with `ds`) the
/// placement does not respect the decoded pattern.
DecodedModel decode_model(const sat::Model& model, const VarMap& vm, const NumericalDataset* ds = nullptr);

/// c1 excludes exactly the item projection of `pattern`: its item variables
/// negated, plus both item variables of every attribute it does not use, so
/// strict supersets stay reachable. With `include_complement`, c2 does the
/// same for complement(pattern).
std::vector<DimacsClause> blocking_clauses_for(const GradualPattern& pattern, const VarMap& vm,
                                               bool include_complement);

/// f(g(p)): the items respected along every maximal chain of p. Throws
/// ChainLimitExceeded past `chain_limit` chains.
std::vector<GradualItem> closure(const NumericalDataset& ds, const GradualPattern& p, std::size_t chain_limit);

/// Marks each result Closed iff closure(p) == p; Unknown when the chain
/// enumeration hits its cap.
void closed_filter(std::vector<MiningResult>& results, const NumericalDataset& ds, std::size_t chain_limit);

/// Encodes with chain length k, enumerates every model and returns each
/// frequent pattern once. Throws InfeasibleThreshold / InvalidArgument for
/// bad k or min_len.
MiningReport mine_k(const NumericalDataset& ds, std::size_t k, const MinerOptions& options = {});
MiningReport mine(const NumericalDataset& ds, const Threshold& threshold, const MinerOptions& options = {});

enum class ReportFormat { Json, Text };

/// Results sorted by descending support, then by pattern.
std::vector<MiningResult> sorted_for_report(std::vector<MiningResult> results);

/// JSON: array of {"items", "support": {"num", "den", "value"}, "witness",
/// "placement", "closed"}. Text: aligned table. Both use the
/// sorted_for_report order.
void report(std::ostream& out, const std::vector<MiningResult>& results, const NumericalDataset& ds,
            ReportFormat format);

}  // namespace gradsat
