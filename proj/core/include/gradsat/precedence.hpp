#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gradsat/dataset.hpp"
#include "gradsat/rational.hpp"

namespace gradsat {

/// The order a pattern induces on transactions: edge (i, j), i != j, holds
/// iff every item of the pattern varies in its direction (non-strictly)
/// from transaction i to transaction j. The relation is a preorder; ties on
/// every pattern attribute give edges both ways.
class PrecedenceRelation {
 public:
  PrecedenceRelation(GradualPattern pattern, std::size_t n);

  const GradualPattern& pattern() const { return pattern_; }
  std::size_t size() const { return n_; }

  bool has_edge(std::size_t from, std::size_t to) const { return edges_[from * n_ + to] != 0; }
  void set_edge(std::size_t from, std::size_t to, bool on = true) {
    edges_[from * n_ + to] = on ? 1 : 0;
  }

 private:
  GradualPattern pattern_;
  std::size_t n_;
  std::vector<std::uint8_t> edges_;
};

struct ChainResult {
  std::size_t length = 0;
  Rational support;
  /// Transaction indices, consecutive pairs related by the pattern.
  std::vector<std::size_t> witness;
};

using Chain = std::vector<std::size_t>;

PrecedenceRelation build_relation(const NumericalDataset& ds, const GradualPattern& p);

/// Longest chain of distinct transactions. Mutually related transactions
/// are collapsed into strongly connected components; the longest path in
/// the condensation, weighted by component size, is the answer. Members of
/// one component appear in ascending index order inside the witness.
ChainResult longest_chain(const PrecedenceRelation& rel);

/// Longest chain whose transaction indices strictly increase (row order
/// read as time).
ChainResult longest_temporal_chain(const PrecedenceRelation& rel);

/// Exact longest-chain support of `p` on `ds`.
Rational support(const NumericalDataset& ds, const GradualPattern& p);

/// Every chain that cannot be extended at either end nor by inserting a
/// transaction between two neighbours, i.e. every source-to-sink path of
/// the covering relation. Tied transactions always travel together in
/// ascending index order, so each group of ties contributes one ordering.
/// Throws ChainLimitExceeded when more than `limit` chains exist.
std::vector<Chain> maximal_chains(const PrecedenceRelation& rel, std::size_t limit = 100000);

/// The gradual items respected between every pair of consecutive
/// transactions on every chain in `chains`. An attribute that is constant
/// along all chains contributes both of its items.
std::vector<GradualItem> items_respected_by(const NumericalDataset& ds, const std::vector<Chain>& chains);

/// True when `chain` holds distinct indices and each consecutive pair is an
/// edge of `rel`.
bool respects(const PrecedenceRelation& rel, const Chain& chain);

}  // namespace gradsat
