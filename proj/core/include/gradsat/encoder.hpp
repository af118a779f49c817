#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gradsat/cnf.hpp"
#include "gradsat/dataset.hpp"
#include "gradsat/rational.hpp"

namespace gradsat {

/// Minimum support either as a fraction of |T| or as a chain length.
using Threshold = std::variant<Rational, std::size_t>;

/// "0.625", "5/8" and "1.0" are fractions; a bare integer such as "5" is an
/// absolute chain length. Throws InvalidArgument on malformed text or a
/// fraction outside (0, 1].
Threshold parse_threshold(std::string_view text);

/// Chain length k a pattern must reach: ceil(fraction * n), or the absolute
/// value itself. Throws InvalidArgument when k < 2 and InfeasibleThreshold
/// when k > n.
std::size_t threshold_to_k(const Threshold& threshold, std::size_t n);

enum class OrderEncoding { Successor, Forbidden };
enum class SymmetryMode { Blocking, Static };

struct EncoderOptions {
  OrderEncoding order = OrderEncoding::Successor;
  SymmetryMode symmetry = SymmetryMode::Blocking;
  std::size_t min_len = 2;
  bool temporal = false;
  /// Replace order clauses by (-x v -y) where position j is unreachable for
  /// the transaction under that item.
  bool simplify = true;
};

struct VarMeaning {
  enum class Kind { Item, Placement, Aux };
  Kind kind = Kind::Aux;
  GradualItem item;
  std::size_t transaction = 0;  // 0-based
  std::size_t position = 0;     // 1-based
};

/// Variable numbering: item variables 1..2m (attribute a gives 2a+1 for Inc
/// and 2a+2 for Dec), then placement variables position-major
/// (2m + (j-1)n + i + 1 for transaction i at position j), then auxiliaries
/// in allocation order.
class VarMap {
 public:
  VarMap(std::size_t num_attributes, std::size_t num_transactions, std::size_t k);

  std::size_t num_attributes() const { return m_; }
  std::size_t num_transactions() const { return n_; }
  std::size_t k() const { return k_; }

  DimacsLit item(GradualItem it) const {
    return static_cast<DimacsLit>(2 * it.attribute + (it.variation == Variation::Inc ? 1 : 2));
  }
  DimacsLit item(std::size_t attribute, Variation v) const { return item(GradualItem{attribute, v}); }
  DimacsLit placement(std::size_t transaction, std::size_t position) const {
    return static_cast<DimacsLit>(2 * m_ + (position - 1) * n_ + transaction + 1);
  }

  DimacsLit new_aux();
  std::size_t aux_count() const { return aux_; }
  std::size_t num_vars() const { return 2 * m_ + n_ * k_ + aux_; }

  /// Throws InvalidArgument for 0 or a variable beyond num_vars().
  VarMeaning describe(DimacsLit var) const;

 private:
  std::size_t m_, n_, k_;
  std::size_t aux_ = 0;
};

/// Terms of a cardinality constraint are given through their negation: term
/// i holds iff every literal of negated_term(i) is false.
using NegatedTerm = std::function<DimacsClause(std::size_t)>;

/// Sequential counter for "at most `bound` of `count` terms", auxiliaries
/// s(i, j) for i < count, j <= bound. With bound 1 this is exactly the
/// (n-1)-auxiliary, (3n-4)-clause at-most-one encoding.
std::vector<DimacsClause> at_most_sequential(std::size_t count, std::size_t bound, const NegatedTerm& negated_term,
                                             VarMap& vm);
std::vector<DimacsClause> at_most_one(std::span<const DimacsLit> lits, VarMap& vm);

/// (-x(a+) v -x(a-)) for every attribute.
std::vector<DimacsClause> encode_attribute_exclusion(const VarMap& vm);
/// Exactly one transaction per position: one at-least-one clause plus a
/// sequential at-most-one per position.
std::vector<DimacsClause> encode_position_filled(VarMap& vm);
/// Each transaction on at most one position.
std::vector<DimacsClause> encode_transaction_once(VarMap& vm);
/// Links consecutive positions through the order of each selected item.
std::vector<DimacsClause> encode_order(const NumericalDataset& ds, const VarMap& vm, OrderEncoding variant,
                                       bool simplify = true);
/// At least `min_len` attributes selected. Throws InvalidArgument for 0 and
/// InfeasibleThreshold when min_len exceeds the attribute count.
std::vector<DimacsClause> encode_min_length(VarMap& vm, std::size_t min_len);
/// The lowest selected attribute must vary Inc: x(a-) needs some lower
/// attribute selected.
std::vector<DimacsClause> encode_static_symmetry_break(const VarMap& vm);
/// Row indices strictly increase along the positions.
std::vector<DimacsClause> encode_temporal(const VarMap& vm);

/// Clause counts per constraint group, in emission order.
struct ClauseGroups {
  std::size_t exclusion = 0;
  std::size_t position = 0;
  std::size_t once = 0;
  std::size_t order = 0;
  std::size_t min_length = 0;
  std::size_t symmetry = 0;
  std::size_t temporal = 0;
};

struct CnfInstance {
  Cnf cnf;
  VarMap var_map;
  std::size_t k;
  EncoderOptions options;
  ClauseGroups groups;

  std::size_t num_vars() const { return static_cast<std::size_t>(cnf.num_vars); }
  std::size_t num_clauses() const { return cnf.clauses.size(); }
};

/// Conjunction of every enabled constraint group over the placement of k
/// transactions. Requires 2 <= k <= n.
CnfInstance build(const NumericalDataset& ds, std::size_t k, const EncoderOptions& options = {});

/// DIMACS with one comment per item and placement variable, e.g.
/// "c x 1 = attr 0 INC" and "c y 7 = txn 2 pos 1".
void write_dimacs(std::ostream& out, const CnfInstance& instance);

}  // namespace gradsat
