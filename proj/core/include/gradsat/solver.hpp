#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "gradsat/cnf.hpp"

namespace gradsat::sat {

using Var = std::int32_t;  // 0-based

/// Literal packed as 2 * var + sign, sign 1 meaning negated.
struct Lit {
  std::uint32_t code = 0;

  static constexpr Lit make(Var v, bool negated = false) {
    return Lit{static_cast<std::uint32_t>(v) * 2u + (negated ? 1u : 0u)};
  }
  static Lit from_dimacs(DimacsLit l) { return make(std::abs(l) - 1, l < 0); }

  constexpr Var var() const { return static_cast<Var>(code >> 1); }
  constexpr bool negated() const { return (code & 1u) != 0; }
  constexpr Lit operator~() const { return Lit{code ^ 1u}; }
  DimacsLit to_dimacs() const { return negated() ? -(var() + 1) : var() + 1; }

  friend constexpr auto operator<=>(Lit, Lit) = default;
};

enum class LBool : std::uint8_t { False = 0, True = 1, Undef = 2 };

using ClauseRef = std::uint32_t;
inline constexpr ClauseRef kNoReason = static_cast<ClauseRef>(-1);

struct SolverOptions {
  double var_decay = 0.95;
  double clause_decay = 0.999;
  bool restarts = true;
  /// Geometric schedule: the i-th restart happens after base * factor^i
  /// conflicts.
  double restart_base = 100.0;
  double restart_factor = 1.5;
  bool reduce = true;
  /// Learnt-clause budget before the first reduction, as a fraction of the
  /// original clause count (at least 1000).
  double learnt_fraction = 1.0 / 3.0;
  double learnt_growth = 1.1;
  /// Probability of a random instead of an activity-based decision.
  double random_decision_freq = 0.0;
  std::uint64_t seed = 0;
  /// 0 means unlimited.
  std::uint64_t max_conflicts = 0;
  std::uint64_t max_models = 0;
};

enum class SolveStatus { Sat, Unsat, Unknown };

enum class EnumerationStatus {
  Complete,       // final UNSAT reached
  ConflictLimit,  // max_conflicts hit; more models may exist
  ModelLimit,     // max_models reported and at least one more model exists
};

struct EnumerationResult {
  std::uint64_t models = 0;
  EnumerationStatus status = EnumerationStatus::Complete;
};

struct Analysis {
  /// learnt[0] is the asserting (UIP) literal; learnt[1], when present,
  /// carries the backjump level.
  std::vector<Lit> learnt;
  int backjump_level = 0;
};

struct SolverStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t restarts = 0;
  std::uint64_t reductions = 0;
  std::uint64_t learnt_literals = 0;
};

/// Assignment of variables 1..num_vars; index 0 unused (DIMACS layout).
using Model = std::vector<bool>;

/// Receives each model and returns the clauses to add before searching
/// again (in DIMACS numbering). Returning no clause ends enumeration only
/// if the model is not otherwise excluded, so callers normally block it.
using ModelCallback = std::function<std::vector<DimacsClause>(const Model&)>;

/// CDCL solver with two watched literals, First-UIP learning, VSIDS-style
/// activities, phase saving, geometric restarts, learnt clause reduction
/// and AllSAT enumeration through blocking clauses.
class Solver {
 public:
  explicit Solver(SolverOptions options = {});

  Var new_var();
  int num_vars() const { return static_cast<int>(assigns_.size()); }

  /// Adds a permanent clause at decision level 0 (the solver backjumps
  /// there first). Returns false once the formula is known UNSAT.
  bool add_clause(std::span<const Lit> lits);
  bool add_clause(std::initializer_list<Lit> lits) { return add_clause(std::span<const Lit>(lits.begin(), lits.size())); }
  bool add_dimacs_clause(std::span<const DimacsLit> lits);
  /// Creates the variables and adds every clause of `cnf`.
  bool load(const Cnf& cnf);

  SolveStatus solve();
  /// Model of the last Sat answer, DIMACS layout.
  const Model& model() const { return model_; }

  /// Runs solve() repeatedly; after each model, adds the callback's
  /// clauses, backjumps to level 0 and continues until UNSAT or a cap.
  EnumerationResult enumerate(const ModelCallback& on_model);

  bool okay() const { return ok_; }
  const SolverStats& stats() const { return stats_; }
  const SolverOptions& options() const { return options_; }

  // Low-level access, used by tests and by the search loop itself.

  LBool value(Var v) const { return assigns_[static_cast<std::size_t>(v)]; }
  LBool value(Lit l) const;
  int level(Var v) const { return vars_[static_cast<std::size_t>(v)].level; }
  ClauseRef reason(Var v) const { return vars_[static_cast<std::size_t>(v)].reason; }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  std::span<const Lit> trail() const { return trail_; }
  std::span<const Lit> clause_literals(ClauseRef cr) const { return clauses_[cr].lits; }

  /// Opens a new decision level and assigns `decision` there.
  void decide(Lit decision);
  /// Unit propagation to fixpoint; returns the first conflicting clause.
  std::optional<ClauseRef> propagate();
  /// First-UIP analysis of a conflict at decision level > 0.
  Analysis analyze(ClauseRef conflict);
  void cancel_until(int level);
  /// Highest-activity unassigned variable with its phase, or nullopt when
  /// every variable is assigned.
  std::optional<Lit> select_decision();
  /// Drops the lower-activity half of the learnt clauses. Clauses that are
  /// the reason of a trail literal are kept.
  void reduce_learnts();

  /// Learnt clauses currently in the database (DIMACS numbering).
  std::vector<DimacsClause> learnt_clauses() const;
  std::size_t num_original_clauses() const;
  std::size_t num_learnt_clauses() const;
  double activity(Var v) const { return vars_[static_cast<std::size_t>(v)].activity; }

 private:
  struct Clause {
    std::vector<Lit> lits;
    double activity = 0.0;
    bool learnt = false;
    bool deleted = false;
  };
  struct Watcher {
    ClauseRef cref;
    Lit blocker;
  };
  struct VarData {
    ClauseRef reason = kNoReason;
    int level = 0;
    double activity = 0.0;
    bool phase = false;  // saved polarity, true = positive
  };

  // Binary max-heap on activity; ties go to the lower variable index.
  class VarOrder {
   public:
    explicit VarOrder(const std::vector<VarData>& vars) : vars_(vars) {}
    bool empty() const { return heap_.empty(); }
    bool contains(Var v) const {
      return static_cast<std::size_t>(v) < index_.size() && index_[static_cast<std::size_t>(v)] >= 0;
    }
    void insert(Var v);
    void increased(Var v) { up(index_[static_cast<std::size_t>(v)]); }
    Var pop();

   private:
    bool before(Var a, Var b) const;
    void up(int i);
    void down(int i);
    const std::vector<VarData>& vars_;
    std::vector<Var> heap_;
    std::vector<int> index_;
  };

  void unchecked_enqueue(Lit l, ClauseRef reason);
  ClauseRef attach(std::vector<Lit> lits, bool learnt);
  bool locked(ClauseRef cr) const;
  void bump_var(Var v);
  void bump_clause(Clause& c);
  bool literal_redundant(Lit l, const std::vector<std::uint8_t>& seen) const;
  SolveStatus search(std::uint64_t conflict_budget);
  bool conflict_cap_reached() const;

  SolverOptions options_;
  std::vector<Clause> clauses_;
  std::vector<ClauseRef> learnts_;
  std::vector<std::vector<Watcher>> watches_;  // indexed by literal code
  std::vector<LBool> assigns_;
  std::vector<VarData> vars_;
  VarOrder order_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  double var_inc_ = 1.0;
  double clause_inc_ = 1.0;
  double max_learnts_ = 0.0;
  bool ok_ = true;
  bool first_decision_after_restart_ = true;
  Model model_;
  SolverStats stats_;
  std::mt19937_64 rng_;
};

/// Clause excluding exactly `model` over variables 1..num_vars.
DimacsClause block_full_model(const Model& model);

}  // namespace gradsat::sat
