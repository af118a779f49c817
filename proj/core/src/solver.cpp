#include "gradsat/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gradsat/error.hpp"

namespace gradsat::sat {

namespace {
constexpr double kActivityRescale = 1e100;
}

//===----------------------------------------------------------------------===//
// Variable order
//===----------------------------------------------------------------------===//

bool Solver::VarOrder::before(Var a, Var b) const {
  const double aa = vars_[static_cast<std::size_t>(a)].activity;
  const double ab = vars_[static_cast<std::size_t>(b)].activity;
  return aa > ab || (aa == ab && a < b);
}

void Solver::VarOrder::up(int i) {
  const Var v = heap_[static_cast<std::size_t>(i)];
  while (i > 0) {
    const int parent = (i - 1) / 2;
    const Var pv = heap_[static_cast<std::size_t>(parent)];
    if (!before(v, pv)) break;
    heap_[static_cast<std::size_t>(i)] = pv;
    index_[static_cast<std::size_t>(pv)] = i;
    i = parent;
  }
  heap_[static_cast<std::size_t>(i)] = v;
  index_[static_cast<std::size_t>(v)] = i;
}

void Solver::VarOrder::down(int i) {
  const Var v = heap_[static_cast<std::size_t>(i)];
  const int size = static_cast<int>(heap_.size());
  while (true) {
    int child = 2 * i + 1;
    if (child >= size) break;
    if (child + 1 < size &&
        before(heap_[static_cast<std::size_t>(child + 1)], heap_[static_cast<std::size_t>(child)]))
      ++child;
    const Var cv = heap_[static_cast<std::size_t>(child)];
    if (!before(cv, v)) break;
    heap_[static_cast<std::size_t>(i)] = cv;
    index_[static_cast<std::size_t>(cv)] = i;
    i = child;
  }
  heap_[static_cast<std::size_t>(i)] = v;
  index_[static_cast<std::size_t>(v)] = i;
}

void Solver::VarOrder::insert(Var v) {
  if (static_cast<std::size_t>(v) >= index_.size()) index_.resize(static_cast<std::size_t>(v) + 1, -1);
  if (contains(v)) return;
  heap_.push_back(v);
  index_[static_cast<std::size_t>(v)] = static_cast<int>(heap_.size()) - 1;
  up(static_cast<int>(heap_.size()) - 1);
}

Var Solver::VarOrder::pop() {
  const Var top = heap_.front();
  const Var last = heap_.back();
  heap_.pop_back();
  index_[static_cast<std::size_t>(top)] = -1;
  if (!heap_.empty()) {
    heap_.front() = last;
    index_[static_cast<std::size_t>(last)] = 0;
    down(0);
  }
  return top;
}

//===----------------------------------------------------------------------===//
// Construction and clause management
//===----------------------------------------------------------------------===//

Solver::Solver(SolverOptions options) : options_(options), order_(vars_), rng_(options.seed) {
  model_.assign(1, false);
}

Var Solver::new_var() {
  const Var v = static_cast<Var>(assigns_.size());
  assigns_.push_back(LBool::Undef);
  vars_.push_back({});
  watches_.resize(watches_.size() + 2);
  order_.insert(v);
  return v;
}

LBool Solver::value(Lit l) const {
  const LBool v = assigns_[static_cast<std::size_t>(l.var())];
  if (v == LBool::Undef) return v;
  return (v == LBool::True) != l.negated() ? LBool::True : LBool::False;
}

ClauseRef Solver::attach(std::vector<Lit> lits, bool learnt) {
  const auto cr = static_cast<ClauseRef>(clauses_.size());
  watches_[(~lits[0]).code].push_back({cr, lits[1]});
  watches_[(~lits[1]).code].push_back({cr, lits[0]});
  clauses_.push_back({std::move(lits), 0.0, learnt, false});
  return cr;
}

bool Solver::add_clause(std::span<const Lit> input) {
  if (!ok_) return false;
  cancel_until(0);
  std::vector<Lit> lits(input.begin(), input.end());
  for (Lit l : lits)
    if (l.var() < 0 || l.var() >= num_vars()) throw InvalidArgument("clause references unknown variable");
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::size_t kept = 0;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    const Lit l = lits[i];
    if (i + 1 < lits.size() && lits[i + 1] == ~l) return true;  // tautology
    const LBool val = value(l);
    if (val == LBool::True) return true;
    if (val == LBool::False) continue;
    lits[kept++] = l;
  }
  lits.resize(kept);
  if (lits.empty()) return ok_ = false;
  if (lits.size() == 1) {
    unchecked_enqueue(lits[0], kNoReason);
    if (propagate()) ok_ = false;
    return ok_;
  }
  attach(std::move(lits), false);
  return true;
}

bool Solver::add_dimacs_clause(std::span<const DimacsLit> lits) {
  std::vector<Lit> converted;
  converted.reserve(lits.size());
  for (DimacsLit l : lits) {
    if (l == 0) throw InvalidArgument("literal 0 inside clause");
    converted.push_back(Lit::from_dimacs(l));
  }
  return add_clause(converted);
}

bool Solver::load(const Cnf& cnf) {
  while (num_vars() < cnf.num_vars) new_var();
  for (const auto& clause : cnf.clauses)
    if (!add_dimacs_clause(clause)) return false;
  return ok_;
}

std::size_t Solver::num_original_clauses() const {
  return static_cast<std::size_t>(std::count_if(clauses_.begin(), clauses_.end(),
                                                [](const Clause& c) { return !c.learnt && !c.deleted; }));
}

std::size_t Solver::num_learnt_clauses() const { return learnts_.size(); }

std::vector<DimacsClause> Solver::learnt_clauses() const {
  std::vector<DimacsClause> out;
  for (ClauseRef cr : learnts_) {
    DimacsClause c;
    for (Lit l : clauses_[cr].lits) c.push_back(l.to_dimacs());
    out.push_back(std::move(c));
  }
  return out;
}

//===----------------------------------------------------------------------===//
// Propagation
//===----------------------------------------------------------------------===//

void Solver::unchecked_enqueue(Lit l, ClauseRef reason) {
  const auto v = static_cast<std::size_t>(l.var());
  assigns_[v] = l.negated() ? LBool::False : LBool::True;
  vars_[v].reason = reason;
  vars_[v].level = decision_level();
  trail_.push_back(l);
}

void Solver::decide(Lit decision) {
  trail_lim_.push_back(static_cast<int>(trail_.size()));
  ++stats_.decisions;
  unchecked_enqueue(decision, kNoReason);
}

std::optional<ClauseRef> Solver::propagate() {
  std::optional<ClauseRef> conflict;
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];
    const Lit false_lit = ~p;
    auto& ws = watches_[p.code];
    ++stats_.propagations;
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      const Watcher w = ws[i];
      Clause& c = clauses_[w.cref];
      if (c.deleted) {
        ++i;
        continue;
      }
      if (value(w.blocker) == LBool::True) {
        ws[j++] = ws[i++];
        continue;
      }
      if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
      ++i;
      const Lit first = c.lits[0];
      const Watcher nw{w.cref, first};
      if (first != w.blocker && value(first) == LBool::True) {
        ws[j++] = nw;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.lits.size(); ++k) {
        if (value(c.lits[k]) != LBool::False) {
          std::swap(c.lits[1], c.lits[k]);
          watches_[(~c.lits[1]).code].push_back(nw);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = nw;
      if (value(first) == LBool::False) {
        conflict = w.cref;
        qhead_ = trail_.size();
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        unchecked_enqueue(first, w.cref);
      }
    }
    ws.resize(j);
    if (conflict) break;
  }
  return conflict;
}

//===----------------------------------------------------------------------===//
// Conflict analysis
//===----------------------------------------------------------------------===//

void Solver::bump_var(Var v) {
  auto& data = vars_[static_cast<std::size_t>(v)];
  data.activity += var_inc_;
  if (data.activity > kActivityRescale) {
    for (auto& d : vars_) d.activity /= kActivityRescale;
    var_inc_ /= kActivityRescale;
  }
  if (order_.contains(v)) order_.increased(v);
}

void Solver::bump_clause(Clause& c) {
  c.activity += clause_inc_;
  if (c.activity > kActivityRescale) {
    for (ClauseRef cr : learnts_) clauses_[cr].activity /= kActivityRescale;
    clause_inc_ /= kActivityRescale;
  }
}

// A literal of the learnt clause is redundant when every other literal of
// its reason is already in the clause (or fixed at level 0).
bool Solver::literal_redundant(Lit l, const std::vector<std::uint8_t>& seen) const {
  const ClauseRef r = reason(l.var());
  if (r == kNoReason) return false;
  const auto& lits = clauses_[r].lits;
  for (std::size_t k = 1; k < lits.size(); ++k) {
    const Var v = lits[k].var();
    if (!seen[static_cast<std::size_t>(v)] && level(v) > 0) return false;
  }
  return true;
}

Analysis Solver::analyze(ClauseRef conflict) {
  if (decision_level() == 0) throw InternalError("conflict analysis at decision level 0");
  std::vector<std::uint8_t> seen(assigns_.size(), 0);
  Analysis out;
  out.learnt.push_back(Lit{});  // asserting literal goes here
  int path_count = 0;
  std::optional<Lit> p;
  std::size_t index = trail_.size();
  ClauseRef cr = conflict;

  do {
    Clause& c = clauses_[cr];
    if (c.learnt) bump_clause(c);
    for (std::size_t k = p ? 1 : 0; k < c.lits.size(); ++k) {
      const Lit q = c.lits[k];
      const auto v = static_cast<std::size_t>(q.var());
      if (seen[v] || level(q.var()) == 0) continue;
      bump_var(q.var());
      seen[v] = 1;
      if (level(q.var()) >= decision_level())
        ++path_count;
      else
        out.learnt.push_back(q);
    }
    do {
      --index;
    } while (!seen[static_cast<std::size_t>(trail_[index].var())]);
    p = trail_[index];
    cr = reason(p->var());
    seen[static_cast<std::size_t>(p->var())] = 0;
    --path_count;
  } while (path_count > 0);
  out.learnt[0] = ~*p;

  std::size_t kept = 1;
  for (std::size_t k = 1; k < out.learnt.size(); ++k)
    if (!literal_redundant(out.learnt[k], seen)) out.learnt[kept++] = out.learnt[k];
  out.learnt.resize(kept);
  stats_.learnt_literals += kept;

  if (out.learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t k = 2; k < out.learnt.size(); ++k)
      if (level(out.learnt[k].var()) > level(out.learnt[max_i].var())) max_i = k;
    std::swap(out.learnt[1], out.learnt[max_i]);
    out.backjump_level = level(out.learnt[1].var());
  }
  return out;
}

void Solver::cancel_until(int target) {
  if (decision_level() <= target) return;
  const auto start = static_cast<std::size_t>(trail_lim_[static_cast<std::size_t>(target)]);
  for (std::size_t c = trail_.size(); c-- > start;) {
    const Lit l = trail_[c];
    const auto v = static_cast<std::size_t>(l.var());
    assigns_[v] = LBool::Undef;
    vars_[v].reason = kNoReason;
    vars_[v].phase = !l.negated();
    order_.insert(l.var());
  }
  trail_.resize(start);
  trail_lim_.resize(static_cast<std::size_t>(target));
  qhead_ = start;
}

//===----------------------------------------------------------------------===//
// Decisions, restarts, reduction
//===----------------------------------------------------------------------===//

std::optional<Lit> Solver::select_decision() {
  std::optional<Var> next;
  if (options_.random_decision_freq > 0.0 && num_vars() > 0) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng_) < options_.random_decision_freq) {
      std::uniform_int_distribution<Var> pick(0, num_vars() - 1);
      const Var v = pick(rng_);
      if (value(v) == LBool::Undef) next = v;
    }
  }
  while (!next || value(*next) != LBool::Undef) {
    if (order_.empty()) return std::nullopt;
    next = order_.pop();
  }
  bool positive = vars_[static_cast<std::size_t>(*next)].phase;
  if (first_decision_after_restart_) {
    positive = true;
    first_decision_after_restart_ = false;
  }
  return Lit::make(*next, !positive);
}

bool Solver::locked(ClauseRef cr) const {
  const Clause& c = clauses_[cr];
  const Lit first = c.lits[0];
  return value(first) == LBool::True && reason(first.var()) == cr;
}

void Solver::reduce_learnts() {
  ++stats_.reductions;
  std::vector<ClauseRef> sorted = learnts_;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [&](ClauseRef a, ClauseRef b) { return clauses_[a].activity < clauses_[b].activity; });
  const std::size_t drop = sorted.size() / 2;
  for (std::size_t i = 0; i < drop; ++i) {
    Clause& c = clauses_[sorted[i]];
    if (locked(sorted[i])) continue;
    c.deleted = true;
    c.lits.clear();
    c.lits.shrink_to_fit();
  }
  std::erase_if(learnts_, [&](ClauseRef cr) { return clauses_[cr].deleted; });
}

bool Solver::conflict_cap_reached() const {
  return options_.max_conflicts != 0 && stats_.conflicts >= options_.max_conflicts;
}

SolveStatus Solver::search(std::uint64_t conflict_budget) {
  std::uint64_t conflicts_here = 0;
  first_decision_after_restart_ = true;
  while (true) {
    if (const auto conflict = propagate()) {
      ++stats_.conflicts;
      ++conflicts_here;
      if (decision_level() == 0) {
        ok_ = false;
        return SolveStatus::Unsat;
      }
      Analysis a = analyze(*conflict);
      cancel_until(a.backjump_level);
      if (a.learnt.size() == 1) {
        unchecked_enqueue(a.learnt[0], kNoReason);
      } else {
        const Lit asserting = a.learnt[0];
        const ClauseRef cr = attach(std::move(a.learnt), true);
        learnts_.push_back(cr);
        bump_clause(clauses_[cr]);
        unchecked_enqueue(asserting, cr);
      }
      var_inc_ /= options_.var_decay;
      clause_inc_ /= options_.clause_decay;
      if (conflict_cap_reached()) {
        cancel_until(0);
        return SolveStatus::Unknown;
      }
      continue;
    }
    if (conflicts_here >= conflict_budget || conflict_cap_reached()) {
      cancel_until(0);
      return SolveStatus::Unknown;
    }
    if (options_.reduce &&
        static_cast<double>(learnts_.size()) - static_cast<double>(trail_.size()) >= max_learnts_) {
      reduce_learnts();
      max_learnts_ *= options_.learnt_growth;
    }
    const auto next = select_decision();
    if (!next) return SolveStatus::Sat;
    decide(*next);
  }
}

SolveStatus Solver::solve() {
  if (!ok_) return SolveStatus::Unsat;
  cancel_until(0);
  if (max_learnts_ == 0.0)
    max_learnts_ = std::max(1000.0, static_cast<double>(num_original_clauses()) * options_.learnt_fraction);
  for (int restart = 0;; ++restart) {
    const std::uint64_t budget =
        options_.restarts
            ? static_cast<std::uint64_t>(options_.restart_base * std::pow(options_.restart_factor, restart))
            : std::numeric_limits<std::uint64_t>::max();
    const SolveStatus status = search(budget);
    if (status == SolveStatus::Sat) {
      model_.assign(assigns_.size() + 1, false);
      for (std::size_t v = 0; v < assigns_.size(); ++v) model_[v + 1] = assigns_[v] == LBool::True;
      cancel_until(0);
      return status;
    }
    if (status == SolveStatus::Unsat) return status;
    if (conflict_cap_reached()) return SolveStatus::Unknown;
    ++stats_.restarts;
  }
}

EnumerationResult Solver::enumerate(const ModelCallback& on_model) {
  EnumerationResult result;
  while (true) {
    const SolveStatus status = solve();
    if (status == SolveStatus::Unsat) {
      result.status = EnumerationStatus::Complete;
      return result;
    }
    if (status == SolveStatus::Unknown) {
      result.status = EnumerationStatus::ConflictLimit;
      return result;
    }
    if (options_.max_models != 0 && result.models >= options_.max_models) {
      result.status = EnumerationStatus::ModelLimit;
      return result;
    }
    ++result.models;
    auto blocking = on_model(model_);
    if (blocking.empty()) blocking.push_back(block_full_model(model_));
    for (const auto& clause : blocking)
      if (!add_dimacs_clause(clause)) break;
  }
}

DimacsClause block_full_model(const Model& model) {
  DimacsClause clause;
  for (std::size_t v = 1; v < model.size(); ++v) {
    const auto var = static_cast<DimacsLit>(v);
    clause.push_back(model[v] ? -var : var);
  }
  return clause;
}

}  // namespace gradsat::sat
