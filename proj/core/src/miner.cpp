#include "gradsat/miner.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "gradsat/error.hpp"

namespace gradsat {

DecodedModel decode_model(const sat::Model& model, const VarMap& vm, const NumericalDataset* ds) {
  const std::size_t m = vm.num_attributes(), n = vm.num_transactions(), k = vm.k();
  auto is_true = [&](DimacsLit v) {
    const auto idx = static_cast<std::size_t>(v);
    return idx < model.size() && model[idx];
  };

  std::vector<GradualItem> items;
  for (std::size_t a = 0; a < m; ++a) {
    const bool inc = is_true(vm.item(a, Variation::Inc));
    const bool dec = is_true(vm.item(a, Variation::Dec));
    if (inc && dec) throw InternalError("model selects both variations of attribute " + std::to_string(a));
    if (inc) items.push_back({a, Variation::Inc});
    if (dec) items.push_back({a, Variation::Dec});
  }
  if (items.empty()) throw InternalError("model selects no gradual item");

  Chain placement;
  std::vector<bool> used(n, false);
  for (std::size_t j = 1; j <= k; ++j) {
    std::size_t found = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_true(vm.placement(i, j))) continue;
      if (found != n) throw InternalError("position " + std::to_string(j) + " filled twice");
      found = i;
    }
    if (found == n) throw InternalError("position " + std::to_string(j) + " left empty");
    if (used[found]) throw InternalError("transaction " + std::to_string(found) + " placed twice");
    used[found] = true;
    placement.push_back(found);
  }

  DecodedModel out{GradualPattern(std::move(items)), std::move(placement)};
  if (ds != nullptr && !respects(build_relation(*ds, out.pattern), out.placement))
    throw InternalError("decoded placement does not respect the decoded pattern");
  return out;
}

namespace {

DimacsClause exact_projection_block(const GradualPattern& p, const VarMap& vm) {
  DimacsClause c;
  for (const auto& item : p.items()) c.push_back(-vm.item(item));
  std::size_t next = 0;
  for (std::size_t a = 0; a < vm.num_attributes(); ++a) {
    if (next < p.size() && p.items()[next].attribute == a) {
      ++next;
      continue;
    }
    c.push_back(vm.item(a, Variation::Inc));
    c.push_back(vm.item(a, Variation::Dec));
  }
  return c;
}

}  // namespace

std::vector<DimacsClause> blocking_clauses_for(const GradualPattern& pattern, const VarMap& vm,
                                               bool include_complement) {
  std::vector<DimacsClause> out{exact_projection_block(pattern, vm)};
  if (include_complement) out.push_back(exact_projection_block(complement(pattern), vm));
  return out;
}

std::vector<GradualItem> closure(const NumericalDataset& ds, const GradualPattern& p, std::size_t chain_limit) {
  return items_respected_by(ds, maximal_chains(build_relation(ds, p), chain_limit));
}

void closed_filter(std::vector<MiningResult>& results, const NumericalDataset& ds, std::size_t chain_limit) {
  for (auto& r : results) {
    try {
      const auto items = closure(ds, r.pattern, chain_limit);
      const bool same = std::equal(items.begin(), items.end(), r.pattern.items().begin(), r.pattern.items().end());
      r.closed = same ? Closedness::Closed : Closedness::NotClosed;
    } catch (const ChainLimitExceeded&) {
      r.closed = Closedness::Unknown;
    }
  }
}

MiningReport mine_k(const NumericalDataset& ds, std::size_t k, const MinerOptions& options) {
  using Clock = std::chrono::steady_clock;
  const std::size_t n = ds.num_transactions();
  const bool temporal = options.encoder.temporal;
  // Complements are distinct patterns once chains must follow row order.
  EncoderOptions enc = options.encoder;
  if (temporal) enc.symmetry = SymmetryMode::Blocking;
  const bool block_complement = !temporal && enc.symmetry == SymmetryMode::Blocking;

  MiningReport report;
  const auto t0 = Clock::now();
  const CnfInstance instance = build(ds, k, enc);
  const auto t1 = Clock::now();
  report.stats.k = k;
  report.stats.num_vars = instance.num_vars();
  report.stats.num_clauses = instance.num_clauses();
  report.stats.encode_seconds = std::chrono::duration<double>(t1 - t0).count();

  const Rational threshold(static_cast<std::int64_t>(k), static_cast<std::int64_t>(n));
  std::set<GradualPattern> seen;
  sat::Solver solver(options.solver);
  solver.load(instance.cnf);

  const auto on_model = [&](const sat::Model& model) {
    DecodedModel decoded = decode_model(model, instance.var_map, options.verify ? &ds : nullptr);
    const GradualPattern found = decoded.pattern;
    MiningResult r;
    r.pattern = temporal ? found : canonical_form(found);
    if (!seen.insert(r.pattern).second) throw InternalError("pattern reported twice");
    r.model_placement = std::move(decoded.placement);
    if (!temporal && r.pattern != found) std::reverse(r.model_placement.begin(), r.model_placement.end());
    if (options.verify) {
      const auto rel = build_relation(ds, r.pattern);
      ChainResult chain = temporal ? longest_temporal_chain(rel) : longest_chain(rel);
      if (chain.support < threshold) throw InternalError("oracle support below the mining threshold");
      r.support = chain.support;
      r.witness = std::move(chain.witness);
      r.verified = true;
    } else {
      r.support = threshold;
      r.witness = r.model_placement;
    }
    report.results.push_back(std::move(r));
    return blocking_clauses_for(found, instance.var_map, block_complement);
  };
  const sat::EnumerationResult er = solver.enumerate(on_model);
  report.stats.solve_seconds = std::chrono::duration<double>(Clock::now() - t1).count();
  report.stats.models = er.models;
  report.stats.solver = solver.stats();
  report.status = er.status;

  if (options.closed) closed_filter(report.results, ds, options.chain_limit);
  return report;
}

MiningReport mine(const NumericalDataset& ds, const Threshold& threshold, const MinerOptions& options) {
  return mine_k(ds, threshold_to_k(threshold, ds.num_transactions()), options);
}

}  // namespace gradsat
