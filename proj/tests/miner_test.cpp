#include "gradsat/miner.hpp"

#include <gtest/gtest.h>

#include <json.hpp>
#include <random>
#include <set>
#include <sstream>

#include "gradsat/error.hpp"
#include "support/oracles.hpp"

using namespace gradsat;
using namespace gradsat::testing;

namespace {

std::set<GradualPattern> patterns_of(const MiningReport& r) {
  std::set<GradualPattern> out;
  for (const auto& res : r.results) out.insert(res.pattern);
  return out;
}

Chain ids(std::initializer_list<int> one_based) {
  Chain c;
  for (int t : one_based) c.push_back(static_cast<std::size_t>(t - 1));
  return c;
}

const GradualPattern kPoaceaeUpRumexDown({inc(P), dec(R)});
const GradualPattern kPoaceaeSecale({inc(P), inc(S)});

}  // namespace

TEST(Mine, PollenAtFiveEighths) {
  const auto ds = pollen();
  const auto report = mine(ds, Rational(5, 8));
  EXPECT_EQ(report.status, sat::EnumerationStatus::Complete);
  EXPECT_EQ(patterns_of(report), brute_force_mine(ds, 5, 2));
  EXPECT_EQ(patterns_of(report), (std::set<GradualPattern>{kPoaceaeUpRumexDown, kPoaceaeSecale}));
  for (const auto& r : report.results) {
    EXPECT_TRUE(r.verified);
    if (r.pattern == kPoaceaeUpRumexDown) EXPECT_EQ(r.support, Rational(5, 8));
    if (r.pattern == kPoaceaeSecale) EXPECT_EQ(r.support, Rational(6, 8));
    EXPECT_EQ(r.model_placement.size(), 5u);
    EXPECT_TRUE(respects(build_relation(ds, r.pattern), r.model_placement));
    EXPECT_TRUE(respects(build_relation(ds, r.pattern), r.witness));
  }
}

TEST(Mine, FullSupportIsEmpty) {
  EXPECT_TRUE(mine(pollen(), Rational(1)).results.empty());
}

TEST(Mine, NeverReportsComplementPairs) {
  const auto ds = pollen();
  for (std::size_t k = 2; k <= 8; ++k) {
    const auto report = mine_k(ds, k);
    const auto found = patterns_of(report);
    EXPECT_EQ(found.size(), report.results.size());
    for (const auto& p : found) {
      EXPECT_TRUE(is_canonical(p));
      EXPECT_FALSE(found.count(complement(p)));
    }
  }
}

TEST(Mine, StaticSymmetryGivesSameSet) {
  const auto ds = pollen();
  MinerOptions opt;
  opt.encoder.symmetry = SymmetryMode::Static;
  for (std::size_t k = 2; k <= 8; ++k) EXPECT_EQ(patterns_of(mine_k(ds, k, opt)), patterns_of(mine_k(ds, k))) << k;
}

TEST(Mine, RestartsOffGivesSameSet) {
  const auto ds = pollen();
  MinerOptions opt;
  opt.solver.restarts = false;
  opt.solver.reduce = false;
  for (std::size_t k = 2; k <= 6; ++k) EXPECT_EQ(patterns_of(mine_k(ds, k, opt)), patterns_of(mine_k(ds, k)));
}

TEST(Mine, ExactOnRandomSmallData) {
  std::mt19937_64 rng(321);
  for (int trial = 0; trial < 40; ++trial) {
    const auto ds = random_dataset(rng, 3 + rng() % 6, 2 + rng() % 3);
    for (std::size_t k = 2; k <= ds.num_transactions(); ++k) {
      const auto report = mine_k(ds, k);
      const auto found = patterns_of(report);
      ASSERT_EQ(found, brute_force_mine(ds, k, 2));
      // Anti-monotone closure of the output.
      for (const auto& p : found)
        for (const auto& q : all_patterns(ds.num_attributes()))
          if (q.size() >= 2 && p.includes(q)) ASSERT_TRUE(found.count(canonical_form(q)));
      for (const auto& r : report.results) {
        ASSERT_GE(r.support, Rational(static_cast<std::int64_t>(k), static_cast<std::int64_t>(ds.num_transactions())));
        ASSERT_EQ(r.support, Rational(static_cast<std::int64_t>(dfs_longest_chain(ds, r.pattern)),
                                      static_cast<std::int64_t>(ds.num_transactions())));
      }
    }
  }
}

TEST(Mine, MinLengthOne) {
  const auto ds = pollen();
  MinerOptions opt;
  opt.encoder.min_len = 1;
  EXPECT_EQ(patterns_of(mine_k(ds, 5, opt)), brute_force_mine(ds, 5, 1));
}

TEST(Mine, TemporalMatchesOrderedOracle) {
  const auto ds = pollen();
  MinerOptions opt;
  opt.encoder.temporal = true;
  const auto report = mine_k(ds, 4, opt);
  const auto found = patterns_of(report);
  EXPECT_EQ(found, brute_force_mine(ds, 4, 2, true));
  EXPECT_EQ(found, (std::set<GradualPattern>{kPoaceaeUpRumexDown, kPoaceaeSecale, GradualPattern({inc(S), inc(R)})}));
  for (const auto& r : report.results) {
    EXPECT_TRUE(std::is_sorted(r.witness.begin(), r.witness.end()));
    EXPECT_TRUE(std::is_sorted(r.model_placement.begin(), r.model_placement.end()));
  }
}

TEST(Mine, NoVerifyReportsLowerBound) {
  MinerOptions opt;
  opt.verify = false;
  const auto report = mine(pollen(), Rational(5, 8), opt);
  for (const auto& r : report.results) {
    EXPECT_FALSE(r.verified);
    EXPECT_EQ(r.support, Rational(5, 8));
    EXPECT_EQ(r.witness, r.model_placement);
  }
}

TEST(Mine, ModelCapIsPartial) {
  MinerOptions opt;
  opt.solver.max_models = 1;
  const auto report = mine_k(pollen(), 3, opt);
  EXPECT_EQ(report.results.size(), 1u);
  EXPECT_TRUE(report.partial());
}

TEST(Mine, RejectsBadThresholds) {
  EXPECT_THROW(mine(pollen(), std::size_t{9}), InfeasibleThreshold);
  MinerOptions opt;
  opt.encoder.min_len = 4;
  EXPECT_THROW(mine_k(pollen(), 3, opt), InfeasibleThreshold);
}

TEST(DecodeModel, PollenPlacement) {
  const auto ds = pollen();
  const VarMap vm(3, 8, 5);
  sat::Model model(vm.num_vars() + 1, false);
  model[static_cast<std::size_t>(vm.item(P, Variation::Inc))] = true;
  model[static_cast<std::size_t>(vm.item(R, Variation::Dec))] = true;
  const Chain chain = ids({1, 2, 3, 6, 4});
  for (std::size_t j = 0; j < chain.size(); ++j) model[static_cast<std::size_t>(vm.placement(chain[j], j + 1))] = true;
  const auto decoded = decode_model(model, vm, &ds);
  EXPECT_EQ(decoded.pattern, kPoaceaeUpRumexDown);
  EXPECT_EQ(decoded.placement, chain);
}

TEST(DecodeModel, RejectsMalformedModels) {
  const auto ds = pollen();
  const VarMap vm(3, 8, 2);
  auto base = [&] {
    sat::Model model(vm.num_vars() + 1, false);
    model[static_cast<std::size_t>(vm.item(P, Variation::Inc))] = true;
    model[static_cast<std::size_t>(vm.placement(0, 1))] = true;
    model[static_cast<std::size_t>(vm.placement(1, 2))] = true;
    return model;
  };
  EXPECT_NO_THROW(decode_model(base(), vm, &ds));

  auto empty_position = base();
  empty_position[static_cast<std::size_t>(vm.placement(1, 2))] = false;
  EXPECT_THROW(decode_model(empty_position, vm), InternalError);

  auto double_position = base();
  double_position[static_cast<std::size_t>(vm.placement(2, 2))] = true;
  EXPECT_THROW(decode_model(double_position, vm), InternalError);

  auto twice = base();
  twice[static_cast<std::size_t>(vm.placement(1, 2))] = false;
  twice[static_cast<std::size_t>(vm.placement(0, 2))] = true;
  EXPECT_THROW(decode_model(twice, vm), InternalError);

  auto no_items = base();
  no_items[static_cast<std::size_t>(vm.item(P, Variation::Inc))] = false;
  EXPECT_THROW(decode_model(no_items, vm), InternalError);

  auto wrong_order = base();  // t2 (p=6) before t1 (p=4) under Poaceae+
  wrong_order[static_cast<std::size_t>(vm.placement(0, 1))] = false;
  wrong_order[static_cast<std::size_t>(vm.placement(1, 2))] = false;
  wrong_order[static_cast<std::size_t>(vm.placement(1, 1))] = true;
  wrong_order[static_cast<std::size_t>(vm.placement(0, 2))] = true;
  EXPECT_NO_THROW(decode_model(wrong_order, vm));
  EXPECT_THROW(decode_model(wrong_order, vm, &ds), InternalError);
}

TEST(BlockingClauses, ExactProjection) {
  const VarMap vm(3, 8, 5);
  const auto clauses = blocking_clauses_for(kPoaceaeUpRumexDown, vm, true);
  ASSERT_EQ(clauses.size(), 2u);
  const DimacsLit xp = vm.item(P, Variation::Inc), xpd = vm.item(P, Variation::Dec);
  const DimacsLit xr = vm.item(R, Variation::Inc), xrd = vm.item(R, Variation::Dec);
  const DimacsLit xs = vm.item(S, Variation::Inc), xsd = vm.item(S, Variation::Dec);
  EXPECT_EQ(clauses[0], (DimacsClause{-xp, -xrd, xs, xsd}));
  EXPECT_EQ(clauses[1], (DimacsClause{-xpd, -xr, xs, xsd}));
  EXPECT_EQ(blocking_clauses_for(kPoaceaeUpRumexDown, vm, false).size(), 1u);

  // On a two-attribute vocabulary the clauses reduce to the plain negations.
  const VarMap two(2, 4, 2);
  const auto plain = blocking_clauses_for(GradualPattern({inc(0), dec(1)}), two, true);
  EXPECT_EQ(plain[0], (DimacsClause{-1, -4}));
  EXPECT_EQ(plain[1], (DimacsClause{-2, -3}));
}

TEST(BlockingClauses, ExcludeOnlyThePatternAndItsComplement) {
  const VarMap vm(3, 1, 1);
  const auto clauses = blocking_clauses_for(kPoaceaeUpRumexDown, vm, true);
  for (const auto& p : all_patterns(3)) {
    sat::Model model(vm.num_vars() + 1, false);
    for (const auto& item : p.items()) model[static_cast<std::size_t>(vm.item(item))] = true;
    const bool blocked = !satisfies(clauses, model);
    ASSERT_EQ(blocked, p == kPoaceaeUpRumexDown || p == complement(kPoaceaeUpRumexDown));
  }
}

TEST(ClosedFilter, PoaceaeUpRumexDownIsClosed) {
  const auto ds = pollen();
  EXPECT_EQ(closure(ds, kPoaceaeUpRumexDown, 1000), (std::vector<GradualItem>{inc(P), dec(R)}));
  MinerOptions opt;
  opt.closed = true;
  const auto report = mine(ds, Rational(5, 8), opt);
  for (const auto& r : report.results)
    if (r.pattern == kPoaceaeUpRumexDown) EXPECT_EQ(r.closed, Closedness::Closed);
}

TEST(ClosedFilter, ClosureIsExtensiveAndPreservesChains) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const auto ds = random_dataset(rng, 2 + rng() % 7, 2 + rng() % 3, 6);
    for (const auto& p : all_patterns(ds.num_attributes())) {
      const auto chains = maximal_chains(build_relation(ds, p));
      const auto items = items_respected_by(ds, chains);
      for (const auto& item : p.items()) ASSERT_TRUE(std::binary_search(items.begin(), items.end(), item));
      for (const auto& chain : chains)
        for (std::size_t s = 1; s < chain.size(); ++s)
          for (const auto& item : items) {
            const double a = ds.value(chain[s - 1], item.attribute), b = ds.value(chain[s], item.attribute);
            ASSERT_TRUE(item.variation == Variation::Inc ? a <= b : a >= b);
          }
    }
  }
}

TEST(ClosedFilter, NonClosedPattern) {
  // b copies a, so the closure of any pattern with a+ also holds b+.
  const NumericalDataset ds({"a", "b", "c"}, {{1, 1, 3}, {2, 2, 1}, {3, 3, 2}, {4, 4, 0}});
  std::vector<MiningResult> results(1);
  results[0].pattern = GradualPattern({inc(0), inc(2)});
  closed_filter(results, ds, 100);
  EXPECT_EQ(results[0].closed, Closedness::NotClosed);
  const auto c = closure(ds, results[0].pattern, 100);
  EXPECT_EQ(c, (std::vector<GradualItem>{inc(0), inc(1), inc(2)}));
  EXPECT_EQ(support(ds, GradualPattern(c)), support(ds, results[0].pattern));
}

TEST(ClosedFilter, UnknownPastChainCap) {
  std::vector<std::vector<double>> rows;
  for (int layer = 0; layer < 6; ++layer) {
    rows.push_back({static_cast<double>(2 * layer), static_cast<double>(2 * layer + 1)});
    rows.push_back({static_cast<double>(2 * layer + 1), static_cast<double>(2 * layer)});
  }
  const NumericalDataset ds({"a", "b"}, rows);
  std::vector<MiningResult> results(1);
  results[0].pattern = GradualPattern({inc(0), inc(1)});
  closed_filter(results, ds, 10);
  EXPECT_EQ(results[0].closed, Closedness::Unknown);
}

TEST(Report, JsonRecord) {
  const auto ds = pollen();
  MiningResult r;
  r.pattern = kPoaceaeUpRumexDown;
  r.support = Rational(5, 8);
  r.witness = ids({1, 2, 3, 6, 4});
  r.model_placement = r.witness;
  r.verified = true;
  r.closed = Closedness::Closed;
  std::ostringstream out;
  report(out, {r}, ds, ReportFormat::Json);
  const auto json = nlohmann::json::parse(out.str());
  ASSERT_TRUE(json.is_array());
  ASSERT_EQ(json.size(), 1u);
  EXPECT_EQ(json[0]["items"], nlohmann::json({"Poaceae+", "Rumex-"}));
  EXPECT_EQ(json[0]["support"]["num"], 5);
  EXPECT_EQ(json[0]["support"]["den"], 8);
  EXPECT_DOUBLE_EQ(json[0]["support"]["value"].get<double>(), 0.625);
  EXPECT_EQ(json[0]["witness"], nlohmann::json({"t1", "t2", "t3", "t6", "t4"}));
  EXPECT_EQ(json[0]["closed"], true);
}

TEST(Report, EmptyIsEmptyArray) {
  std::ostringstream out;
  report(out, {}, pollen(), ReportFormat::Json);
  EXPECT_EQ(nlohmann::json::parse(out.str()), nlohmann::json::array());
}

TEST(Report, TextSortsBySupportThenPattern) {
  const auto ds = pollen();
  std::vector<MiningResult> rs(3);
  rs[0].pattern = GradualPattern({inc(S), inc(R)});
  rs[0].support = Rational(1, 2);
  rs[1].pattern = kPoaceaeUpRumexDown;
  rs[1].support = Rational(5, 8);
  rs[2].pattern = kPoaceaeSecale;
  rs[2].support = Rational(1, 2);
  const auto sorted = sorted_for_report(rs);
  EXPECT_EQ(sorted[0].pattern, kPoaceaeUpRumexDown);
  EXPECT_EQ(sorted[1].pattern, kPoaceaeSecale);
  EXPECT_EQ(sorted[2].pattern, rs[0].pattern);
  std::ostringstream out;
  report(out, rs, ds, ReportFormat::Text);
  const std::string text = out.str();
  EXPECT_LT(text.find("{Poaceae+, Rumex-}"), text.find("{Poaceae+, Secale+}"));
  EXPECT_LT(text.find("{Poaceae+, Secale+}"), text.find("{Secale+, Rumex+}"));
}
