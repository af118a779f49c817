#include "gradsat/precedence.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "gradsat/error.hpp"
#include "support/oracles.hpp"

using namespace gradsat;
using namespace gradsat::testing;

namespace {

const GradualPattern kPoaceaeUpRumexDown({inc(P), dec(R)});

Chain ids(std::initializer_list<int> one_based) {
  Chain c;
  for (int t : one_based) c.push_back(static_cast<std::size_t>(t - 1));
  return c;
}

}  // namespace

TEST(BuildRelation, PollenEdges) {
  const auto rel = build_relation(pollen(), kPoaceaeUpRumexDown);
  EXPECT_TRUE(rel.has_edge(0, 1));   // t1 before t2
  EXPECT_FALSE(rel.has_edge(1, 4));  // t2, t5 incomparable
  EXPECT_FALSE(rel.has_edge(4, 1));
  EXPECT_TRUE(rel.has_edge(7, 3));  // t8 (13, 13) before t4 (13, 5)
  EXPECT_FALSE(rel.has_edge(3, 7));
  for (std::size_t i = 0; i < 8; ++i) EXPECT_FALSE(rel.has_edge(i, i));
}

TEST(BuildRelation, SingleColumnIsTotalPreorder) {
  const NumericalDataset ds({"a"}, {{1}, {2}, {3}, {3}, {5}});
  const auto rel = build_relation(ds, GradualPattern({inc(0)}));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      EXPECT_EQ(rel.has_edge(i, j), i != j && ds.value(i, 0) <= ds.value(j, 0));
}

TEST(BuildRelation, IsTransitive) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto ds = random_dataset(rng, 2 + rng() % 7, 1 + rng() % 4, 4);
    for (const auto& p : all_patterns(ds.num_attributes())) {
      const auto rel = build_relation(ds, p);
      const std::size_t n = rel.size();
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c)
            if (a != c && rel.has_edge(a, b) && rel.has_edge(b, c)) ASSERT_TRUE(rel.has_edge(a, c));
    }
  }
}

TEST(BuildRelation, RejectsUnknownAttribute) {
  EXPECT_THROW(build_relation(pollen(), GradualPattern({inc(5)})), InvalidArgument);
}

TEST(LongestChain, PoaceaeUpRumexDown) {
  const auto result = longest_chain(build_relation(pollen(), kPoaceaeUpRumexDown));
  EXPECT_EQ(result.length, 5u);
  EXPECT_EQ(result.support, Rational(5, 8));
  EXPECT_TRUE(result.witness == ids({1, 2, 3, 6, 4}) || result.witness == ids({1, 5, 3, 6, 4}));
}

TEST(LongestChain, SingleItemOrdersEveryTransaction) {
  const auto ds = pollen();
  for (std::size_t a = 0; a < 3; ++a)
    for (Variation v : {Variation::Inc, Variation::Dec}) {
      const auto result = longest_chain(build_relation(ds, GradualPattern({{a, v}})));
      EXPECT_EQ(result.length, 8u);
      EXPECT_EQ(result.support, Rational(1));
    }
}

TEST(LongestChain, PollenDerivedValues) {
  const auto ds = pollen();
  const GradualPattern three({inc(P), inc(S), dec(R)});
  EXPECT_EQ(dfs_longest_chain(ds, three), 4u);
  EXPECT_EQ(longest_chain(build_relation(ds, three)).length, 4u);

  const GradualPattern ps({inc(P), inc(S)});
  EXPECT_EQ(dfs_longest_chain(ds, ps), 6u);
  const auto r = longest_chain(build_relation(ds, ps));
  EXPECT_EQ(r.support, Rational(6, 8));
  EXPECT_EQ(r.witness, ids({1, 5, 6, 7, 4, 8}));
}

TEST(LongestChain, TiesFormOneComponent) {
  const NumericalDataset ds({"a", "b"}, {{1, 1}, {2, 2}, {2, 2}, {2, 2}, {3, 0}});
  const auto result = longest_chain(build_relation(ds, GradualPattern({inc(0), inc(1)})));
  EXPECT_EQ(result.length, 4u);
  EXPECT_EQ(result.witness, (Chain{0, 1, 2, 3}));
}

TEST(LongestChain, MatchesExhaustiveSearch) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const auto ds = random_dataset(rng, 1 + rng() % 8, 1 + rng() % 4, static_cast<int>(2 + rng() % 8));
    for (const auto& p : all_patterns(ds.num_attributes())) {
      const auto rel = build_relation(ds, p);
      const auto result = longest_chain(rel);
      ASSERT_EQ(result.length, dfs_longest_chain(ds, p));
      ASSERT_EQ(result.witness.size(), result.length);
      ASSERT_TRUE(respects(rel, result.witness));
      ASSERT_GE(result.support, Rational(1, static_cast<std::int64_t>(ds.num_transactions())));
      ASSERT_LE(result.support, Rational(1));

      const auto temporal = longest_temporal_chain(rel);
      ASSERT_EQ(temporal.length, dfs_longest_chain(ds, p, true));
      ASSERT_TRUE(respects(rel, temporal.witness));
      ASSERT_TRUE(std::is_sorted(temporal.witness.begin(), temporal.witness.end()));
    }
  }
}

TEST(Support, ComplementSymmetryAndReversedWitness) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const auto ds = random_dataset(rng, 2 + rng() % 10, 1 + rng() % 5);
    for (const auto& p : all_patterns(ds.num_attributes())) {
      const auto chain = longest_chain(build_relation(ds, p));
      const auto comp_rel = build_relation(ds, complement(p));
      ASSERT_EQ(chain.support, longest_chain(comp_rel).support);
      Chain reversed(chain.witness.rbegin(), chain.witness.rend());
      ASSERT_TRUE(respects(comp_rel, reversed));
    }
  }
}

TEST(Support, AntiMonotone) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const auto ds = random_dataset(rng, 2 + rng() % 9, 2 + rng() % 3);
    const auto patterns = all_patterns(ds.num_attributes());
    for (const auto& big : patterns)
      for (const auto& small : patterns)
        if (big.includes(small)) ASSERT_LE(support(ds, big), support(ds, small));
  }
}

TEST(Support, PollenTwoItemComplements) {
  const auto ds = pollen();
  EXPECT_EQ(support(ds, kPoaceaeUpRumexDown), Rational(5, 8));
  for (const auto& p : all_patterns(3))
    if (p.size() == 2) EXPECT_EQ(support(ds, p), support(ds, complement(p)));
}

TEST(MaximalChains, PoaceaeUpRumexDown) {
  const auto chains = maximal_chains(build_relation(pollen(), kPoaceaeUpRumexDown));
  const std::set<Chain> got(chains.begin(), chains.end());
  const std::set<Chain> expected{ids({1, 2, 3, 6, 4}), ids({1, 5, 3, 6, 4}), ids({1, 7, 4}), ids({1, 8, 4})};
  EXPECT_EQ(chains.size(), 4u);
  EXPECT_EQ(got, expected);

  std::set<Chain> longest;
  for (const auto& c : chains)
    if (c.size() == 5) longest.insert(c);
  EXPECT_EQ(longest, (std::set<Chain>{ids({1, 2, 3, 6, 4}), ids({1, 5, 3, 6, 4})}));
}

TEST(MaximalChains, NoEdgesGivesSingletons) {
  PrecedenceRelation rel(GradualPattern({inc(0)}), 4);
  const auto chains = maximal_chains(rel);
  EXPECT_EQ(chains, (std::vector<Chain>{{0}, {1}, {2}, {3}}));
}

TEST(MaximalChains, CapIsEnforced) {
  // A 2 x 2 x ... grid of incomparable pairs has 2^layers maximal chains.
  std::vector<std::vector<double>> rows;
  for (int layer = 0; layer < 6; ++layer) {
    rows.push_back({static_cast<double>(2 * layer), static_cast<double>(2 * layer + 1)});
    rows.push_back({static_cast<double>(2 * layer + 1), static_cast<double>(2 * layer)});
  }
  const NumericalDataset ds({"a", "b"}, rows);
  const auto rel = build_relation(ds, GradualPattern({inc(0), inc(1)}));
  EXPECT_EQ(maximal_chains(rel).size(), 64u);
  EXPECT_THROW(maximal_chains(rel, 63), ChainLimitExceeded);
}

// Definition-level check on small inputs: a chain is maximal iff no
// transaction can be prepended, appended or inserted.
TEST(MaximalChains, MatchDefinition) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 80; ++trial) {
    const auto ds = random_dataset(rng, 1 + rng() % 7, 1 + rng() % 3, 9);
    for (const auto& p : all_patterns(ds.num_attributes())) {
      const auto rel = build_relation(ds, p);
      for (const auto& chain : maximal_chains(rel)) {
        ASSERT_TRUE(respects(rel, chain));
        for (std::size_t t = 0; t < rel.size(); ++t) {
          if (std::find(chain.begin(), chain.end(), t) != chain.end()) continue;
          for (std::size_t pos = 0; pos <= chain.size(); ++pos) {
            Chain extended = chain;
            extended.insert(extended.begin() + static_cast<std::ptrdiff_t>(pos), t);
            ASSERT_FALSE(respects(rel, extended));
          }
        }
      }
    }
  }
}

TEST(ItemsRespectedBy, PollenClosure) {
  const auto ds = pollen();
  const auto chains = maximal_chains(build_relation(ds, kPoaceaeUpRumexDown));
  EXPECT_EQ(items_respected_by(ds, chains), (std::vector<GradualItem>{inc(P), dec(R)}));
}

// Without ties every maximal chain is unique up to nothing, so the set
// must match an exhaustive search of all non-extendable chains.
TEST(MaximalChains, CompleteWithoutTies) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng() % 7, m = 1 + rng() % 3;
    std::vector<std::vector<double>> rows(n, std::vector<double>(m));
    for (std::size_t a = 0; a < m; ++a) {
      std::vector<double> column(n);
      for (std::size_t t = 0; t < n; ++t) column[t] = static_cast<double>(t);
      std::shuffle(column.begin(), column.end(), rng);
      for (std::size_t t = 0; t < n; ++t) rows[t][a] = column[t];
    }
    std::vector<std::string> names;
    for (std::size_t a = 0; a < m; ++a) names.push_back("a" + std::to_string(a));
    const NumericalDataset ds(names, rows);
    for (const auto& p : all_patterns(m)) {
      const auto rel = build_relation(ds, p);
      std::set<Chain> brute;
      std::function<void(Chain&)> grow = [&](Chain& chain) {
        bool extended = false;
        for (std::size_t t = 0; t < n; ++t) {
          if (std::find(chain.begin(), chain.end(), t) != chain.end()) continue;
          for (std::size_t pos = 0; pos <= chain.size(); ++pos) {
            Chain next = chain;
            next.insert(next.begin() + static_cast<std::ptrdiff_t>(pos), t);
            if (respects(rel, next)) extended = true;
          }
        }
        if (!extended) brute.insert(chain);
        for (std::size_t t = 0; t < n; ++t) {
          if (std::find(chain.begin(), chain.end(), t) != chain.end() || !rel.has_edge(chain.back(), t)) continue;
          chain.push_back(t);
          grow(chain);
          chain.pop_back();
        }
      };
      for (std::size_t t = 0; t < n; ++t) {
        Chain start{t};
        grow(start);
      }
      const auto found = maximal_chains(rel);
      ASSERT_EQ(std::set<Chain>(found.begin(), found.end()), brute);
      ASSERT_EQ(found.size(), brute.size());
    }
  }
}
