#include "gradsat/precedence.hpp"

#include <algorithm>
#include <functional>

#include "gradsat/error.hpp"

namespace gradsat {

PrecedenceRelation::PrecedenceRelation(GradualPattern pattern, std::size_t n)
    : pattern_(std::move(pattern)), n_(n), edges_(n * n, 0) {}

PrecedenceRelation build_relation(const NumericalDataset& ds, const GradualPattern& p) {
  ds.check_pattern(p);
  const std::size_t n = ds.num_transactions();
  PrecedenceRelation rel(p, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      bool ordered = true;
      for (const auto& item : p.items()) {
        const double from = ds.value(i, item.attribute);
        const double to = ds.value(j, item.attribute);
        if (item.variation == Variation::Inc ? !(from <= to) : !(from >= to)) {
          ordered = false;
          break;
        }
      }
      rel.set_edge(i, j, ordered);
    }
  }
  return rel;
}

namespace {

// Tarjan's algorithm, iterative. Components come out in reverse
// topological order of the condensation.
struct Condensation {
  std::vector<std::size_t> component_of;
  std::vector<std::vector<std::size_t>> members;  // ascending indices
};

Condensation condense(const PrecedenceRelation& rel) {
  const std::size_t n = rel.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  Condensation out;
  out.component_of.assign(n, 0);
  std::size_t counter = 0;

  struct Frame {
    std::size_t node;
    std::size_t next;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& f = frames.back();
      if (f.next < n) {
        const std::size_t w = f.next++;
        if (!rel.has_edge(f.node, w)) continue;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      const std::size_t v = f.node;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().node] = std::min(low[frames.back().node], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          out.component_of[w] = out.members.size();
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        out.members.push_back(std::move(comp));
      }
    }
  }
  return out;
}

// Adjacency between components, deduplicated.
std::vector<std::vector<bool>> component_edges(const PrecedenceRelation& rel, const Condensation& c) {
  const std::size_t k = c.members.size();
  std::vector<std::vector<bool>> adj(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < rel.size(); ++i)
    for (std::size_t j = 0; j < rel.size(); ++j)
      if (rel.has_edge(i, j) && c.component_of[i] != c.component_of[j])
        adj[c.component_of[i]][c.component_of[j]] = true;
  return adj;
}

ChainResult make_result(std::vector<std::size_t> witness, std::size_t n) {
  ChainResult r;
  r.length = witness.size();
  r.support = Rational(static_cast<std::int64_t>(r.length), static_cast<std::int64_t>(n));
  r.witness = std::move(witness);
  return r;
}

}  // namespace

ChainResult longest_chain(const PrecedenceRelation& rel) {
  const Condensation c = condense(rel);
  const auto adj = component_edges(rel, c);
  const std::size_t k = c.members.size();

  // Tarjan emits sinks first, so walking components in emission order
  // visits every successor before its predecessors.
  std::vector<std::size_t> best(k, 0), next(k, k);
  for (std::size_t a = 0; a < k; ++a) {
    best[a] = c.members[a].size();
    for (std::size_t b = 0; b < a; ++b) {
      if (adj[a][b] && c.members[a].size() + best[b] > best[a]) {
        best[a] = c.members[a].size() + best[b];
        next[a] = b;
      }
    }
  }
  std::size_t start = 0;
  for (std::size_t a = 0; a < k; ++a) {
    if (best[a] > best[start] ||
        (best[a] == best[start] && c.members[a].front() < c.members[start].front()))
      start = a;
  }
  std::vector<std::size_t> witness;
  for (std::size_t a = start; a < k; a = next[a])
    witness.insert(witness.end(), c.members[a].begin(), c.members[a].end());
  return make_result(std::move(witness), rel.size());
}

ChainResult longest_temporal_chain(const PrecedenceRelation& rel) {
  const std::size_t n = rel.size();
  std::vector<std::size_t> best(n, 1);
  std::vector<std::size_t> prev(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (rel.has_edge(i, j) && best[i] + 1 > best[j]) {
        best[j] = best[i] + 1;
        prev[j] = i;
      }
  std::size_t end = 0;
  for (std::size_t j = 0; j < n; ++j)
    if (best[j] > best[end]) end = j;
  std::vector<std::size_t> witness;
  for (std::size_t j = end; j < n; j = prev[j]) witness.push_back(j);
  std::reverse(witness.begin(), witness.end());
  return make_result(std::move(witness), n);
}

Rational support(const NumericalDataset& ds, const GradualPattern& p) {
  return longest_chain(build_relation(ds, p)).support;
}

std::vector<Chain> maximal_chains(const PrecedenceRelation& rel, std::size_t limit) {
  const Condensation c = condense(rel);
  const auto adj = component_edges(rel, c);
  const std::size_t k = c.members.size();

  // Covering relation of the condensation. build_relation yields a
  // transitive relation, so a component edge a->b is a cover iff no third
  // component sits between them.
  std::vector<std::vector<std::size_t>> cover(k);
  std::vector<bool> has_pred(k, false);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (!adj[a][b]) continue;
      bool covered = true;
      for (std::size_t m = 0; m < k && covered; ++m)
        if (m != a && m != b && adj[a][m] && adj[m][b]) covered = false;
      if (covered) {
        cover[a].push_back(b);
        has_pred[b] = true;
      }
    }
  }
  for (auto& succ : cover)
    std::sort(succ.begin(), succ.end(),
              [&](std::size_t x, std::size_t y) { return c.members[x].front() < c.members[y].front(); });

  std::vector<std::size_t> sources;
  for (std::size_t a = 0; a < k; ++a)
    if (!has_pred[a]) sources.push_back(a);
  std::sort(sources.begin(), sources.end(),
            [&](std::size_t x, std::size_t y) { return c.members[x].front() < c.members[y].front(); });

  std::vector<Chain> chains;
  std::vector<std::size_t> path;
  std::function<void(std::size_t)> walk = [&](std::size_t a) {
    path.push_back(a);
    if (cover[a].empty()) {
      if (chains.size() >= limit)
        throw ChainLimitExceeded("more than " + std::to_string(limit) + " maximal chains");
      Chain chain;
      for (std::size_t comp : path) chain.insert(chain.end(), c.members[comp].begin(), c.members[comp].end());
      chains.push_back(std::move(chain));
    } else {
      for (std::size_t b : cover[a]) walk(b);
    }
    path.pop_back();
  };
  for (std::size_t s : sources) walk(s);
  return chains;
}

std::vector<GradualItem> items_respected_by(const NumericalDataset& ds, const std::vector<Chain>& chains) {
  std::vector<GradualItem> out;
  for (std::size_t a = 0; a < ds.num_attributes(); ++a) {
    bool inc = true, dec = true;
    for (const auto& chain : chains) {
      for (std::size_t s = 1; s < chain.size() && (inc || dec); ++s) {
        const double from = ds.value(chain[s - 1], a);
        const double to = ds.value(chain[s], a);
        inc = inc && from <= to;
        dec = dec && from >= to;
      }
    }
    if (inc) out.push_back({a, Variation::Inc});
    if (dec) out.push_back({a, Variation::Dec});
  }
  return out;
}

bool respects(const PrecedenceRelation& rel, const Chain& chain) {
  std::vector<bool> used(rel.size(), false);
  for (std::size_t s = 0; s < chain.size(); ++s) {
    if (chain[s] >= rel.size() || used[chain[s]]) return false;
    used[chain[s]] = true;
    if (s > 0 && !rel.has_edge(chain[s - 1], chain[s])) return false;
  }
  return true;
}

}  // namespace gradsat
