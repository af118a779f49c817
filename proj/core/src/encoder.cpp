#include "gradsat/encoder.hpp"

#include <charconv>
#include <cstdint>
#include <ostream>

#include "gradsat/error.hpp"

namespace gradsat {

//===----------------------------------------------------------------------===//
// Thresholds
//===----------------------------------------------------------------------===//

namespace {

std::int64_t parse_digits(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  if (!s.empty() && (s.front() < '0' || s.front() > '9'))
    throw InvalidArgument("malformed threshold '" + std::string(whole) + "'");
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || v < 0)
    throw InvalidArgument("malformed threshold '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Threshold parse_threshold(std::string_view text) {
  if (text.empty()) throw InvalidArgument("empty threshold");
  Rational fraction;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto den = parse_digits(text.substr(slash + 1), text);
    if (den == 0) throw InvalidArgument("threshold denominator is zero");
    fraction = Rational(parse_digits(text.substr(0, slash), text), den);
  } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto int_part = text.substr(0, dot);
    const auto frac_part = text.substr(dot + 1);
    if (frac_part.size() > 15) throw InvalidArgument("threshold has too many decimals");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    const std::int64_t whole = int_part.empty() ? 0 : parse_digits(int_part, text);
    const std::int64_t frac = frac_part.empty() ? 0 : parse_digits(frac_part, text);
    if (whole > 1) throw InvalidArgument("fractional threshold '" + std::string(text) + "' exceeds 1");
    fraction = Rational(whole * scale + frac, scale);
  } else {
    const auto absolute = parse_digits(text, text);
    if (absolute == 0) throw InvalidArgument("threshold must be positive");
    return static_cast<std::size_t>(absolute);
  }
  if (fraction <= Rational(0) || fraction > Rational(1))
    throw InvalidArgument("fractional threshold '" + std::string(text) + "' outside (0, 1]");
  return fraction;
}

std::size_t threshold_to_k(const Threshold& threshold, std::size_t n) {
  std::size_t k = 0;
  if (const auto* frac = std::get_if<Rational>(&threshold)) {
    if (*frac <= Rational(0) || *frac > Rational(1))
      throw InvalidArgument("fractional threshold outside (0, 1]");
    const std::int64_t scaled = frac->num() * static_cast<std::int64_t>(n);
    k = static_cast<std::size_t>((scaled + frac->den() - 1) / frac->den());
  } else {
    k = std::get<std::size_t>(threshold);
  }
  if (k > n)
    throw InfeasibleThreshold("threshold needs chains of " + std::to_string(k) + " transactions but there are " +
                              std::to_string(n));
  if (k < 2)
    throw InvalidArgument("threshold gives k = " + std::to_string(k) +
                          "; every pattern has a chain of length 1, use k >= 2");
  return k;
}

//===----------------------------------------------------------------------===//
// Variable map
//===----------------------------------------------------------------------===//

VarMap::VarMap(std::size_t num_attributes, std::size_t num_transactions, std::size_t k)
    : m_(num_attributes), n_(num_transactions), k_(k) {}

DimacsLit VarMap::new_aux() {
  ++aux_;
  return static_cast<DimacsLit>(num_vars());
}

VarMeaning VarMap::describe(DimacsLit var) const {
  if (var <= 0 || static_cast<std::size_t>(var) > num_vars())
    throw InvalidArgument("variable " + std::to_string(var) + " out of range");
  const auto idx = static_cast<std::size_t>(var) - 1;
  VarMeaning out;
  if (idx < 2 * m_) {
    out.kind = VarMeaning::Kind::Item;
    out.item = {idx / 2, idx % 2 == 0 ? Variation::Inc : Variation::Dec};
  } else if (idx < 2 * m_ + n_ * k_) {
    const std::size_t off = idx - 2 * m_;
    out.kind = VarMeaning::Kind::Placement;
    out.position = off / n_ + 1;
    out.transaction = off % n_;
  }
  return out;
}

//===----------------------------------------------------------------------===//
// Cardinality
//===----------------------------------------------------------------------===//

std::vector<DimacsClause> at_most_sequential(std::size_t count, std::size_t bound, const NegatedTerm& negated_term,
                                             VarMap& vm) {
  std::vector<DimacsClause> out;
  if (count <= bound) return out;
  if (bound == 0) {
    for (std::size_t i = 0; i < count; ++i) out.push_back(negated_term(i));
    return out;
  }
  // s[i][j]: at least j+1 of the first i+1 terms hold.
  std::vector<std::vector<DimacsLit>> s(count - 1, std::vector<DimacsLit>(bound));
  for (auto& row : s)
    for (auto& v : row) v = vm.new_aux();

  auto with = [&](std::size_t term, std::initializer_list<DimacsLit> extra) {
    DimacsClause c = negated_term(term);
    c.insert(c.end(), extra.begin(), extra.end());
    return c;
  };

  out.push_back(with(0, {s[0][0]}));
  for (std::size_t j = 1; j < bound; ++j) out.push_back({-s[0][j]});
  out.push_back(with(count - 1, {-s[count - 2][bound - 1]}));
  for (std::size_t i = 1; i + 1 < count; ++i) {
    out.push_back(with(i, {s[i][0]}));
    out.push_back({-s[i - 1][0], s[i][0]});
    for (std::size_t j = 1; j < bound; ++j) {
      out.push_back(with(i, {-s[i - 1][j - 1], s[i][j]}));
      out.push_back({-s[i - 1][j], s[i][j]});
    }
    out.push_back(with(i, {-s[i - 1][bound - 1]}));
  }
  return out;
}

std::vector<DimacsClause> at_most_one(std::span<const DimacsLit> lits, VarMap& vm) {
  return at_most_sequential(lits.size(), 1, [&](std::size_t i) { return DimacsClause{-lits[i]}; }, vm);
}

//===----------------------------------------------------------------------===//
// Constraint groups
//===----------------------------------------------------------------------===//

std::vector<DimacsClause> encode_attribute_exclusion(const VarMap& vm) {
  std::vector<DimacsClause> out;
  for (std::size_t a = 0; a < vm.num_attributes(); ++a)
    out.push_back({-vm.item(a, Variation::Inc), -vm.item(a, Variation::Dec)});
  return out;
}

std::vector<DimacsClause> encode_position_filled(VarMap& vm) {
  std::vector<DimacsClause> out;
  for (std::size_t j = 1; j <= vm.k(); ++j) {
    DimacsClause column;
    for (std::size_t i = 0; i < vm.num_transactions(); ++i) column.push_back(vm.placement(i, j));
    out.push_back(column);
    auto amo = at_most_one(column, vm);
    out.insert(out.end(), amo.begin(), amo.end());
  }
  return out;
}

std::vector<DimacsClause> encode_transaction_once(VarMap& vm) {
  std::vector<DimacsClause> out;
  for (std::size_t i = 0; i < vm.num_transactions(); ++i) {
    DimacsClause row;
    for (std::size_t j = 1; j <= vm.k(); ++j) row.push_back(vm.placement(i, j));
    auto amo = at_most_one(row, vm);
    out.insert(out.end(), amo.begin(), amo.end());
  }
  return out;
}

std::vector<DimacsClause> encode_order(const NumericalDataset& ds, const VarMap& vm, OrderEncoding variant,
                                       bool simplify) {
  const std::size_t n = vm.num_transactions();
  const std::size_t k = vm.k();
  std::vector<DimacsClause> out;
  std::vector<std::size_t> successors;
  for (std::size_t a = 0; a < vm.num_attributes(); ++a) {
    for (Variation var : {Variation::Inc, Variation::Dec}) {
      const DimacsLit x = vm.item(a, var);
      // precedes(i, l): t_i may sit directly before t_l under a^var.
      auto precedes = [&](std::size_t i, std::size_t l) {
        const double from = ds.value(i, a), to = ds.value(l, a);
        return var == Variation::Inc ? from <= to : from >= to;
      };
      for (std::size_t i = 0; i < n; ++i) {
        successors.clear();
        std::size_t predecessors = 0;
        for (std::size_t l = 0; l < n; ++l) {
          if (l == i) continue;
          if (precedes(i, l)) successors.push_back(l);
          if (precedes(l, i)) ++predecessors;
        }
        for (std::size_t j = 1; j < k; ++j) {
          const DimacsLit y = vm.placement(i, j);
          const bool unreachable = successors.empty() ||
                                   (simplify && (predecessors < j - 1 || successors.size() < k - j));
          if (unreachable) {
            out.push_back({-x, -y});
            continue;
          }
          if (variant == OrderEncoding::Successor) {
            DimacsClause c{-x, -y};
            for (std::size_t l : successors) c.push_back(vm.placement(l, j + 1));
            out.push_back(std::move(c));
          } else {
            std::size_t next = 0;
            for (std::size_t l = 0; l < n; ++l) {
              if (l == i) continue;
              if (next < successors.size() && successors[next] == l) {
                ++next;
                continue;
              }
              out.push_back({-x, -y, -vm.placement(l, j + 1)});
            }
          }
        }
      }
    }
  }
  return out;
}

std::vector<DimacsClause> encode_min_length(VarMap& vm, std::size_t min_len) {
  const std::size_t m = vm.num_attributes();
  if (min_len == 0) throw InvalidArgument("minimum pattern length must be at least 1");
  if (min_len > m)
    throw InfeasibleThreshold("minimum pattern length " + std::to_string(min_len) + " exceeds the " +
                              std::to_string(m) + " attributes");
  if (min_len == 1) {
    DimacsClause any;
    for (std::size_t a = 0; a < m; ++a) {
      any.push_back(vm.item(a, Variation::Inc));
      any.push_back(vm.item(a, Variation::Dec));
    }
    return {any};
  }
  // At most m - min_len attributes left unselected. "Attribute a unselected"
  // is negated by (x(a+) v x(a-)).
  return at_most_sequential(
      m, m - min_len,
      [&](std::size_t a) {
        return DimacsClause{vm.item(a, Variation::Inc), vm.item(a, Variation::Dec)};
      },
      vm);
}

std::vector<DimacsClause> encode_static_symmetry_break(const VarMap& vm) {
  std::vector<DimacsClause> out;
  for (std::size_t a = 0; a < vm.num_attributes(); ++a) {
    DimacsClause c{-vm.item(a, Variation::Dec)};
    for (std::size_t b = 0; b < a; ++b) {
      c.push_back(vm.item(b, Variation::Inc));
      c.push_back(vm.item(b, Variation::Dec));
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<DimacsClause> encode_temporal(const VarMap& vm) {
  std::vector<DimacsClause> out;
  for (std::size_t j = 1; j < vm.k(); ++j)
    for (std::size_t i = 0; i < vm.num_transactions(); ++i)
      for (std::size_t earlier = 0; earlier <= i; ++earlier)
        out.push_back({-vm.placement(i, j), -vm.placement(earlier, j + 1)});
  return out;
}

//===----------------------------------------------------------------------===//
// Whole instance
//===----------------------------------------------------------------------===//

CnfInstance build(const NumericalDataset& ds, std::size_t k, const EncoderOptions& options) {
  const std::size_t n = ds.num_transactions();
  if (k < 2 || k > n)
    throw InfeasibleThreshold("chain length k = " + std::to_string(k) + " outside [2, " + std::to_string(n) + "]");

  CnfInstance inst{Cnf{}, VarMap(ds.num_attributes(), n, k), k, options, ClauseGroups{}};
  auto& clauses = inst.cnf.clauses;
  auto append = [&](std::vector<DimacsClause> group, std::size_t& counter) {
    counter = group.size();
    for (auto& c : group) clauses.push_back(std::move(c));
  };

  append(encode_attribute_exclusion(inst.var_map), inst.groups.exclusion);
  append(encode_position_filled(inst.var_map), inst.groups.position);
  append(encode_transaction_once(inst.var_map), inst.groups.once);
  append(encode_order(ds, inst.var_map, options.order, options.simplify), inst.groups.order);
  append(encode_min_length(inst.var_map, options.min_len), inst.groups.min_length);
  if (options.symmetry == SymmetryMode::Static)
    append(encode_static_symmetry_break(inst.var_map), inst.groups.symmetry);
  if (options.temporal) append(encode_temporal(inst.var_map), inst.groups.temporal);

  inst.cnf.num_vars = static_cast<std::int32_t>(inst.var_map.num_vars());
  return inst;
}

void write_dimacs(std::ostream& out, const CnfInstance& instance) {
  const VarMap& vm = instance.var_map;
  std::vector<std::string> comments;
  comments.push_back("gradual pattern mining instance: k=" + std::to_string(instance.k) +
                               " n=" + std::to_string(vm.num_transactions()) +
                               " m=" + std::to_string(vm.num_attributes()) +
                               " aux=" + std::to_string(vm.aux_count()));
  const auto named = static_cast<DimacsLit>(2 * vm.num_attributes() + vm.num_transactions() * vm.k());
  for (DimacsLit v = 1; v <= named; ++v) {
    const VarMeaning meaning = vm.describe(v);
    if (meaning.kind == VarMeaning::Kind::Item)
      comments.push_back("x " + std::to_string(v) + " = attr " + std::to_string(meaning.item.attribute) +
                                   (meaning.item.variation == Variation::Inc ? " INC" : " DEC"));
    else
      comments.push_back("y " + std::to_string(v) + " = txn " + std::to_string(meaning.transaction) +
                                   " pos " + std::to_string(meaning.position));
  }
  for (const auto& c : comments) out << "c " << c << '\n';
  out << "p cnf " << instance.cnf.num_vars << ' ' << instance.cnf.clauses.size() << '\n';
  for (const auto& clause : instance.cnf.clauses) {
    for (DimacsLit l : clause) out << l << ' ';
    out << "0\n";
  }
}

}  // namespace gradsat
