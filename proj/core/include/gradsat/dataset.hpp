#pragma once

#include <cstddef>
#include <cstdint>
#include <compare>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gradsat {

enum class Variation : std::uint8_t { Inc, Dec };

constexpr Variation flip(Variation v) { return v == Variation::Inc ? Variation::Dec : Variation::Inc; }

/// An attribute together with the direction it is required to vary in.
/// Inc is rendered "+" (values non-decreasing along a chain), Dec "-".
struct GradualItem {
  std::size_t attribute = 0;
  Variation variation = Variation::Inc;

  friend constexpr auto operator<=>(const GradualItem&, const GradualItem&) = default;
};

/// Non-empty set of gradual items over pairwise distinct attributes, stored
/// sorted by attribute index.
class GradualPattern {
 public:
  GradualPattern() = default;
  /// Sorts `items`; throws InvalidArgument on an empty set or a repeated
  /// attribute.
  explicit GradualPattern(std::vector<GradualItem> items);

  std::span<const GradualItem> items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  /// True when the attribute occurs with the given variation.
  bool contains(GradualItem item) const;
  /// True when every item of `other` is an item of this pattern.
  bool includes(const GradualPattern& other) const;

  friend auto operator<=>(const GradualPattern&, const GradualPattern&) = default;
  friend bool operator==(const GradualPattern&, const GradualPattern&) = default;

 private:
  std::vector<GradualItem> items_;
};

/// Every variation flipped; an involution.
GradualPattern complement(const GradualPattern& p);

/// The lowest-index item of a canonical pattern varies Inc.
bool is_canonical(const GradualPattern& p);

/// Whichever of {p, complement(p)} is canonical.
GradualPattern canonical_form(const GradualPattern& p);

/// Immutable transactions x attributes table of finite reals.
class NumericalDataset {
 public:
  /// Validates shape, finiteness and id uniqueness. Empty `ids` means
  /// "t1".."tn".
  NumericalDataset(std::vector<std::string> attribute_names,
                   std::vector<std::vector<double>> rows,
                   std::vector<std::string> transaction_ids = {});

  std::size_t num_transactions() const { return rows_.size(); }
  std::size_t num_attributes() const { return names_.size(); }

  double value(std::size_t transaction, std::size_t attribute) const {
    return rows_[transaction][attribute];
  }
  std::span<const double> row(std::size_t transaction) const { return rows_[transaction]; }

  const std::vector<std::string>& attribute_names() const { return names_; }
  const std::vector<std::string>& transaction_ids() const { return ids_; }

  /// Throws InvalidArgument when a pattern references a missing attribute.
  void check_pattern(const GradualPattern& p) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::string> ids_;
};

/// Reads a header line of attribute names followed by one row per
/// transaction. With `has_id_column` the first field of every line is the
/// transaction id (its header cell is ignored). Throws ParseError.
NumericalDataset parse_csv(std::istream& in, bool has_id_column);
NumericalDataset parse_csv(std::string_view text, bool has_id_column);

/// Writes the dataset back out in the layout parse_csv reads with
/// `has_id_column = true`. Values use the shortest round-tripping form.
void write_csv(std::ostream& out, const NumericalDataset& ds);

/// "+" / "-" suffix form, e.g. "Poaceae+".
std::string to_string(GradualItem item, const NumericalDataset& ds);
/// "{Poaceae+, Rumex-}".
std::string to_string(const GradualPattern& p, const NumericalDataset& ds);

}  // namespace gradsat
