#include "gradsat/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "gradsat/error.hpp"

namespace gradsat {

GradualPattern::GradualPattern(std::vector<GradualItem> items) : items_(std::move(items)) {
  if (items_.empty()) throw InvalidArgument("gradual pattern must be non-empty");
  std::sort(items_.begin(), items_.end());
  for (std::size_t i = 1; i < items_.size(); ++i) {
    if (items_[i].attribute == items_[i - 1].attribute)
      throw InvalidArgument("attribute " + std::to_string(items_[i].attribute) +
                            " appears twice in gradual pattern");
  }
}

bool GradualPattern::contains(GradualItem item) const {
  return std::binary_search(items_.begin(), items_.end(), item);
}

bool GradualPattern::includes(const GradualPattern& other) const {
  return std::includes(items_.begin(), items_.end(), other.items_.begin(), other.items_.end());
}

GradualPattern complement(const GradualPattern& p) {
  std::vector<GradualItem> flipped(p.items().begin(), p.items().end());
  for (auto& item : flipped) item.variation = flip(item.variation);
  return GradualPattern(std::move(flipped));
}

bool is_canonical(const GradualPattern& p) {
  return !p.empty() && p.items().front().variation == Variation::Inc;
}

GradualPattern canonical_form(const GradualPattern& p) {
  return is_canonical(p) ? p : complement(p);
}

NumericalDataset::NumericalDataset(std::vector<std::string> attribute_names,
                                   std::vector<std::vector<double>> rows,
                                   std::vector<std::string> transaction_ids)
    : names_(std::move(attribute_names)), rows_(std::move(rows)), ids_(std::move(transaction_ids)) {
  if (names_.empty()) throw InvalidArgument("dataset needs at least one attribute");
  if (rows_.empty()) throw InvalidArgument("no transactions");
  for (std::size_t t = 0; t < rows_.size(); ++t) {
    if (rows_[t].size() != names_.size())
      throw InvalidArgument("transaction " + std::to_string(t) + " has " +
                            std::to_string(rows_[t].size()) + " values, expected " +
                            std::to_string(names_.size()));
    for (double v : rows_[t])
      if (!std::isfinite(v))
        throw InvalidArgument("transaction " + std::to_string(t) + " has a non-finite value");
  }
  if (ids_.empty()) {
    ids_.reserve(rows_.size());
    for (std::size_t t = 0; t < rows_.size(); ++t) ids_.push_back("t" + std::to_string(t + 1));
  }
  if (ids_.size() != rows_.size()) throw InvalidArgument("transaction id count does not match rows");
  std::unordered_set<std::string> seen;
  for (const auto& id : ids_)
    if (!seen.insert(id).second) throw InvalidArgument("duplicate transaction id '" + id + "'");
}

void NumericalDataset::check_pattern(const GradualPattern& p) const {
  for (const auto& item : p.items())
    if (item.attribute >= names_.size())
      throw InvalidArgument("pattern references attribute " + std::to_string(item.attribute) +
                            " but the dataset has " + std::to_string(names_.size()));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_number(std::string_view cell, std::size_t line_no) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size())
    throw ParseError(line_no, "non-numeric cell '" + std::string(cell) + "'");
  if (!std::isfinite(v)) throw ParseError(line_no, "non-finite cell '" + std::string(cell) + "'");
  return v;
}

}  // namespace

NumericalDataset parse_csv(std::istream& in, bool has_id_column) {
  std::vector<std::string> names;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> ids;
  std::unordered_set<std::string> seen_ids;

  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);

    if (!have_header) {
      if (has_id_column) {
        if (fields.size() < 2) throw ParseError(line_no, "header needs an id column and at least one attribute");
        fields.erase(fields.begin());
      }
      for (auto f : fields) {
        if (f.empty()) throw ParseError(line_no, "empty attribute name");
        names.emplace_back(f);
      }
      have_header = true;
      continue;
    }

    const std::size_t expected = names.size() + (has_id_column ? 1 : 0);
    if (fields.size() != expected)
      throw ParseError(line_no, "ragged row: " + std::to_string(fields.size()) + " fields, expected " +
                                    std::to_string(expected));
    std::size_t first = 0;
    if (has_id_column) {
      std::string id(fields[0]);
      if (id.empty()) throw ParseError(line_no, "empty transaction id");
      if (!seen_ids.insert(id).second) throw ParseError(line_no, "duplicate transaction id '" + id + "'");
      ids.push_back(std::move(id));
      first = 1;
    }
    std::vector<double> row;
    row.reserve(names.size());
    for (std::size_t f = first; f < fields.size(); ++f) row.push_back(parse_number(fields[f], line_no));
    rows.push_back(std::move(row));
  }

  if (!have_header) throw ParseError(line_no, "empty input");
  if (rows.empty()) throw ParseError(line_no, "no transactions");
  return NumericalDataset(std::move(names), std::move(rows), std::move(ids));
}

NumericalDataset parse_csv(std::string_view text, bool has_id_column) {
  std::istringstream in{std::string(text)};
  return parse_csv(in, has_id_column);
}

void write_csv(std::ostream& out, const NumericalDataset& ds) {
  out << "id";
  for (const auto& name : ds.attribute_names()) out << ',' << name;
  out << '\n';
  char buf[64];
  for (std::size_t t = 0; t < ds.num_transactions(); ++t) {
    out << ds.transaction_ids()[t];
    for (double v : ds.row(t)) {
      const auto res = std::to_chars(buf, buf + sizeof buf, v);
      out << ',' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
    }
    out << '\n';
  }
}

std::string to_string(GradualItem item, const NumericalDataset& ds) {
  return ds.attribute_names().at(item.attribute) + (item.variation == Variation::Inc ? "+" : "-");
}

std::string to_string(const GradualPattern& p, const NumericalDataset& ds) {
  std::string out = "{";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += to_string(p.items()[i], ds);
  }
  return out + "}";
}

}  // namespace gradsat
