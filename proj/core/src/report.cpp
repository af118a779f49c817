#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "gradsat/miner.hpp"

namespace gradsat {

std::vector<MiningResult> sorted_for_report(std::vector<MiningResult> results) {
  std::stable_sort(results.begin(), results.end(), [](const MiningResult& a, const MiningResult& b) {
    if (a.support != b.support) return a.support > b.support;
    return a.pattern < b.pattern;
  });
  return results;
}

namespace {

std::string closed_label(Closedness c) {
  switch (c) {
    case Closedness::Closed: return "closed";
    case Closedness::NotClosed: return "not-closed";
    case Closedness::Unknown: return "unknown";
    case Closedness::NotChecked: break;
  }
  return "-";
}

std::string chain_ids(const Chain& chain, const NumericalDataset& ds) {
  std::string out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (i) out += ',';
    out += ds.transaction_ids()[chain[i]];
  }
  return out;
}

void write_json(std::ostream& out, const std::vector<MiningResult>& results, const NumericalDataset& ds) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json rec;
    auto& items = rec["items"] = nlohmann::ordered_json::array();
    for (const auto& item : r.pattern.items()) items.push_back(to_string(item, ds));
    rec["support"] = {{"num", r.support.num()}, {"den", r.support.den()}, {"value", r.support.to_double()}};
    auto& witness = rec["witness"] = nlohmann::ordered_json::array();
    for (std::size_t t : r.witness) witness.push_back(ds.transaction_ids()[t]);
    auto& placement = rec["placement"] = nlohmann::ordered_json::array();
    for (std::size_t t : r.model_placement) placement.push_back(ds.transaction_ids()[t]);
    rec["verified"] = r.verified;
    switch (r.closed) {
      case Closedness::Closed: rec["closed"] = true; break;
      case Closedness::NotClosed: rec["closed"] = false; break;
      case Closedness::Unknown: rec["closed"] = "unknown"; break;
      case Closedness::NotChecked: rec["closed"] = nullptr; break;
    }
    arr.push_back(std::move(rec));
  }
  out << arr.dump(2) << '\n';
}

void write_text(std::ostream& out, const std::vector<MiningResult>& results, const NumericalDataset& ds) {
  struct Row {
    std::string pattern, support, witness, closed;
  };
  std::vector<Row> rows{{"pattern", "support", "witness", "closed"}};
  for (const auto& r : results) {
    std::ostringstream sup;
    sup << r.support.num() << '/' << r.support.den() << " (" << std::fixed << std::setprecision(4)
        << r.support.to_double() << ')';
    rows.push_back({to_string(r.pattern, ds), sup.str(), chain_ids(r.witness, ds), closed_label(r.closed)});
  }
  std::size_t w0 = 0, w1 = 0, w2 = 0;
  for (const auto& row : rows) {
    w0 = std::max(w0, row.pattern.size());
    w1 = std::max(w1, row.support.size());
    w2 = std::max(w2, row.witness.size());
  }
  for (const auto& row : rows) {
    out << std::left << std::setw(static_cast<int>(w0)) << row.pattern << "  " << std::setw(static_cast<int>(w1))
        << row.support << "  " << std::setw(static_cast<int>(w2)) << row.witness << "  " << row.closed << '\n';
  }
}

}  // namespace

void report(std::ostream& out, const std::vector<MiningResult>& results, const NumericalDataset& ds,
            ReportFormat format) {
  const auto sorted = sorted_for_report(results);
  if (format == ReportFormat::Json)
    write_json(out, sorted, ds);
  else
    write_text(out, sorted, ds);
}

}  // namespace gradsat
