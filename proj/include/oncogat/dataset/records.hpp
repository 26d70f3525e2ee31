//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_DATASET_RECORDS_HPP
#define ONCOGAT_DATASET_RECORDS_HPP

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "oncogat/chem/smiles.hpp"
#include "oncogat/chem/writer.hpp"
#include "oncogat/core/csv.hpp"
#include "oncogat/core/error.hpp"

namespace onco::dataset {

enum class ValueKind { gi50_molar, neg_log_gi50 };

struct ColumnMap {
  std::string smiles = "smiles";
  std::string cell_line = "cell_line";
  std::string value = "value";
  ValueKind kind = ValueKind::gi50_molar;
};

struct RawRecord {
  std::size_t row = 0; // 1-based data row
  std::string canonical_smiles;
  std::string cell_line;
  double pgi50 = 0.0;
};

struct RejectedRow {
  std::size_t row = 0;
  std::string code;
  std::string detail;
  std::string input;
};

struct IngestResult {
  std::vector<RawRecord> records;
  std::vector<RejectedRow> rejected;
};

inline double pgi50_from_molar(double molar) {
  if (!(molar > 0.0))
    throw Error("NonPositiveConcentration", "GI50 concentration must be positive");
  return -std::log10(molar);
}

// Row-level problems are collected in the rejection report; only a missing
// column aborts.
inline IngestResult ingest_gi50(std::string_view text, const ColumnMap &map = {},
                                const chem::ParseOptions &parse = {}) {
  const auto rows = csv::parse(text);
  if (rows.empty())
    throw Error("MissingColumn", "csv: no header row");
  const auto &header = rows.front();
  const std::size_t c_smiles = csv::column(header, map.smiles);
  const std::size_t c_line = csv::column(header, map.cell_line);
  const std::size_t c_value = csv::column(header, map.value);
  const std::size_t width = std::max({c_smiles, c_line, c_value}) + 1;

  IngestResult out;
  std::unordered_map<std::string, std::string> canon_cache;
  std::unordered_map<std::string, std::string> fail_cache;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto &row = rows[r];
    auto reject = [&](std::string code, std::string detail) {
      out.rejected.push_back({r, std::move(code), std::move(detail),
                              row.size() > c_smiles ? row[c_smiles] : std::string()});
    };
    if (row.size() < width) {
      reject("ShortRow", "row has " + std::to_string(row.size()) + " fields");
      continue;
    }
    const std::string &smi = row[c_smiles];
    char *end = nullptr;
    const double value = std::strtod(row[c_value].c_str(), &end);
    if (row[c_value].empty() || end != row[c_value].c_str() + row[c_value].size() ||
        !std::isfinite(value)) {
      reject("BadValue", "value '" + row[c_value] + "' is not a finite number");
      continue;
    }
    double pgi50 = value;
    if (map.kind == ValueKind::gi50_molar) {
      if (!(value > 0.0)) {
        reject("NonPositiveConcentration", "GI50 concentration " + row[c_value] + " is not positive");
        continue;
      }
      pgi50 = -std::log10(value);
    }
    std::string canonical;
    if (auto it = canon_cache.find(smi); it != canon_cache.end()) {
      canonical = it->second;
    } else if (auto f = fail_cache.find(smi); f != fail_cache.end()) {
      reject("BadSmiles", f->second);
      continue;
    } else {
      try {
        canonical = chem::canonical_smiles(chem::parse_smiles(smi, parse));
        canon_cache.emplace(smi, canonical);
      } catch (const Error &e) {
        const std::string detail = e.code() + ": " + e.what();
        fail_cache.emplace(smi, detail);
        reject("BadSmiles", detail);
        continue;
      }
    }
    out.records.push_back({r, std::move(canonical), row[c_line], pgi50});
  }
  return out;
}

struct ActivityRecord {
  std::string canonical_smiles;
  std::string cell_line;
  double pgi50 = 0.0;
  int n_merged = 0;
};

// Mean per (compound, cell line), ordered by that key.
inline std::vector<ActivityRecord> aggregate_replicates(const std::vector<RawRecord> &records) {
  std::map<std::pair<std::string, std::string>, std::pair<double, int>> acc;
  for (const auto &r: records) {
    auto &slot = acc[{r.canonical_smiles, r.cell_line}];
    slot.first += r.pgi50;
    slot.second += 1;
  }
  std::vector<ActivityRecord> out;
  out.reserve(acc.size());
  for (const auto &[key, v]: acc)
    out.push_back({key.first, key.second, v.first / v.second, v.second});
  return out;
}

enum class Activity { inactive, active };

inline constexpr double kActivityThreshold = 5.0;

inline Activity label_activity(double mean_pgi50) {
  return mean_pgi50 >= kActivityThreshold ? Activity::active : Activity::inactive;
}

struct ClassifiedCompound {
  std::string canonical_smiles;
  double mean_pgi50 = 0.0;
  Activity label = Activity::inactive;
};

// Mean over the compound's cell-line values, then thresholded.
inline std::vector<ClassifiedCompound> classify_compounds(const std::vector<ActivityRecord> &records) {
  std::map<std::string, std::pair<double, int>> acc;
  for (const auto &r: records) {
    auto &slot = acc[r.canonical_smiles];
    slot.first += r.pgi50;
    slot.second += 1;
  }
  std::vector<ClassifiedCompound> out;
  for (const auto &[smi, v]: acc) {
    const double mean = v.first / v.second;
    out.push_back({smi, mean, label_activity(mean)});
  }
  return out;
}

struct CellLineFilter {
  std::vector<ActivityRecord> records;
  std::vector<std::string> retained;
  std::vector<std::pair<std::string, int>> removed; // line, distinct compounds
};

// Drops cell lines with fewer than min_compounds distinct compounds.
inline CellLineFilter filter_cell_lines(const std::vector<ActivityRecord> &records,
                                        int min_compounds = 600,
                                        const std::vector<std::string> &known_lines = {}) {
  std::map<std::string, std::set<std::string>> compounds;
  for (const auto &line: known_lines)
    compounds[line];
  for (const auto &r: records)
    compounds[r.cell_line].insert(r.canonical_smiles);
  CellLineFilter out;
  std::set<std::string> keep;
  for (const auto &[line, set]: compounds) {
    if (static_cast<int>(set.size()) >= min_compounds) {
      out.retained.push_back(line);
      keep.insert(line);
    } else {
      out.removed.emplace_back(line, static_cast<int>(set.size()));
    }
  }
  for (const auto &r: records)
    if (keep.count(r.cell_line))
      out.records.push_back(r);
  return out;
}

inline std::string rejection_csv(const std::vector<RejectedRow> &rows) {
  std::string out = csv::join({"row", "code", "detail", "input"}) + "\n";
  for (const auto &r: rows)
    out += csv::join({std::to_string(r.row), r.code, r.detail, r.input}) + "\n";
  return out;
}

} // namespace onco::dataset

#endif // ONCOGAT_DATASET_RECORDS_HPP
