//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_FEATURES_EXPORT_HPP
#define ONCOGAT_FEATURES_EXPORT_HPP

#include <string>
#include <vector>

#include "oncogat/core/csv.hpp"
#include "oncogat/core/error.hpp"
#include "oncogat/core/matrix.hpp"
#include "oncogat/features/atom_features.hpp"
#include "oncogat/features/descriptors.hpp"

namespace onco::features {

// One row per molecule: identifier then every global feature column.
inline std::string global_feature_csv(const std::vector<std::string> &ids,
                                      const std::vector<std::vector<double>> &rows) {
  require(ids.size() == rows.size(), "SchemaMismatch", "identifier and row counts differ");
  std::string out = "# layout_version=" + std::to_string(kLayoutVersion) + "\n";
  csv::Row header = {"smiles"};
  for (auto &name: global_feature_names())
    header.push_back(name);
  out += csv::join(header) + "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() + 1 == header.size(), "SchemaMismatch", "row width differs from header");
    csv::Row r = {ids[i]};
    for (double v: rows[i])
      r.push_back(csv::number(v));
    out += csv::join(r) + "\n";
  }
  return out;
}

// One row per node of a graph, columns named by the atom layout.
inline std::string node_feature_csv(const Matrix &nodes) {
  std::string out = "# layout_version=" + std::to_string(kLayoutVersion) + "\n";
  csv::Row header = {"node"};
  for (auto &name: atom_feature_names())
    header.push_back(name);
  out += csv::join(header) + "\n";
  for (Eigen::Index i = 0; i < nodes.rows(); ++i) {
    csv::Row r = {std::to_string(i)};
    for (Eigen::Index j = 0; j < nodes.cols(); ++j)
      r.push_back(csv::number(nodes(i, j)));
    out += csv::join(r) + "\n";
  }
  return out;
}

} // namespace onco::features

#endif // ONCOGAT_FEATURES_EXPORT_HPP
