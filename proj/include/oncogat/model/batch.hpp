//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_MODEL_BATCH_HPP
#define ONCOGAT_MODEL_BATCH_HPP

#include <string>
#include <vector>

#include "oncogat/core/error.hpp"
#include "oncogat/core/matrix.hpp"
#include "oncogat/features/graph.hpp"
#include "oncogat/features/scaler.hpp"

namespace onco::model {

// Disjoint union of graphs. Every node gets a self-loop with zero edge
// features, appended after the bond edges of the whole batch.
struct GraphBatch {
  Matrix node_features;            // N x Da
  Matrix edge_features;            // (E + N) x Db
  std::vector<int> edge_src;       // E + N
  std::vector<int> edge_dst;       // E + N
  std::vector<int> graph_of_node;  // N
  std::vector<int> node_offset;    // n_graphs + 1
  Matrix globals;                  // n_graphs x Dg, scaled
  Matrix inv_graph_size;           // n_graphs x 1

  int n_graphs() const { return static_cast<int>(node_offset.size()) - 1; }
  int n_nodes() const { return static_cast<int>(node_features.rows()); }
};

inline void check_layout(const features::FeaturizedGraph &g, int expected) {
  if (g.layout_version != expected)
    throw ModelError("LayoutVersionMismatch", "graph layout version " + std::to_string(g.layout_version) +
                                             " does not match model layout " + std::to_string(expected));
}

inline GraphBatch make_batch(const std::vector<const features::FeaturizedGraph *> &graphs,
                             const features::FeatureScaler &scaler) {
  require(!graphs.empty(), "EmptyBatch", "a batch needs at least one graph");
  int n = 0, e = 0;
  for (const auto *g: graphs) {
    check_layout(*g, features::kLayoutVersion);
    if (g->n_nodes() == 0)
      throw Error("EmptyGraph", "graph without nodes");
    n += g->n_nodes();
    e += g->n_edges();
  }
  GraphBatch b;
  b.node_features.resize(n, features::kAtomFeatureDim);
  b.edge_features = Matrix::Zero(e + n, features::kBondFeatureDim);
  b.edge_src.reserve(static_cast<std::size_t>(e + n));
  b.edge_dst.reserve(static_cast<std::size_t>(e + n));
  b.graph_of_node.reserve(static_cast<std::size_t>(n));
  b.node_offset.push_back(0);
  Matrix raw_globals(static_cast<Eigen::Index>(graphs.size()), scaler.n_input);
  b.inv_graph_size.resize(static_cast<Eigen::Index>(graphs.size()), 1);
  int at = 0, eat = 0;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const auto &g = *graphs[gi];
    b.node_features.middleRows(at, g.n_nodes()) = g.node_features;
    if (g.n_edges() > 0)
      b.edge_features.middleRows(eat, g.n_edges()) = g.edge_features;
    for (int k = 0; k < g.n_edges(); ++k) {
      b.edge_src.push_back(g.edge_src[static_cast<std::size_t>(k)] + at);
      b.edge_dst.push_back(g.edge_dst[static_cast<std::size_t>(k)] + at);
    }
    for (int u = 0; u < g.n_nodes(); ++u)
      b.graph_of_node.push_back(static_cast<int>(gi));
    require(static_cast<int>(g.global_features.size()) == scaler.n_input, "SchemaMismatch",
            "global feature width differs from the scaler");
    for (int j = 0; j < scaler.n_input; ++j)
      raw_globals(static_cast<Eigen::Index>(gi), j) = g.global_features[static_cast<std::size_t>(j)];
    b.inv_graph_size(static_cast<Eigen::Index>(gi), 0) = 1.0 / g.n_nodes();
    at += g.n_nodes();
    eat += g.n_edges();
    b.node_offset.push_back(at);
  }
  for (int u = 0; u < n; ++u) {
    b.edge_src.push_back(u);
    b.edge_dst.push_back(u);
  }
  b.globals = features::apply_scaler(scaler, raw_globals);
  return b;
}

inline GraphBatch make_batch(const features::FeaturizedGraph &g, const features::FeatureScaler &scaler) {
  return make_batch(std::vector<const features::FeaturizedGraph *>{&g}, scaler);
}

} // namespace onco::model

#endif // ONCOGAT_MODEL_BATCH_HPP
