//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_EXPLAIN_INTEGRATED_GRADIENTS_HPP
#define ONCOGAT_EXPLAIN_INTEGRATED_GRADIENTS_HPP

#include <cmath>
#include <vector>

#include "oncogat/explain/scorer.hpp"

namespace onco::explain {

inline constexpr int kDefaultIgSteps = 128;

struct IntegratedGradients {
  int steps = kDefaultIgSteps;
  std::vector<double> node;  // per node, summed over the feature axis
  std::vector<double> group; // per heavy-atom group
  double score = 0.0;        // s(G)
  double baseline_score = 0.0;

  double total() const {
    double t = 0.0;
    for (double v: node)
      t += v;
    return t;
  }

  // |sum of attributions - (s(G) - s(baseline))| relative to the score gap.
  double completeness_gap() const {
    const double want = score - baseline_score;
    return std::abs(total() - want) / std::max(std::abs(want), 1e-12);
  }
};

// Midpoint Riemann sum along the straight path from all-zero node features
// to the input.
inline IntegratedGradients integrated_gradients(const Scorer &scorer, const features::FeaturizedGraph &g,
                                                int steps = kDefaultIgSteps) {
  require(steps >= 2, "InvalidArgument", "integrated gradients needs at least two steps");
  scorer.check(g);
  std::vector<Matrix> path;
  path.reserve(static_cast<std::size_t>(steps));
  for (int k = 0; k < steps; ++k)
    path.push_back(g.node_features * ((k + 0.5) / steps));
  const auto grads = scorer.gradients(g, path);
  Matrix avg = Matrix::Zero(g.n_nodes(), g.node_features.cols());
  for (const auto &m: grads)
    avg += m;
  avg /= steps;

  IntegratedGradients r;
  r.steps = steps;
  const Matrix attr = avg.cwiseProduct(g.node_features);
  for (int u = 0; u < g.n_nodes(); ++u)
    r.node.push_back(attr.row(u).sum());
  for (const auto &grp: g.h_groups) {
    double s = 0.0;
    for (int u: grp)
      s += r.node[static_cast<std::size_t>(u)];
    r.group.push_back(s);
  }
  const auto s = scorer.scores(g, {g.node_features, Matrix::Zero(g.n_nodes(), g.node_features.cols())});
  r.score = s[0];
  r.baseline_score = s[1];
  return r;
}

} // namespace onco::explain

#endif // ONCOGAT_EXPLAIN_INTEGRATED_GRADIENTS_HPP
