//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_DATASET_CLUSTER_HPP
#define ONCOGAT_DATASET_CLUSTER_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "oncogat/core/error.hpp"
#include "oncogat/core/matrix.hpp"
#include "oncogat/features/fingerprint.hpp"

namespace onco::dataset {

// Greedy sphere exclusion. Each cluster lists its centroid first, then the
// members it absorbed in ascending index. Neighbour counts are computed once;
// ties go to the lower input index.
inline std::vector<std::vector<int>> butina_cluster(const std::vector<features::Fingerprint> &fps,
                                                    double threshold) {
  require(threshold > 0.0 && threshold <= 1.0, "InvalidArgument",
          "butina threshold must lie in (0, 1]");
  const int n = static_cast<int>(fps.size());
  std::vector<std::vector<int>> nbrs(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (features::tanimoto(fps[i], fps[j]) >= threshold) {
        nbrs[i].push_back(j);
        nbrs[j].push_back(i);
      }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return nbrs[a].size() > nbrs[b].size(); });
  std::vector<char> taken(n, 0);
  std::vector<std::vector<int>> clusters;
  for (int c: order) {
    if (taken[c])
      continue;
    taken[c] = 1;
    std::vector<int> members = {c};
    std::vector<int> rest;
    for (int j: nbrs[c])
      if (!taken[j]) {
        taken[j] = 1;
        rest.push_back(j);
      }
    std::sort(rest.begin(), rest.end());
    members.insert(members.end(), rest.begin(), rest.end());
    clusters.push_back(std::move(members));
  }
  return clusters;
}

struct DroppedPair {
  int dropped = 0;
  int representative = 0;
  double similarity = 0.0;
};

struct Exclusion {
  std::vector<int> kept; // ascending input indices
  std::vector<DroppedPair> dropped;
  int passes = 0;
};

// Keeps one compound per Butina cluster at the threshold (the
// lexicographically smallest canonical SMILES) and repeats on the survivors
// until no kept pair reaches the threshold.
inline Exclusion exclude_near_duplicates(const std::vector<std::string> &canonical,
                                         const std::vector<features::Fingerprint> &fps,
                                         double threshold = 0.95) {
  require(canonical.size() == fps.size(), "SchemaMismatch", "smiles and fingerprint counts differ");
  Exclusion out;
  out.kept.resize(fps.size());
  std::iota(out.kept.begin(), out.kept.end(), 0);
  for (;;) {
    std::vector<features::Fingerprint> sub;
    sub.reserve(out.kept.size());
    for (int i: out.kept)
      sub.push_back(fps[i]);
    const auto clusters = butina_cluster(sub, threshold);
    ++out.passes;
    if (clusters.size() == out.kept.size())
      break;
    std::vector<int> next;
    for (const auto &c: clusters) {
      int rep = out.kept[c[0]];
      for (int k: c)
        if (canonical[out.kept[k]] < canonical[rep])
          rep = out.kept[k];
      next.push_back(rep);
      for (int k: c)
        if (out.kept[k] != rep)
          out.dropped.push_back({out.kept[k], rep, features::tanimoto(fps[out.kept[k]], fps[rep])});
    }
    std::sort(next.begin(), next.end());
    out.kept = std::move(next);
  }
  return out;
}

namespace detail {

struct LinkNode {
  int left = -1;
  int right = -1;
  double distance = 0.0;
  int size = 1;
};

struct CondensedCluster {
  int parent = -1;
  double lambda_birth = 0.0;
  double stability = 0.0;
  std::vector<int> children;
};

inline double to_lambda(double d) { return 1.0 / std::max(d, 1e-12); }

} // namespace detail

// Density clustering on a precomputed distance matrix: mutual reachability
// with core distance to the min_cluster_size-th neighbour (self included),
// minimum spanning tree, condensed tree, excess-of-mass selection with the
// root excluded. Label -1 marks noise. Merges at one distance form a single
// multi-way split, so points at distance 0 always share a label.
inline std::vector<int> density_cluster(const Matrix &d, int min_cluster_size = 5) {
  require(min_cluster_size >= 2, "InvalidArgument", "min_cluster_size must be at least 2");
  require(d.rows() == d.cols(), "MatrixAsymmetric", "distance matrix is not square");
  const int n = static_cast<int>(d.rows());
  for (int i = 0; i < n; ++i) {
    require(d(i, i) == 0.0, "MatrixAsymmetric", "distance matrix diagonal is not zero");
    for (int j = i + 1; j < n; ++j)
      require(d(i, j) == d(j, i), "MatrixAsymmetric",
              "distance matrix differs at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  std::vector<int> labels(n, -1);
  if (n < min_cluster_size || n < 2)
    return labels;

  std::vector<double> core(n);
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(d.row(i).data(), d.row(i).data() + n);
    const int k = std::min(min_cluster_size, n) - 1;
    std::nth_element(row.begin(), row.begin() + k, row.end());
    core[i] = row[k];
  }
  auto reach = [&](int i, int j) { return std::max({core[i], core[j], d(i, j)}); };

  // Prim over the dense mutual-reachability graph.
  struct Edge {
    int a, b;
    double w;
  };
  std::vector<Edge> mst;
  std::vector<char> in_tree(n, 0);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<int> from(n, -1);
  int cur = 0;
  in_tree[0] = 1;
  for (int step = 1; step < n; ++step) {
    int next = -1;
    for (int j = 0; j < n; ++j) {
      if (in_tree[j])
        continue;
      const double w = reach(cur, j);
      if (w < best[j]) {
        best[j] = w;
        from[j] = cur;
      }
      if (next < 0 || best[j] < best[next])
        next = j;
    }
    in_tree[next] = 1;
    mst.push_back({std::min(from[next], next), std::max(from[next], next), best[next]});
    cur = next;
  }
  std::stable_sort(mst.begin(), mst.end(), [](const Edge &x, const Edge &y) {
    if (x.w != y.w)
      return x.w < y.w;
    return std::pair(x.a, x.b) < std::pair(y.a, y.b);
  });

  // Single-linkage tree: leaves 0..n-1, internal nodes n..2n-2.
  std::vector<detail::LinkNode> nodes(2 * n - 1);
  std::vector<int> uf(2 * n - 1);
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](int x) {
    while (uf[x] != x)
      x = uf[x] = uf[uf[x]];
    return x;
  };
  int next_node = n;
  for (const auto &e: mst) {
    const int ra = find(e.a), rb = find(e.b);
    auto &nd = nodes[next_node];
    nd.left = ra;
    nd.right = rb;
    nd.distance = e.w;
    nd.size = nodes[ra].size + nodes[rb].size;
    uf[ra] = uf[rb] = next_node;
    ++next_node;
  }
  const int root = 2 * n - 2;

  auto leaves_of = [&](int node, std::vector<int> &out) {
    std::vector<int> stack = {node};
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      if (x < n)
        out.push_back(x);
      else {
        stack.push_back(nodes[x].left);
        stack.push_back(nodes[x].right);
      }
    }
  };
  // Children of a node after collapsing descendants merged at the same
  // distance.
  auto effective_children = [&](int node) {
    std::vector<int> out, stack = {nodes[node].left, nodes[node].right};
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      if (x >= n && nodes[x].distance == nodes[node].distance) {
        stack.push_back(nodes[x].left);
        stack.push_back(nodes[x].right);
      } else {
        out.push_back(x);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  std::vector<detail::CondensedCluster> clusters(1);
  std::vector<int> point_cluster(n, 0);
  // Work items: (single-linkage node, condensed cluster it belongs to).
  std::vector<std::pair<int, int>> work = {{root, 0}};
  while (!work.empty()) {
    auto [node, cl] = work.back();
    work.pop_back();
    if (node < n) {
      point_cluster[node] = cl;
      continue;
    }
    const double lambda = detail::to_lambda(nodes[node].distance);
    const auto kids = effective_children(node);
    std::vector<int> big;
    for (int k: kids)
      if (nodes[k].size >= min_cluster_size)
        big.push_back(k);
    for (int k: kids) {
      if (nodes[k].size >= min_cluster_size)
        continue;
      std::vector<int> pts;
      leaves_of(k, pts);
      for (int p: pts) {
        point_cluster[p] = cl;
        clusters[cl].stability += lambda - clusters[cl].lambda_birth;
      }
    }
    if (big.size() == 1) {
      work.emplace_back(big[0], cl);
    } else {
      for (int k: big) {
        const int id = static_cast<int>(clusters.size());
        clusters.push_back({cl, lambda, 0.0, {}});
        clusters[cl].children.push_back(id);
        clusters[cl].stability += (lambda - clusters[cl].lambda_birth) * nodes[k].size;
        work.emplace_back(k, id);
      }
    }
  }

  // Excess of mass, children before parents (ids grow with depth).
  const int nc = static_cast<int>(clusters.size());
  std::vector<char> selected(nc, 0);
  std::vector<double> total(nc, 0.0);
  for (int c = nc - 1; c >= 1; --c) {
    double children = 0.0;
    for (int k: clusters[c].children)
      children += total[k];
    if (!clusters[c].children.empty() && children > clusters[c].stability) {
      total[c] = children;
    } else {
      total[c] = clusters[c].stability;
      selected[c] = 1;
      std::vector<int> stack(clusters[c].children.begin(), clusters[c].children.end());
      while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        selected[x] = 0;
        stack.insert(stack.end(), clusters[x].children.begin(), clusters[x].children.end());
      }
    }
  }
  std::vector<int> label_of(nc, -1);
  int next_label = 0;
  for (int c = 1; c < nc; ++c)
    if (selected[c])
      label_of[c] = next_label++;
  for (int p = 0; p < n; ++p) {
    for (int c = point_cluster[p]; c > 0; c = clusters[c].parent)
      if (selected[c]) {
        labels[p] = label_of[c];
        break;
      }
  }
  // Stable numbering: by smallest member index.
  std::vector<int> first(next_label, n);
  for (int p = 0; p < n; ++p)
    if (labels[p] >= 0)
      first[labels[p]] = std::min(first[labels[p]], p);
  std::vector<int> order(next_label);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return first[a] < first[b]; });
  std::vector<int> renum(next_label);
  for (int i = 0; i < next_label; ++i)
    renum[order[i]] = i;
  for (auto &l: labels)
    if (l >= 0)
      l = renum[l];
  return labels;
}

} // namespace onco::dataset

#endif // ONCOGAT_DATASET_CLUSTER_HPP
