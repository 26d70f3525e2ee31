//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_FEATURES_GRAPH_HPP
#define ONCOGAT_FEATURES_GRAPH_HPP

#include <vector>

#include "oncogat/chem/charges.hpp"
#include "oncogat/chem/molecule.hpp"
#include "oncogat/core/matrix.hpp"
#include "oncogat/features/atom_features.hpp"
#include "oncogat/features/descriptors.hpp"

namespace onco::features {

struct FeaturizeOptions {
  // Materialise every hydrogen as its own node, appended after the
  // molecule's atoms in order of the atom they hang off.
  bool explicit_h = false;
};

// Model input. Edge 2k is bond k read a->b and edge 2k+1 its reverse twin.
// h_groups[g] lists node g itself followed by its materialised hydrogens;
// groups partition all nodes and group g belongs to heavy atom g.
struct FeaturizedGraph {
  Matrix node_features;  // n x kAtomFeatureDim
  Matrix edge_features;  // 2m x kBondFeatureDim
  std::vector<int> edge_src;
  std::vector<int> edge_dst;
  std::vector<double> global_features; // raw, unscaled
  int n_heavy = 0;
  std::vector<std::vector<int>> h_groups;
  bool explicit_h = false;
  int layout_version = kLayoutVersion;

  int n_nodes() const { return static_cast<int>(node_features.rows()); }
  int n_edges() const { return static_cast<int>(edge_src.size()); }
};

inline FeaturizedGraph featurize(const chem::Molecule &mol, const FeaturizeOptions &opt = {}) {
  FeaturizedGraph g;
  g.explicit_h = opt.explicit_h;
  const int n = static_cast<int>(mol.size());
  const int m = static_cast<int>(mol.bonds.size());

  int n_h = 0;
  chem::ChargeResult q;
  if (opt.explicit_h) {
    q = chem::gasteiger_charges(mol);
    for (const auto &a: mol.atoms)
      n_h += a.total_h();
  }

  g.node_features.resize(n + n_h, kAtomFeatureDim);
  g.edge_features.resize(2 * (m + n_h), kBondFeatureDim);
  g.h_groups.resize(n);
  for (int u = 0; u < n; ++u) {
    const auto row = atom_feature_vector(mol, u);
    g.node_features.row(u) = Eigen::Map<const Eigen::RowVectorXd>(row.data(), kAtomFeatureDim);
    g.h_groups[u].push_back(u);
  }
  for (int k = 0; k < m; ++k) {
    const auto row = bond_feature_vector(mol, k);
    const Eigen::Map<const Eigen::RowVectorXd> r(row.data(), kBondFeatureDim);
    g.edge_features.row(2 * k) = r;
    g.edge_features.row(2 * k + 1) = r;
    g.edge_src.push_back(mol.bonds[k].a);
    g.edge_dst.push_back(mol.bonds[k].b);
    g.edge_src.push_back(mol.bonds[k].b);
    g.edge_dst.push_back(mol.bonds[k].a);
  }
  if (opt.explicit_h) {
    int next = n, e = 2 * m;
    const auto bond = single_bond_feature_vector();
    const Eigen::Map<const Eigen::RowVectorXd> br(bond.data(), kBondFeatureDim);
    for (int u = 0; u < n; ++u) {
      const auto hrow = hydrogen_feature_vector(q.hydrogen[u]);
      for (int k = 0; k < mol.atoms[u].total_h(); ++k, ++next) {
        g.node_features.row(next) = Eigen::Map<const Eigen::RowVectorXd>(hrow.data(), kAtomFeatureDim);
        g.h_groups[u].push_back(next);
        g.edge_features.row(e++) = br;
        g.edge_features.row(e++) = br;
        g.edge_src.push_back(u);
        g.edge_dst.push_back(next);
        g.edge_src.push_back(next);
        g.edge_dst.push_back(u);
      }
    }
  }
  g.n_heavy = n;
  g.global_features = global_features(mol);
  return g;
}

} // namespace onco::features

#endif // ONCOGAT_FEATURES_GRAPH_HPP
