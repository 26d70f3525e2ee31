//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_FEATURES_DESCRIPTORS_HPP
#define ONCOGAT_FEATURES_DESCRIPTORS_HPP

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "oncogat/chem/element.hpp"
#include "oncogat/chem/molecule.hpp"
#include "oncogat/chem/rings.hpp"

namespace onco::features {

// Pharmacophore point types. An atom may carry several.
enum class PharmType : int { donor, acceptor, positive, negative, aromatic, lipophilic };

inline constexpr int kPharmTypes = 6;
inline constexpr int kPharmBins = 10;
inline constexpr int kPharmPairs = kPharmTypes * (kPharmTypes + 1) / 2;
inline constexpr int kPharmacophoreDim = kPharmPairs * kPharmBins;

inline constexpr std::array<const char *, kPharmTypes> kPharmTypeNames = {"D", "A", "P",
                                                                          "N", "R", "L"};

inline std::array<bool, kPharmTypes> pharmacophore_types(const chem::Molecule &mol, int u) {
  const auto &a = mol.atoms[u];
  std::array<bool, kPharmTypes> t{};
  const bool n_or_o = a.element == 7 || a.element == 8;
  t[0] = a.hbd;
  t[1] = a.hba;
  t[2] = n_or_o && a.formal_charge > 0;
  t[3] = n_or_o && a.formal_charge < 0;
  t[4] = a.is_aromatic;
  if (a.element == 17 || a.element == 35 || a.element == 53) {
    t[5] = true;
  } else if (a.element == 6) {
    t[5] = true;
    for (int v: mol.neighbors(u))
      if (mol.atoms[v].element == 7 || mol.atoms[v].element == 8)
        t[5] = false;
  }
  return t;
}

// Index of the unordered type pair (s <= t) in row-major upper-triangle order.
inline int pharmacophore_pair_index(int s, int t) {
  if (s > t)
    std::swap(s, t);
  return s * kPharmTypes - s * (s - 1) / 2 + (t - s);
}

// Counts of typed atom pairs per topological distance bin 1..10 (longer
// distances clamp to the last bin). Heavy atoms only.
inline std::vector<double> pharmacophore_pairs(const chem::Molecule &mol) {
  std::vector<double> out(kPharmacophoreDim, 0.0);
  const int n = static_cast<int>(mol.size());
  const auto dist = chem::topological_distances(mol);
  std::vector<std::array<bool, kPharmTypes>> types(n);
  for (int u = 0; u < n; ++u)
    types[u] = pharmacophore_types(mol, u);
  for (int i = 0; i < n; ++i) {
    if (mol.atoms[i].element == 1)
      continue;
    for (int j = i + 1; j < n; ++j) {
      if (mol.atoms[j].element == 1 || dist[i][j] < 1)
        continue;
      const int bin = std::min(dist[i][j], kPharmBins) - 1;
      for (int s = 0; s < kPharmTypes; ++s) {
        if (!types[i][s])
          continue;
        for (int t = 0; t < kPharmTypes; ++t)
          if (types[j][t])
            out[pharmacophore_pair_index(s, t) * kPharmBins + bin] += 1.0;
      }
    }
  }
  return out;
}

inline std::vector<std::string> pharmacophore_names() {
  std::vector<std::string> names(kPharmacophoreDim);
  for (int s = 0; s < kPharmTypes; ++s)
    for (int t = s; t < kPharmTypes; ++t)
      for (int b = 0; b < kPharmBins; ++b)
        names[pharmacophore_pair_index(s, t) * kPharmBins + b] =
            std::string("ph_") + kPharmTypeNames[s] + kPharmTypeNames[t] + "_" + std::to_string(b + 1);
  return names;
}

inline constexpr int kDescriptorDim = 12;

inline const std::array<const char *, kDescriptorDim> &descriptor_names() {
  static const std::array<const char *, kDescriptorDim> names = {
      "mol_weight",     "heavy_atoms",   "rings",          "aromatic_rings",
      "hbd",            "hba",           "rotatable_bonds", "formal_charge",
      "fraction_sp3_c", "halogens",      "heteroatoms",    "mean_abs_partial_charge"};
  return names;
}

inline bool is_ring_bond(const chem::Molecule &mol, int bi) {
  const auto &b = mol.bonds[bi];
  for (const auto &r: mol.rings)
    for (std::size_t i = 0; i < r.size(); ++i) {
      const int x = r[i], y = r[(i + 1) % r.size()];
      if ((x == b.a && y == b.b) || (x == b.b && y == b.a))
        return true;
    }
  return false;
}

inline std::vector<double> physchem_descriptors(const chem::Molecule &mol) {
  double weight = 0.0, abs_charge = 0.0;
  int heavy = 0, hbd = 0, hba = 0, charge = 0, carbons = 0, sp3_carbons = 0;
  int halogens = 0, hetero = 0;
  // Canonical order keeps floating-point sums independent of atom order.
  std::vector<int> order(mol.size());
  for (std::size_t i = 0; i < mol.size(); ++i)
    order[i] = static_cast<int>(i);
  if (mol.canonical_ranks.size() == mol.size())
    for (std::size_t i = 0; i < mol.size(); ++i)
      order[mol.canonical_ranks[i]] = static_cast<int>(i);
  for (int u: order) {
    const auto &a = mol.atoms[u];
    weight += chem::kAtomicMass[a.element] + a.total_h() * chem::kAtomicMass[1];
    charge += a.formal_charge;
    if (a.element == 1)
      continue;
    ++heavy;
    hbd += a.hbd;
    hba += a.hba;
    abs_charge += std::abs(a.partial_charge);
    if (a.element == 6) {
      ++carbons;
      sp3_carbons += a.hybridization == chem::Hybridization::sp3;
    } else {
      ++hetero;
    }
    halogens += chem::is_halogen(a.element);
  }
  int aromatic_rings = 0;
  for (const auto &r: mol.rings) {
    bool all = true;
    for (int u: r)
      all = all && mol.atoms[u].is_aromatic;
    aromatic_rings += all;
  }
  int rotatable = 0;
  for (int bi = 0; bi < static_cast<int>(mol.bonds.size()); ++bi) {
    const auto &b = mol.bonds[bi];
    if (b.order != chem::BondOrder::single || is_ring_bond(mol, bi))
      continue;
    if (mol.atoms[b.a].degree > 1 && mol.atoms[b.b].degree > 1)
      ++rotatable;
  }
  return {weight,
          static_cast<double>(heavy),
          static_cast<double>(mol.rings.size()),
          static_cast<double>(aromatic_rings),
          static_cast<double>(hbd),
          static_cast<double>(hba),
          static_cast<double>(rotatable),
          static_cast<double>(charge),
          carbons == 0 ? 0.0 : static_cast<double>(sp3_carbons) / carbons,
          static_cast<double>(halogens),
          static_cast<double>(hetero),
          heavy == 0 ? 0.0 : abs_charge / heavy};
}

inline constexpr int kGlobalFeatureDim = kDescriptorDim + kPharmacophoreDim;

// Descriptors followed by the pharmacophore counts.
inline std::vector<double> global_features(const chem::Molecule &mol) {
  auto out = physchem_descriptors(mol);
  const auto ph = pharmacophore_pairs(mol);
  out.insert(out.end(), ph.begin(), ph.end());
  return out;
}

inline std::vector<std::string> global_feature_names() {
  std::vector<std::string> names(descriptor_names().begin(), descriptor_names().end());
  const auto ph = pharmacophore_names();
  names.insert(names.end(), ph.begin(), ph.end());
  return names;
}

} // namespace onco::features

#endif // ONCOGAT_FEATURES_DESCRIPTORS_HPP
