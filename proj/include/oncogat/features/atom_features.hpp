//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_FEATURES_ATOM_FEATURES_HPP
#define ONCOGAT_FEATURES_ATOM_FEATURES_HPP

#include <string>
#include <vector>

#include "oncogat/chem/element.hpp"
#include "oncogat/chem/molecule.hpp"
#include "oncogat/core/error.hpp"

namespace onco::features {

// Bumped whenever any block below changes width or meaning. Checkpoints
// refuse to load graphs built under a different version.
inline constexpr int kLayoutVersion = 1;

// Atom layout, in order:
//   element one-hot Z = 1..100, then "other"       101
//   heavy degree 0..6                                7
//   formal charge -2..+2, then "other"               6
//   chirality none/cw/ccw                            3
//   total H 0..4, then "other"                       6
//   hybridisation sp/sp2/sp3/other                   4
//   aromatic, in_ring, hbd, hba, partial charge      5
inline constexpr int kElementSlots = 100;
inline constexpr int kAtomFeatureDim = (kElementSlots + 1) + 7 + 6 + 3 + 6 + 4 + 5;

// Bond layout: order single/double/triple/aromatic, conjugated, same_ring,
// stereo none/cis/trans.
inline constexpr int kBondFeatureDim = 4 + 1 + 1 + 3;

namespace detail {

struct AtomFields {
  int element = 6;
  int degree = 0;
  int charge = 0;
  chem::Chirality chirality = chem::Chirality::none;
  int hydrogens = 0;
  chem::Hybridization hybridization = chem::Hybridization::other;
  bool aromatic = false;
  bool in_ring = false;
  bool hbd = false;
  bool hba = false;
  double partial_charge = 0.0;
};

inline void encode_atom(const AtomFields &f, double *out) {
  std::fill(out, out + kAtomFeatureDim, 0.0);
  int at = 0;
  out[at + ((f.element >= 1 && f.element <= kElementSlots) ? f.element - 1 : kElementSlots)] = 1.0;
  at += kElementSlots + 1;
  out[at + std::min(std::max(f.degree, 0), 6)] = 1.0;
  at += 7;
  out[at + ((f.charge >= -2 && f.charge <= 2) ? f.charge + 2 : 5)] = 1.0;
  at += 6;
  out[at + static_cast<int>(f.chirality)] = 1.0;
  at += 3;
  out[at + ((f.hydrogens >= 0 && f.hydrogens <= 4) ? f.hydrogens : 5)] = 1.0;
  at += 6;
  out[at + static_cast<int>(f.hybridization)] = 1.0;
  at += 4;
  out[at++] = f.aromatic;
  out[at++] = f.in_ring;
  out[at++] = f.hbd;
  out[at++] = f.hba;
  out[at++] = f.partial_charge;
}

} // namespace detail

// Offsets of each block, for tests and CSV headers.
struct AtomLayout {
  static constexpr int element = 0;
  static constexpr int degree = kElementSlots + 1;
  static constexpr int charge = degree + 7;
  static constexpr int chirality = charge + 6;
  static constexpr int hydrogens = chirality + 3;
  static constexpr int hybridization = hydrogens + 6;
  static constexpr int aromatic = hybridization + 4;
  static constexpr int in_ring = aromatic + 1;
  static constexpr int hbd = aromatic + 2;
  static constexpr int hba = aromatic + 3;
  static constexpr int partial_charge = aromatic + 4;
};

inline std::vector<double> atom_feature_vector(const chem::Molecule &mol, int index) {
  if (index < 0 || index >= static_cast<int>(mol.size()))
    throw Error("IndexOutOfRange", "atom index " + std::to_string(index) + " out of range");
  const auto &a = mol.atoms[index];
  detail::AtomFields f;
  f.element = a.element;
  f.degree = a.degree;
  f.charge = a.formal_charge;
  f.chirality = a.chirality;
  f.hydrogens = a.total_h();
  f.hybridization = a.hybridization;
  f.aromatic = a.is_aromatic;
  f.in_ring = a.in_ring;
  f.hbd = a.hbd;
  f.hba = a.hba;
  f.partial_charge = a.partial_charge;
  std::vector<double> out(kAtomFeatureDim);
  detail::encode_atom(f, out.data());
  return out;
}

// Feature row of a hydrogen materialised as its own node.
inline std::vector<double> hydrogen_feature_vector(double partial_charge) {
  detail::AtomFields f;
  f.element = 1;
  f.degree = 1;
  f.partial_charge = partial_charge;
  std::vector<double> out(kAtomFeatureDim);
  detail::encode_atom(f, out.data());
  return out;
}

inline std::vector<double> bond_feature_vector(const chem::Molecule &mol, int bond) {
  if (bond < 0 || bond >= static_cast<int>(mol.bonds.size()))
    throw Error("IndexOutOfRange", "bond index " + std::to_string(bond) + " out of range");
  const auto &b = mol.bonds[bond];
  std::vector<double> out(kBondFeatureDim, 0.0);
  out[static_cast<int>(b.order)] = 1.0;
  out[4] = b.is_conjugated;
  out[5] = b.same_ring;
  out[6 + static_cast<int>(b.stereo)] = 1.0;
  return out;
}

// A plain single bond (used for materialised hydrogens).
inline std::vector<double> single_bond_feature_vector() {
  std::vector<double> out(kBondFeatureDim, 0.0);
  out[0] = 1.0;
  out[6] = 1.0;
  return out;
}

inline std::vector<std::string> atom_feature_names() {
  std::vector<std::string> names;
  for (int z = 1; z <= kElementSlots; ++z)
    names.push_back("atom_elem_" + std::string(chem::element_symbol(z)));
  names.push_back("atom_elem_other");
  for (int d = 0; d <= 6; ++d)
    names.push_back("atom_degree_" + std::to_string(d));
  for (int c = -2; c <= 2; ++c)
    names.push_back("atom_charge_" + std::to_string(c));
  names.push_back("atom_charge_other");
  for (const char *c: {"none", "cw", "ccw"})
    names.push_back(std::string("atom_chirality_") + c);
  for (int h = 0; h <= 4; ++h)
    names.push_back("atom_h_" + std::to_string(h));
  names.push_back("atom_h_other");
  for (const char *h: {"sp", "sp2", "sp3", "other"})
    names.push_back(std::string("atom_hyb_") + h);
  for (const char *f: {"aromatic", "in_ring", "hbd", "hba", "partial_charge"})
    names.push_back(std::string("atom_") + f);
  return names;
}

inline std::vector<std::string> bond_feature_names() {
  return {"bond_single",      "bond_double",   "bond_triple",  "bond_aromatic", "bond_conjugated",
          "bond_same_ring",   "bond_stereo_none", "bond_stereo_cis", "bond_stereo_trans"};
}

} // namespace onco::features

#endif // ONCOGAT_FEATURES_ATOM_FEATURES_HPP
