//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_CHEM_MOLECULE_HPP
#define ONCOGAT_CHEM_MOLECULE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace onco::chem {

enum class Chirality : std::uint8_t { none, cw, ccw };
enum class Hybridization : std::uint8_t { sp, sp2, sp3, other };
enum class BondOrder : std::uint8_t { single, double_, triple, aromatic };
enum class BondStereo : std::uint8_t { none, cis, trans };

inline int bond_order_code(BondOrder o) {
  switch (o) {
  case BondOrder::single:
    return 1;
  case BondOrder::double_:
    return 2;
  case BondOrder::triple:
    return 3;
  case BondOrder::aromatic:
    return 4;
  }
  return 0;
}

// Valence contribution with aromatic bonds counted as 1 (the pi bond is
// accounted separately by kekulization).
inline int bond_valence(BondOrder o) {
  return o == BondOrder::aromatic ? 1 : bond_order_code(o);
}

struct Atom {
  int element = 6;
  int formal_charge = 0;
  int isotope = 0; // parsed, ignored downstream
  bool is_aromatic = false;
  Chirality chirality = Chirality::none;
  int explicit_h = 0;
  int implicit_h = 0;
  int degree = 0; // heavy-atom neighbours
  Hybridization hybridization = Hybridization::other;
  double partial_charge = 0.0;
  bool hbd = false;
  bool hba = false;
  bool in_ring = false;
  std::size_t source_offset = 0;

  int total_h() const { return explicit_h + implicit_h; }
};

struct Bond {
  int a = 0;
  int b = 0;
  BondOrder order = BondOrder::single;
  bool is_conjugated = false;
  BondStereo stereo = BondStereo::none;
  bool same_ring = false;
  // Reference substituents the cis/trans flag refers to (one per end).
  int stereo_ref_a = -1;
  int stereo_ref_b = -1;

  int other(int atom) const { return atom == a ? b : a; }
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Parsed, validated molecular graph. Built once by the parsers (or
// permute_atoms) and treated as immutable afterwards.
struct Molecule {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  std::vector<std::vector<int>> rings; // smallest set of smallest rings
  std::string source;
  std::vector<int> canonical_ranks;
  // Per-atom neighbour order that Atom::chirality refers to (-1 = implicit H
  // or lone pair). Normalised to ascending canonical invariant.
  std::vector<std::vector<int>> stereo_order;
  std::optional<std::vector<Point2>> coords;
  // Incident bond indices per atom.
  std::vector<std::vector<int>> adjacency;

  std::size_t size() const { return atoms.size(); }

  int bond_between(int u, int v) const {
    for (int bi: adjacency[u])
      if (bonds[bi].other(u) == v)
        return bi;
    return -1;
  }

  std::vector<int> neighbors(int u) const {
    std::vector<int> out;
    out.reserve(adjacency[u].size());
    for (int bi: adjacency[u])
      out.push_back(bonds[bi].other(u));
    return out;
  }

  int heavy_atom_count() const {
    int n = 0;
    for (const auto &a: atoms)
      n += a.element != 1;
    return n;
  }
};

inline void rebuild_adjacency(Molecule &mol) {
  mol.adjacency.assign(mol.atoms.size(), {});
  for (int i = 0; i < static_cast<int>(mol.bonds.size()); ++i) {
    mol.adjacency[mol.bonds[i].a].push_back(i);
    mol.adjacency[mol.bonds[i].b].push_back(i);
  }
}

} // namespace onco::chem

#endif // ONCOGAT_CHEM_MOLECULE_HPP
