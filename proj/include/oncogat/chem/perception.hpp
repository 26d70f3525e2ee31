//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_CHEM_PERCEPTION_HPP
#define ONCOGAT_CHEM_PERCEPTION_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "oncogat/chem/canon.hpp"
#include "oncogat/chem/charges.hpp"
#include "oncogat/chem/element.hpp"
#include "oncogat/chem/molecule.hpp"
#include "oncogat/chem/rings.hpp"
#include "oncogat/core/error.hpp"

namespace onco::chem {

inline int bond_valence_sum(const Molecule &mol, int u) {
  int s = 0;
  for (int bi: mol.adjacency[u])
    s += bond_valence(mol.bonds[bi].order);
  return s;
}

// Hydrogen count a SMILES reader infers for an unbracketed atom. Aromatic
// atoms reserve one valence unit for the pi bond and only use the lowest
// valence of the element.
inline int default_hydrogens(const Molecule &mol, int u,
                             bool count_explicit = true) {
  const auto &atom = mol.atoms[u];
  const auto valences = allowed_valences(atom.element, atom.formal_charge);
  if (valences.empty())
    return 0;
  const int used =
      bond_valence_sum(mol, u) + (count_explicit ? atom.explicit_h : 0);
  if (atom.is_aromatic) {
    const int need = used + 1;
    return need <= valences.front() ? valences.front() - need : 0;
  }
  for (int v: valences)
    if (v >= used)
      return v - used;
  return -1;
}

namespace detail {

inline bool needs_pi_bond(const Molecule &mol, int u) {
  const auto &atom = mol.atoms[u];
  const auto allowed = allowed_valences(atom.element, atom.formal_charge);
  if (allowed.empty())
    return false;
  const int used = bond_valence_sum(mol, u) + atom.total_h();
  for (int v: allowed)
    if (v == used)
      return false;
  for (int v: allowed)
    if (v == used + 1)
      return true;
  return false;
}

inline bool match_pi(const Molecule &mol, const std::vector<char> &needy,
                     std::vector<int> &mate, long &budget) {
  if (--budget < 0)
    return false;
  // Most constrained unmatched atom first.
  int pick = -1, pick_options = 1 << 30;
  const int n = static_cast<int>(mol.size());
  for (int u = 0; u < n; ++u) {
    if (!needy[u] || mate[u] >= 0)
      continue;
    int options = 0;
    for (int bi: mol.adjacency[u]) {
      const auto &b = mol.bonds[bi];
      int v = b.other(u);
      options += b.order == BondOrder::aromatic && needy[v] && mate[v] < 0;
    }
    if (options < pick_options) {
      pick = u;
      pick_options = options;
    }
  }
  if (pick < 0)
    return true;
  if (pick_options == 0)
    return false;
  for (int bi: mol.adjacency[pick]) {
    const auto &b = mol.bonds[bi];
    int v = b.other(pick);
    if (b.order != BondOrder::aromatic || !needy[v] || mate[v] >= 0)
      continue;
    mate[pick] = v;
    mate[v] = pick;
    if (match_pi(mol, needy, mate, budget))
      return true;
    mate[pick] = mate[v] = -1;
  }
  return false;
}

} // namespace detail

// Assigns alternating double bonds to aromatic bonds. Returns per-bond
// Kekule orders (1, 2 or 3) or throws ValenceViolation naming the first
// atom left without a partner.
inline std::vector<int> kekulize(const Molecule &mol) {
  const int n = static_cast<int>(mol.size());
  std::vector<char> needy(n, 0);
  for (int u = 0; u < n; ++u)
    needy[u] = mol.atoms[u].is_aromatic && detail::needs_pi_bond(mol, u);
  std::vector<int> mate(n, -1);
  long budget = 200000;
  if (!detail::match_pi(mol, needy, mate, budget)) {
    for (int u = 0; u < n; ++u)
      if (needy[u])
        throw ParseError("ValenceViolation",
                         "cannot assign a Kekule structure to aromatic atom " +
                             std::to_string(u),
                         mol.atoms[u].source_offset);
  }
  std::vector<int> orders(mol.bonds.size());
  for (std::size_t i = 0; i < mol.bonds.size(); ++i) {
    const auto &b = mol.bonds[i];
    if (b.order == BondOrder::aromatic)
      orders[i] = mate[b.a] == b.b ? 2 : 1;
    else
      orders[i] = bond_order_code(b.order);
  }
  return orders;
}

// Every atom with a valence model must land exactly on an allowed valence.
inline void check_valences(const Molecule &mol,
                           const std::vector<int> &kekule_orders) {
  for (int u = 0; u < static_cast<int>(mol.size()); ++u) {
    const auto &atom = mol.atoms[u];
    const auto allowed = allowed_valences(atom.element, atom.formal_charge);
    if (!has_valence_model(atom.element))
      continue;
    int used = atom.total_h();
    for (int bi: mol.adjacency[u])
      used += kekule_orders[bi];
    if (std::find(allowed.begin(), allowed.end(), used) == allowed.end())
      throw ParseError("ValenceViolation",
                       "atom " + std::to_string(u) + " (" +
                           std::string(element_symbol(atom.element)) +
                           ") has valence " + std::to_string(used),
                       atom.source_offset);
  }
}

namespace detail {

// Pi electrons an atom donates to `ring`, or -1 if it breaks conjugation.
inline int huckel_electrons(const Molecule &mol,
                            const std::vector<int> &kekule_orders,
                            const std::vector<char> &in_this_ring, int u) {
  const auto &atom = mol.atoms[u];
  int doubles_in = 0, doubles_ring_exo = 0, doubles_exo_hetero = 0,
      doubles_exo_other = 0, triples = 0;
  for (int bi: mol.adjacency[u]) {
    const int v = mol.bonds[bi].other(u);
    if (kekule_orders[bi] == 3)
      ++triples;
    if (kekule_orders[bi] != 2)
      continue;
    if (in_this_ring[v])
      ++doubles_in;
    else if (mol.atoms[v].in_ring)
      ++doubles_ring_exo;
    else if (mol.atoms[v].element == 7 || mol.atoms[v].element == 8 ||
             mol.atoms[v].element == 16)
      ++doubles_exo_hetero;
    else
      ++doubles_exo_other;
  }
  if (triples || doubles_exo_other)
    return -1;
  if (doubles_in + doubles_ring_exo == 1)
    return 1;
  if (doubles_in + doubles_ring_exo > 1)
    return -1;
  if (doubles_exo_hetero)
    return 0;
  switch (atom.element) {
  case 6:
    if (atom.formal_charge == -1)
      return 2;
    if (atom.formal_charge == 1)
      return 0;
    return -1;
  case 5:
    return atom.formal_charge == 0 ? 0 : -1;
  case 7:
  case 15:
    return (atom.formal_charge == 0 && atom.degree + atom.total_h() == 3) ? 2
                                                                           : -1;
  case 8:
  case 16:
  case 34:
    return (atom.formal_charge == 0 && atom.degree + atom.total_h() == 2) ? 2
                                                                           : -1;
  default:
    return -1;
  }
}

inline bool huckel_aromatic(const Molecule &mol,
                            const std::vector<int> &kekule_orders,
                            const std::vector<int> &ring_atoms) {
  std::vector<char> in_ring(mol.size(), 0);
  for (int u: ring_atoms)
    in_ring[u] = 1;
  int electrons = 0;
  for (int u: ring_atoms) {
    const int e = huckel_electrons(mol, kekule_orders, in_ring, u);
    if (e < 0)
      return false;
    electrons += e;
  }
  return electrons >= 2 && (electrons - 2) % 4 == 0;
}

} // namespace detail

// Aromatises Kekule-drawn rings (and fused ring pairs) with 4n+2 pi
// electrons. Lowercase input is already flagged by the parser.
inline void perceive_huckel(Molecule &mol, const std::vector<int> &kekule) {
  std::vector<std::vector<int>> candidates;
  for (const auto &ring: mol.rings)
    candidates.push_back(ring);
  for (std::size_t i = 0; i < mol.rings.size(); ++i)
    for (std::size_t j = i + 1; j < mol.rings.size(); ++j) {
      std::vector<int> a = mol.rings[i], b = mol.rings[j];
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      std::vector<int> shared, merged;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                            std::back_inserter(shared));
      if (shared.size() != 2)
        continue;
      std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                     std::back_inserter(merged));
      candidates.push_back(merged);
    }

  bool changed = true;
  std::vector<char> aromatic_ring(candidates.size(), 0);
  while (changed) {
    changed = false;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (aromatic_ring[c])
        continue;
      const auto &ring = candidates[c];
      bool all_flagged = true;
      for (int u: ring)
        all_flagged &= mol.atoms[u].is_aromatic;
      if (all_flagged)
        continue;
      if (!detail::huckel_aromatic(mol, kekule, ring))
        continue;
      aromatic_ring[c] = 1;
      changed = true;
      std::vector<char> member(mol.size(), 0);
      for (int u: ring) {
        member[u] = 1;
        mol.atoms[u].is_aromatic = true;
      }
      for (auto &b: mol.bonds)
        if (member[b.a] && member[b.b] && b.same_ring &&
            b.order != BondOrder::triple)
          b.order = BondOrder::aromatic;
    }
  }
  // A ring bond is only aromatic when it sits in an all-aromatic ring.
  for (auto &b: mol.bonds) {
    if (b.order != BondOrder::aromatic)
      continue;
    bool in_aromatic_ring = false;
    for (const auto &ring: mol.rings) {
      bool all = true, has_a = false, has_b = false;
      for (int u: ring) {
        all &= mol.atoms[u].is_aromatic;
        has_a |= u == b.a;
        has_b |= u == b.b;
      }
      in_aromatic_ring |= all && has_a && has_b;
    }
    if (!in_aromatic_ring && !(mol.atoms[b.a].is_aromatic &&
                               mol.atoms[b.b].is_aromatic && b.same_ring))
      b.order = kekule[&b - mol.bonds.data()] == 2 ? BondOrder::double_
                                                    : BondOrder::single;
  }
}

inline Hybridization infer_hybridization(const Molecule &mol, int u) {
  const auto &atom = mol.atoms[u];
  if (atom.element == 1 || !has_valence_model(atom.element) ||
      (mol.adjacency[u].empty() && atom.total_h() == 0))
    return Hybridization::other;
  int doubles = 0, triples = 0;
  bool aromatic = atom.is_aromatic;
  for (int bi: mol.adjacency[u]) {
    switch (mol.bonds[bi].order) {
    case BondOrder::double_:
      ++doubles;
      break;
    case BondOrder::triple:
      ++triples;
      break;
    case BondOrder::aromatic:
      aromatic = true;
      break;
    default:
      break;
    }
  }
  if (triples || doubles >= 2)
    return Hybridization::sp;
  if (doubles == 1 || aromatic)
    return Hybridization::sp2;
  return Hybridization::sp3;
}

// A bond is conjugated if it is aromatic or each end carries another
// double/aromatic bond.
inline bool infer_conjugation(const Molecule &mol, int bi) {
  const auto &b = mol.bonds[bi];
  if (b.order == BondOrder::aromatic)
    return true;
  auto other_pi = [&](int end) {
    for (int bj: mol.adjacency[end])
      if (bj != bi && (mol.bonds[bj].order == BondOrder::double_ ||
                       mol.bonds[bj].order == BondOrder::aromatic))
        return true;
    return false;
  };
  return other_pi(b.a) && other_pi(b.b);
}

struct PerceptionInput {
  // Atoms whose hydrogen count is inferred (unbracketed SMILES atoms,
  // MOL atoms without explicit H).
  std::vector<char> infer_h;
};

// Runs every derived-property pass on a freshly built graph: degrees,
// rings, implicit hydrogens, Kekule/valence validation, Hueckel
// aromaticity, hybridisation, H-bond flags, conjugation, stereo
// normalisation, canonical ranks and partial charges.
inline void finalize_molecule(Molecule &mol, const PerceptionInput &in) {
  rebuild_adjacency(mol);
  const int n = static_cast<int>(mol.size());
  for (int u = 0; u < n; ++u) {
    int heavy = 0;
    for (int bi: mol.adjacency[u])
      heavy += mol.atoms[mol.bonds[bi].other(u)].element != 1;
    mol.atoms[u].degree = heavy;
  }
  perceive_rings(mol);

  // Aromatic atoms outside rings cannot stay aromatic.
  for (auto &b: mol.bonds)
    if (b.order == BondOrder::aromatic && !b.same_ring)
      b.order = BondOrder::single;
  for (int u = 0; u < n; ++u)
    if (mol.atoms[u].is_aromatic && !mol.atoms[u].in_ring)
      throw ParseError("ValenceViolation",
                       "aromatic atom " + std::to_string(u) +
                           " is not in a ring",
                       mol.atoms[u].source_offset);

  for (int u = 0; u < n; ++u) {
    if (u < static_cast<int>(in.infer_h.size()) && in.infer_h[u]) {
      const int h = default_hydrogens(mol, u);
      if (h < 0)
        throw ParseError("ValenceViolation",
                         "atom " + std::to_string(u) + " (" +
                             std::string(element_symbol(mol.atoms[u].element)) +
                             ") exceeds its allowed valence",
                         mol.atoms[u].source_offset);
      mol.atoms[u].implicit_h = h;
    }
  }

  const auto kekule = kekulize(mol);
  check_valences(mol, kekule);
  perceive_huckel(mol, kekule);
  for (auto &b: mol.bonds)
    if (b.order == BondOrder::aromatic &&
        !(mol.atoms[b.a].is_aromatic && mol.atoms[b.b].is_aromatic))
      b.order = BondOrder::single;

  for (int u = 0; u < n; ++u) {
    auto &atom = mol.atoms[u];
    atom.hybridization = infer_hybridization(mol, u);
    const bool n_or_o = atom.element == 7 || atom.element == 8;
    atom.hbd = n_or_o && atom.total_h() > 0;
    atom.hba = n_or_o && atom.formal_charge <= 0;
  }
  for (int bi = 0; bi < static_cast<int>(mol.bonds.size()); ++bi)
    mol.bonds[bi].is_conjugated = infer_conjugation(mol, bi);

  // cis/trans is meaningless inside small rings.
  for (auto &b: mol.bonds) {
    if (b.stereo == BondStereo::none || !b.same_ring)
      continue;
    std::size_t smallest = 1000;
    for (const auto &ring: mol.rings) {
      bool has_a = std::find(ring.begin(), ring.end(), b.a) != ring.end();
      bool has_b = std::find(ring.begin(), ring.end(), b.b) != ring.end();
      if (has_a && has_b)
        smallest = std::min(smallest, ring.size());
    }
    if (smallest < 8)
      b.stereo = BondStereo::none;
  }
  normalize_stereo(mol);
  mol.canonical_ranks = compute_canonical_ranks(mol);

  const auto charges = gasteiger_charges(mol);
  for (int u = 0; u < n; ++u)
    mol.atoms[u].partial_charge = charges.atom[u];
}

// Relabels atoms: new index of old atom i is perm[i]. Bond list order is
// also permuted (bond_perm, optional) so downstream code cannot depend on it.
inline Molecule permute_atoms(const Molecule &mol, const std::vector<int> &perm,
                              const std::vector<int> &bond_perm = {}) {
  Molecule out;
  const int n = static_cast<int>(mol.size());
  out.source = mol.source;
  out.atoms.resize(n);
  out.stereo_order.resize(n);
  for (int i = 0; i < n; ++i) {
    out.atoms[perm[i]] = mol.atoms[i];
    if (i < static_cast<int>(mol.stereo_order.size()))
      for (int v: mol.stereo_order[i])
        out.stereo_order[perm[i]].push_back(v < 0 ? v : perm[v]);
  }
  out.bonds.resize(mol.bonds.size());
  for (std::size_t k = 0; k < mol.bonds.size(); ++k) {
    Bond b = mol.bonds[k];
    b.a = perm[b.a];
    b.b = perm[b.b];
    if (b.stereo_ref_a >= 0)
      b.stereo_ref_a = perm[b.stereo_ref_a];
    if (b.stereo_ref_b >= 0)
      b.stereo_ref_b = perm[b.stereo_ref_b];
    const std::size_t dest = bond_perm.empty() ? k : bond_perm[k];
    out.bonds[dest] = b;
  }
  if (mol.coords) {
    std::vector<Point2> c(n);
    for (int i = 0; i < n; ++i)
      c[perm[i]] = (*mol.coords)[i];
    out.coords = std::move(c);
  }
  rebuild_adjacency(out);
  out.rings = smallest_rings(out);
  out.canonical_ranks = compute_canonical_ranks(out);
  return out;
}

} // namespace onco::chem

#endif // ONCOGAT_CHEM_PERCEPTION_HPP
