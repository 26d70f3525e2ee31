//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_CHEM_CANON_HPP
#define ONCOGAT_CHEM_CANON_HPP

#include <algorithm>
#include <array>
#include <numeric>
#include <tuple>
#include <vector>

#include "oncogat/chem/molecule.hpp"

namespace onco::chem {

namespace detail {

using Invariant = std::array<int, 8>;

inline Invariant atom_invariant(const Atom &a, bool with_stereo) {
  return {a.element,
          a.degree,
          a.total_h(),
          a.formal_charge,
          a.is_aromatic ? 1 : 0,
          a.in_ring ? 1 : 0,
          0,
          with_stereo ? static_cast<int>(a.chirality) : 0};
}

inline int bond_code(const Bond &b, bool with_stereo) {
  return bond_order_code(b.order) * 3 +
         (with_stereo ? static_cast<int>(b.stereo) : 0);
}

// Dense ranks (0..k-1) of arbitrary comparable keys.
template <class Key>
std::vector<int> dense_ranks(const std::vector<Key> &keys) {
  std::vector<int> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int l, int r) { return keys[l] < keys[r]; });
  std::vector<int> ranks(keys.size());
  int r = -1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || keys[order[i - 1]] < keys[order[i]])
      ++r;
    ranks[order[i]] = r;
  }
  return ranks;
}

inline int count_classes(const std::vector<int> &ranks) {
  return ranks.empty() ? 0 : *std::max_element(ranks.begin(), ranks.end()) + 1;
}

} // namespace detail

// Iterative neighbourhood refinement: each round re-ranks atoms by
// (own rank, sorted multiset of (neighbour rank, bond code)) until the
// partition stops splitting.
inline std::vector<int> refine_ranks(const Molecule &mol,
                                     std::vector<int> ranks, bool with_stereo) {
  using Key = std::pair<int, std::vector<std::pair<int, int>>>;
  int classes = detail::count_classes(ranks);
  const int n = static_cast<int>(mol.size());
  while (classes < n) {
    std::vector<Key> keys(n);
    for (int u = 0; u < n; ++u) {
      keys[u].first = ranks[u];
      for (int bi: mol.adjacency[u])
        keys[u].second.emplace_back(
            ranks[mol.bonds[bi].other(u)],
            detail::bond_code(mol.bonds[bi], with_stereo));
      std::sort(keys[u].second.begin(), keys[u].second.end());
    }
    auto next = detail::dense_ranks(keys);
    const int next_classes = detail::count_classes(next);
    ranks = std::move(next);
    if (next_classes == classes)
      break;
    classes = next_classes;
  }
  return ranks;
}

// Symmetry classes: refined ranks before tie-breaking. Equal values mark
// atoms the refinement cannot tell apart.
inline std::vector<int> symmetry_classes(const Molecule &mol,
                                         bool with_stereo = false) {
  std::vector<detail::Invariant> inv(mol.size());
  for (std::size_t i = 0; i < mol.size(); ++i)
    inv[i] = detail::atom_invariant(mol.atoms[i], with_stereo);
  return refine_ranks(mol, detail::dense_ranks(inv), with_stereo);
}

// Canonical ranks: a permutation of 0..n-1. Remaining ties are broken by
// promoting one member of the lowest tied class and refining again.
inline std::vector<int> compute_canonical_ranks(const Molecule &mol) {
  auto ranks = symmetry_classes(mol, true);
  const int n = static_cast<int>(mol.size());
  while (detail::count_classes(ranks) < n) {
    std::vector<int> count(n, 0);
    for (int r: ranks)
      ++count[r];
    int tied = 0;
    while (count[tied] < 2)
      ++tied;
    int chosen = -1;
    for (int u = 0; u < n; ++u)
      if (ranks[u] == tied) {
        chosen = u;
        break;
      }
    for (int u = 0; u < n; ++u)
      ranks[u] = 2 * ranks[u] + (ranks[u] == tied && u != chosen ? 1 : 0);
    ranks = refine_ranks(mol, detail::dense_ranks(ranks), true);
  }
  return ranks;
}

// Parity of the permutation taking `from` to `to` (same elements).
inline bool odd_permutation(std::vector<int> from, const std::vector<int> &to) {
  bool odd = false;
  for (std::size_t i = 0; i < to.size(); ++i) {
    if (from[i] == to[i])
      continue;
    auto it = std::find(from.begin() + i + 1, from.end(), to[i]);
    if (it == from.end())
      return false;
    std::iter_swap(from.begin() + i, it);
    odd = !odd;
  }
  return odd;
}

inline Chirality invert(Chirality c) {
  return c == Chirality::cw ? Chirality::ccw
         : c == Chirality::ccw ? Chirality::cw
                               : c;
}

// Re-expresses tetrahedral and double-bond stereo relative to neighbours
// ordered by symmetry class, so the flags do not depend on input atom order.
// Stereo that the classes cannot anchor (tied substituents) is dropped.
inline void normalize_stereo(Molecule &mol) {
  const auto cls = symmetry_classes(mol, false);
  const int n = static_cast<int>(mol.size());
  mol.stereo_order.resize(n);
  for (int u = 0; u < n; ++u) {
    auto &atom = mol.atoms[u];
    auto &order = mol.stereo_order[u];
    if (atom.chirality == Chirality::none || order.size() < 3) {
      atom.chirality = Chirality::none;
      order.clear();
      continue;
    }
    auto key = [&](int v) { return v < 0 ? -1 : cls[v]; };
    auto sorted = order;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [&](int l, int r) { return key(l) < key(r); });
    bool tie = false;
    for (std::size_t i = 1; i < sorted.size(); ++i)
      tie |= key(sorted[i - 1]) == key(sorted[i]);
    if (tie) {
      atom.chirality = Chirality::none;
      order.clear();
      continue;
    }
    if (odd_permutation(order, sorted))
      atom.chirality = invert(atom.chirality);
    order = std::move(sorted);
  }

  for (auto &bond: mol.bonds) {
    if (bond.stereo == BondStereo::none)
      continue;
    bool ok = bond.order == BondOrder::double_;
    bool flip = false;
    auto pick = [&](int end, int other, int current) {
      int best = -1, second = -1;
      for (int bi: mol.adjacency[end]) {
        int v = mol.bonds[bi].other(end);
        if (v == other)
          continue;
        if (best < 0 || cls[v] > cls[best]) {
          second = best;
          best = v;
        } else if (second < 0 || cls[v] > cls[second]) {
          second = v;
        }
      }
      if (best < 0 || (second >= 0 && cls[second] == cls[best])) {
        ok = false;
        return -1;
      }
      if (best != current)
        flip = !flip;
      return best;
    };
    const int ra = pick(bond.a, bond.b, bond.stereo_ref_a);
    const int rb = pick(bond.b, bond.a, bond.stereo_ref_b);
    if (!ok) {
      bond.stereo = BondStereo::none;
      bond.stereo_ref_a = bond.stereo_ref_b = -1;
      continue;
    }
    bond.stereo_ref_a = ra;
    bond.stereo_ref_b = rb;
    if (flip)
      bond.stereo =
          bond.stereo == BondStereo::cis ? BondStereo::trans : BondStereo::cis;
  }
}

} // namespace onco::chem

#endif // ONCOGAT_CHEM_CANON_HPP
