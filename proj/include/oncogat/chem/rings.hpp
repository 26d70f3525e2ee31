//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_CHEM_RINGS_HPP
#define ONCOGAT_CHEM_RINGS_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <queue>
#include <set>
#include <vector>

#include "oncogat/chem/molecule.hpp"

namespace onco::chem {

// All-pairs shortest path lengths in bonds (-1 when disconnected).
inline std::vector<std::vector<int>> topological_distances(const Molecule &mol) {
  const int n = static_cast<int>(mol.size());
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  std::vector<int> queue;
  queue.reserve(n);
  for (int s = 0; s < n; ++s) {
    auto &d = dist[s];
    d[s] = 0;
    queue.assign(1, s);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int u = queue[qi];
      for (int bi: mol.adjacency[u]) {
        const int v = mol.bonds[bi].other(u);
        if (d[v] < 0) {
          d[v] = d[u] + 1;
          queue.push_back(v);
        }
      }
    }
  }
  return dist;
}

namespace detail {

using BondSet = std::vector<std::uint64_t>;

inline bool bondset_reduce(std::vector<BondSet> &basis,
                           std::vector<int> &pivots, BondSet v) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const int p = pivots[i];
    if ((v[p / 64] >> (p % 64)) & 1U)
      for (std::size_t w = 0; w < v.size(); ++w)
        v[w] ^= basis[i][w];
  }
  for (std::size_t w = 0; w < v.size(); ++w) {
    if (v[w]) {
      const int bit = static_cast<int>(w * 64) + std::countr_zero(v[w]);
      basis.push_back(std::move(v));
      pivots.push_back(bit);
      return true;
    }
  }
  return false;
}

// Orders a ring's bond set into a cyclic atom sequence.
inline std::vector<int> bondset_to_cycle(const Molecule &mol,
                                         const std::vector<int> &bonds) {
  std::vector<int> cycle;
  if (bonds.empty())
    return cycle;
  std::vector<char> used(bonds.size(), 0);
  int start = std::min(mol.bonds[bonds[0]].a, mol.bonds[bonds[0]].b);
  for (int bi: bonds)
    start = std::min({start, mol.bonds[bi].a, mol.bonds[bi].b});
  cycle.push_back(start);
  int cur = start;
  for (std::size_t step = 0; step + 1 < bonds.size(); ++step) {
    int best = -1, best_k = -1;
    for (std::size_t k = 0; k < bonds.size(); ++k) {
      if (used[k])
        continue;
      const auto &b = mol.bonds[bonds[k]];
      if (b.a != cur && b.b != cur)
        continue;
      const int nxt = b.other(cur);
      if (best < 0 || nxt < best) {
        best = nxt;
        best_k = static_cast<int>(k);
      }
    }
    if (best_k < 0)
      break;
    used[best_k] = 1;
    cycle.push_back(best);
    cur = best;
  }
  return cycle;
}

} // namespace detail

// Smallest set of smallest rings as a minimum cycle basis (Horton candidate
// cycles, independence by GF(2) elimination over bond incidence). Each ring
// is a cyclic atom sequence starting at its lowest index.
inline std::vector<std::vector<int>> smallest_rings(const Molecule &mol) {
  const int n = static_cast<int>(mol.size());
  const int m = static_cast<int>(mol.bonds.size());
  if (m == 0)
    return {};

  // Cyclomatic number m - n + components.
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0)
      continue;
    std::vector<int> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int bi: mol.adjacency[u]) {
        int v = mol.bonds[bi].other(u);
        if (comp[v] < 0) {
          comp[v] = ncomp;
          stack.push_back(v);
        }
      }
    }
    ++ncomp;
  }
  const int nrings = m - n + ncomp;
  if (nrings <= 0)
    return {};

  // BFS trees from every vertex give the Horton candidates
  // P(v,x) + (x,y) + P(y,v) where the two paths share only v.
  const std::size_t words = (m + 63) / 64;
  std::vector<std::pair<int, std::vector<int>>> candidates;
  std::set<std::vector<int>> seen;
  std::vector<int> parent_bond(n), depth(n), first_hop(n);
  for (int v = 0; v < n; ++v) {
    std::fill(parent_bond.begin(), parent_bond.end(), -1);
    std::fill(depth.begin(), depth.end(), -1);
    std::vector<int> order{v};
    depth[v] = 0;
    first_hop[v] = v;
    for (std::size_t qi = 0; qi < order.size(); ++qi) {
      int u = order[qi];
      for (int bi: mol.adjacency[u]) {
        int w = mol.bonds[bi].other(u);
        if (depth[w] < 0) {
          depth[w] = depth[u] + 1;
          parent_bond[w] = bi;
          first_hop[w] = u == v ? w : first_hop[u];
          order.push_back(w);
        }
      }
    }
    for (int bi = 0; bi < m; ++bi) {
      const int x = mol.bonds[bi].a, y = mol.bonds[bi].b;
      if (depth[x] < 0 || depth[y] < 0)
        continue;
      if (parent_bond[x] == bi || parent_bond[y] == bi)
        continue;
      if (x != v && y != v && first_hop[x] == first_hop[y])
        continue;
      std::vector<int> cyc{bi};
      for (int u = x; u != v; u = mol.bonds[parent_bond[u]].other(u))
        cyc.push_back(parent_bond[u]);
      for (int u = y; u != v; u = mol.bonds[parent_bond[u]].other(u))
        cyc.push_back(parent_bond[u]);
      std::sort(cyc.begin(), cyc.end());
      if (std::adjacent_find(cyc.begin(), cyc.end()) != cyc.end())
        continue;
      if (seen.insert(cyc).second)
        candidates.emplace_back(static_cast<int>(cyc.size()), std::move(cyc));
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto &l, const auto &r) {
                     if (l.first != r.first)
                       return l.first < r.first;
                     return l.second < r.second;
                   });

  std::vector<detail::BondSet> basis;
  std::vector<int> pivots;
  std::vector<std::vector<int>> rings;
  for (const auto &[len, cyc]: candidates) {
    detail::BondSet bits(words, 0);
    for (int bi: cyc)
      bits[bi / 64] |= std::uint64_t{1} << (bi % 64);
    if (detail::bondset_reduce(basis, pivots, bits)) {
      rings.push_back(detail::bondset_to_cycle(mol, cyc));
      if (static_cast<int>(rings.size()) == nrings)
        break;
    }
  }
  return rings;
}

// Sets Molecule::rings and the in_ring / same_ring flags.
inline void perceive_rings(Molecule &mol) {
  mol.rings = smallest_rings(mol);
  for (auto &a: mol.atoms)
    a.in_ring = false;
  for (auto &b: mol.bonds)
    b.same_ring = false;
  for (const auto &ring: mol.rings) {
    for (std::size_t i = 0; i < ring.size(); ++i) {
      mol.atoms[ring[i]].in_ring = true;
      const int bi = mol.bond_between(ring[i], ring[(i + 1) % ring.size()]);
      if (bi >= 0)
        mol.bonds[bi].same_ring = true;
    }
  }
}

} // namespace onco::chem

#endif // ONCOGAT_CHEM_RINGS_HPP
