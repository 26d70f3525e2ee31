//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_TESTS_ECFP_ORACLE_HPP
#define ONCOGAT_TESTS_ECFP_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <tuple>
#include <vector>

#include "oncogat/chem/molecule.hpp"
#include "oncogat/core/hash.hpp"

namespace onco::testing {

// Brute-force circular-environment enumerator. Identifiers are computed by
// direct recursion on (atom, radius) and atom sets by a fresh BFS per
// environment; nothing is shared with the iterative implementation except
// the hash primitive and the invariant tuple.
class EcfpOracle {
public:
  explicit EcfpOracle(const chem::Molecule &mol) : mol_(mol) { }

  std::uint64_t id(int atom, int radius) {
    const auto key = std::pair(atom, radius);
    if (auto it = memo_.find(key); it != memo_.end())
      return it->second;
    std::uint64_t value;
    const auto &a = mol_.atoms[atom];
    if (radius == 0) {
      StableHash h;
      h.add(a.element).add(a.degree).add(a.total_h()).add(a.formal_charge);
      h.add(a.in_ring ? 1 : 0).add(a.is_aromatic ? 1 : 0);
      value = h.value();
    } else {
      std::vector<std::pair<int, std::uint64_t>> nb;
      for (const auto &b: mol_.bonds) {
        if (b.a != atom && b.b != atom)
          continue;
        const int other = b.a == atom ? b.b : b.a;
        int code = 1;
        switch (b.order) {
        case chem::BondOrder::single: code = 1; break;
        case chem::BondOrder::double_: code = 2; break;
        case chem::BondOrder::triple: code = 3; break;
        case chem::BondOrder::aromatic: code = 4; break;
        }
        nb.emplace_back(code, id(other, radius - 1));
      }
      std::sort(nb.begin(), nb.end());
      StableHash h;
      h.add(radius).add(id(atom, radius - 1));
      for (auto [c, x]: nb)
        h.add(c).add(x);
      value = h.value();
    }
    memo_[key] = value;
    return value;
  }

  std::vector<int> atom_set(int atom, int radius) const {
    std::vector<int> dist(mol_.size(), -1);
    std::queue<int> q;
    dist[atom] = 0;
    q.push(atom);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (const auto &b: mol_.bonds) {
        int v = -1;
        if (b.a == u)
          v = b.b;
        else if (b.b == u)
          v = b.a;
        if (v >= 0 && dist[v] < 0) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
      }
    }
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(mol_.size()); ++i)
      if (dist[i] >= 0 && dist[i] <= radius)
        out.push_back(i);
    return out;
  }

  std::set<std::uint64_t> identifiers(int radius) {
    std::set<std::uint64_t> out;
    std::set<std::vector<int>> earlier;
    for (int r = 0; r <= radius; ++r) {
      std::map<std::vector<int>, std::uint64_t> level;
      for (int a = 0; a < static_cast<int>(mol_.size()); ++a) {
        auto set = atom_set(a, r);
        if (earlier.count(set))
          continue;
        const auto x = id(a, r);
        auto [it, fresh] = level.emplace(set, x);
        if (!fresh && x < it->second)
          it->second = x;
      }
      for (auto &[set, x]: level) {
        earlier.insert(set);
        out.insert(x);
      }
    }
    return out;
  }

  std::vector<int> folded_bits(int radius, int n_bits) {
    std::set<int> bits;
    for (auto x: identifiers(radius))
      bits.insert(static_cast<int>(x % static_cast<std::uint64_t>(n_bits)));
    return {bits.begin(), bits.end()};
  }

private:
  const chem::Molecule &mol_;
  std::map<std::pair<int, int>, std::uint64_t> memo_;
};

} // namespace onco::testing

#endif // ONCOGAT_TESTS_ECFP_ORACLE_HPP
