//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_FEATURES_FINGERPRINT_HPP
#define ONCOGAT_FEATURES_FINGERPRINT_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "oncogat/chem/molecule.hpp"
#include "oncogat/core/error.hpp"
#include "oncogat/core/hash.hpp"
#include "oncogat/core/matrix.hpp"

namespace onco::features {

class Fingerprint {
public:
  Fingerprint() = default;
  Fingerprint(int n_bits, int radius)
      : bits_((n_bits + 63) / 64, 0), n_bits_(n_bits), radius_(radius) { }

  int width() const { return n_bits_; }
  int radius() const { return radius_; }

  void set(int bit) { bits_[bit >> 6] |= std::uint64_t{1} << (bit & 63); }
  bool test(int bit) const { return (bits_[bit >> 6] >> (bit & 63)) & 1U; }

  int popcount() const {
    int n = 0;
    for (auto w: bits_)
      n += std::popcount(w);
    return n;
  }

  std::vector<int> on_bits() const {
    std::vector<int> out;
    for (int i = 0; i < n_bits_; ++i)
      if (test(i))
        out.push_back(i);
    return out;
  }

  const std::vector<std::uint64_t> &words() const { return bits_; }

  bool operator==(const Fingerprint &o) const = default;

private:
  std::vector<std::uint64_t> bits_;
  int n_bits_ = 0;
  int radius_ = 0;
};

// Initial environment identifier of a heavy atom.
inline std::uint64_t ecfp_atom_invariant(const chem::Atom &a) {
  return StableHash{}
      .add(a.element)
      .add(a.degree)
      .add(a.total_h())
      .add(a.formal_charge)
      .add(static_cast<int>(a.in_ring))
      .add(static_cast<int>(a.is_aromatic))
      .value();
}

// Identifier of an environment grown one step: own previous identifier and
// the sorted (bond order, neighbour identifier) pairs.
inline std::uint64_t ecfp_grow(int iteration, std::uint64_t own,
                               std::vector<std::pair<int, std::uint64_t>> neighbours) {
  std::sort(neighbours.begin(), neighbours.end());
  StableHash h;
  h.add(iteration).add(own);
  for (const auto &[order, id]: neighbours)
    h.add(order).add(id);
  return h.value();
}

// Unfolded environment identifiers that survive duplicate removal. An
// environment is dropped when its atom set already appeared in an earlier
// iteration; within one iteration equal atom sets keep the smallest
// identifier.
inline std::set<std::uint64_t> ecfp_identifiers(const chem::Molecule &mol, int radius = 2) {
  const int n = static_cast<int>(mol.size());
  std::vector<int> heavy;
  for (int u = 0; u < n; ++u)
    if (mol.atoms[u].element != 1)
      heavy.push_back(u);

  std::vector<std::uint64_t> ids(n, 0);
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  std::set<std::uint64_t> out;
  std::set<std::vector<char>> seen_sets;
  for (int u: heavy) {
    ids[u] = ecfp_atom_invariant(mol.atoms[u]);
    reach[u][u] = 1;
    seen_sets.insert(reach[u]);
    out.insert(ids[u]);
  }
  for (int it = 1; it <= radius; ++it) {
    std::vector<std::uint64_t> next(n, 0);
    std::vector<std::vector<char>> grown(n);
    for (int u: heavy) {
      std::vector<std::pair<int, std::uint64_t>> nb;
      grown[u] = reach[u];
      for (int bi: mol.adjacency[u]) {
        const int v = mol.bonds[bi].other(u);
        if (mol.atoms[v].element == 1)
          continue;
        nb.emplace_back(chem::bond_order_code(mol.bonds[bi].order), ids[v]);
        for (int w = 0; w < n; ++w)
          grown[u][w] |= reach[v][w];
      }
      next[u] = ecfp_grow(it, ids[u], std::move(nb));
    }
    std::map<std::vector<char>, std::uint64_t> fresh;
    for (int u: heavy) {
      if (seen_sets.count(grown[u]))
        continue;
      auto [pos, inserted] = fresh.emplace(grown[u], next[u]);
      if (!inserted)
        pos->second = std::min(pos->second, next[u]);
    }
    for (const auto &[set, id]: fresh) {
      seen_sets.insert(set);
      out.insert(id);
    }
    ids = std::move(next);
    reach = std::move(grown);
  }
  return out;
}

inline Fingerprint fold_identifiers(const std::set<std::uint64_t> &ids, int n_bits, int radius) {
  Fingerprint fp(n_bits, radius);
  for (auto id: ids)
    fp.set(static_cast<int>(id % static_cast<std::uint64_t>(n_bits)));
  return fp;
}

inline Fingerprint ecfp(const chem::Molecule &mol, int radius = 2, int n_bits = 2048) {
  require(n_bits > 0 && radius >= 0, "InvalidArgument", "ecfp needs n_bits > 0 and radius >= 0");
  return fold_identifiers(ecfp_identifiers(mol, radius), n_bits, radius);
}

inline double tanimoto(const Fingerprint &a, const Fingerprint &b) {
  if (a.width() != b.width())
    throw Error("WidthMismatch", "fingerprint widths " + std::to_string(a.width()) + " and " +
                                     std::to_string(b.width()) + " differ");
  int both = 0, any = 0;
  for (std::size_t i = 0; i < a.words().size(); ++i) {
    both += std::popcount(a.words()[i] & b.words()[i]);
    any += std::popcount(a.words()[i] | b.words()[i]);
  }
  return any == 0 ? 1.0 : static_cast<double>(both) / any;
}

inline Matrix jaccard_distance_matrix(const std::vector<Fingerprint> &fps) {
  const auto n = static_cast<Eigen::Index>(fps.size());
  Matrix d = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      d(i, j) = d(j, i) = 1.0 - tanimoto(fps[i], fps[j]);
  return d;
}

} // namespace onco::features

#endif // ONCOGAT_FEATURES_FINGERPRINT_HPP
