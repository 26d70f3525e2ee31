//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_CHEM_WRITER_HPP
#define ONCOGAT_CHEM_WRITER_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "oncogat/chem/canon.hpp"
#include "oncogat/chem/element.hpp"
#include "oncogat/chem/molecule.hpp"
#include "oncogat/chem/perception.hpp"

namespace onco::chem {

namespace detail {

class SmilesWriter {
public:
  explicit SmilesWriter(const Molecule &mol)
      : mol_(mol),
        rank_(mol.canonical_ranks.size() == mol.size()
                  ? mol.canonical_ranks
                  : compute_canonical_ranks(mol)) { }

  std::string write() {
    const int n = static_cast<int>(mol_.size());
    visited_.assign(n, 0);
    parent_.assign(n, -1);
    emit_index_.assign(n, -1);
    ring_bonds_.assign(n, {});
    children_.assign(n, {});
    is_ring_bond_.assign(mol_.bonds.size(), 0);
    dir_.assign(mol_.bonds.size(), 0);

    std::vector<int> by_rank(n);
    for (int u = 0; u < n; ++u)
      by_rank[rank_[u]] = u;
    std::vector<int> roots;
    for (int u: by_rank)
      if (!visited_[u]) {
        roots.push_back(u);
        classify(u, -1);
      }
    int counter = 0;
    for (int r: roots)
      number(r, counter);
    assign_bond_directions();

    std::string out;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (i)
        out += '.';
      emit(roots[i], -1, out);
    }
    return out;
  }

private:
  std::vector<int> sorted_neighbors(int u) const {
    auto nb = mol_.neighbors(u);
    std::sort(nb.begin(), nb.end(),
              [&](int l, int r) { return rank_[l] < rank_[r]; });
    return nb;
  }

  // DFS in rank order; non-tree edges become ring closures.
  void classify(int u, int parent) {
    visited_[u] = 1;
    parent_[u] = parent;
    for (int v: sorted_neighbors(u)) {
      if (v == parent)
        continue;
      const int bi = mol_.bond_between(u, v);
      if (visited_[v]) {
        if (!is_ring_bond_[bi]) {
          is_ring_bond_[bi] = 1;
          ring_bonds_[u].push_back(bi);
          ring_bonds_[v].push_back(bi);
        }
        continue;
      }
      children_[u].push_back(v);
      classify(v, u);
    }
  }

  void number(int u, int &counter) {
    emit_index_[u] = counter++;
    for (int v: children_[u])
      number(v, counter);
  }

  // Ring bonds at an atom in writing order: partner rank.
  std::vector<int> ordered_ring_bonds(int u) const {
    auto rb = ring_bonds_[u];
    std::sort(rb.begin(), rb.end(), [&](int l, int r) {
      return rank_[mol_.bonds[l].other(u)] < rank_[mol_.bonds[r].other(u)];
    });
    return rb;
  }

  static char flip(char c) { return c == '/' ? '\\' : '/'; }

  // Written direction of every bond is from the earlier emitted atom.
  int first_written(int bi) const {
    const auto &b = mol_.bonds[bi];
    return emit_index_[b.a] < emit_index_[b.b] ? b.a : b.b;
  }

  // Symbol normalised to "written from `from` toward `to`".
  char normalized(int bi, int from) const {
    return first_written(bi) == from ? dir_[bi] : flip(dir_[bi]);
  }

  void set_normalized(int bi, int from, char sym) {
    dir_[bi] = first_written(bi) == from ? sym : flip(sym);
  }

  void assign_bond_directions() {
    std::vector<int> doubles;
    for (int bi = 0; bi < static_cast<int>(mol_.bonds.size()); ++bi)
      if (mol_.bonds[bi].stereo != BondStereo::none)
        doubles.push_back(bi);
    std::sort(doubles.begin(), doubles.end(), [&](int l, int r) {
      return std::min(emit_index_[mol_.bonds[l].a], emit_index_[mol_.bonds[l].b]) <
             std::min(emit_index_[mol_.bonds[r].a], emit_index_[mol_.bonds[r].b]);
    });
    for (int bi: doubles) {
      const auto &b = mol_.bonds[bi];
      const int left = first_written(bi), right = b.other(left);
      const int ref_left = left == b.a ? b.stereo_ref_a : b.stereo_ref_b;
      const int ref_right = left == b.a ? b.stereo_ref_b : b.stereo_ref_a;
      auto substituent_bonds = [&](int end, int other) {
        std::vector<int> out;
        for (int bj: mol_.adjacency[end])
          if (mol_.bonds[bj].other(end) != other &&
              mol_.bonds[bj].order == BondOrder::single)
            out.push_back(bj);
        std::stable_sort(out.begin(), out.end(), [&](int l, int r) {
          return (dir_[l] != 0) > (dir_[r] != 0);
        });
        return out;
      };
      const auto left_bonds = substituent_bonds(left, right);
      const auto right_bonds = substituent_bonds(right, left);
      if (left_bonds.empty() || right_bonds.empty())
        continue;
      const int bx = left_bonds.front();
      const int x = mol_.bonds[bx].other(left);
      char sx;
      if (dir_[bx] != 0) {
        sx = normalized(bx, x);
      } else {
        sx = '/';
        set_normalized(bx, x, sx);
      }
      for (int by: right_bonds) {
        const int y = mol_.bonds[by].other(right);
        bool trans = b.stereo == BondStereo::trans;
        if (x != ref_left)
          trans = !trans;
        if (y != ref_right)
          trans = !trans;
        const char want = trans ? sx : flip(sx);
        if (dir_[by] == 0) {
          set_normalized(by, right, want);
          break;
        }
        if (normalized(by, right) == want)
          break;
      }
    }
  }

  std::string atom_text(int u, const std::vector<int> &out_order) const {
    const auto &a = mol_.atoms[u];
    std::string sym(element_symbol(a.element));
    if (a.is_aromatic)
      sym[0] = static_cast<char>(std::tolower(sym[0]));
    static const std::set<int> organic = {5, 6, 7, 8, 9, 15, 16, 17, 35, 53};
    const bool aromatic_ok =
        !a.is_aromatic || a.element == 5 || a.element == 6 || a.element == 7 ||
        a.element == 8 || a.element == 15 || a.element == 16;
    const bool bare = organic.count(a.element) && a.formal_charge == 0 &&
                      a.chirality == Chirality::none && aromatic_ok &&
                      default_hydrogens(mol_, u, false) == a.total_h();
    if (bare)
      return sym;
    std::string out = "[" + sym;
    if (a.chirality != Chirality::none) {
      Chirality c = a.chirality;
      if (odd_permutation(mol_.stereo_order[u], out_order))
        c = invert(c);
      out += c == Chirality::ccw ? "@" : "@@";
    }
    if (a.total_h() > 0) {
      out += 'H';
      if (a.total_h() > 1)
        out += std::to_string(a.total_h());
    }
    if (a.formal_charge != 0) {
      out += a.formal_charge > 0 ? '+' : '-';
      if (std::abs(a.formal_charge) > 1)
        out += std::to_string(std::abs(a.formal_charge));
    }
    out += ']';
    return out;
  }

  std::string bond_text(int bi) const {
    const auto &b = mol_.bonds[bi];
    if (dir_[bi] != 0)
      return std::string(1, dir_[bi]);
    switch (b.order) {
    case BondOrder::single:
      return (mol_.atoms[b.a].is_aromatic && mol_.atoms[b.b].is_aromatic) ? "-"
                                                                           : "";
    case BondOrder::double_:
      return "=";
    case BondOrder::triple:
      return "#";
    case BondOrder::aromatic:
      return "";
    }
    return "";
  }

  static std::string ring_label(int num) {
    return num < 10 ? std::to_string(num) : "%" + std::to_string(num);
  }

  void emit(int u, int parent, std::string &out) {
    const auto rbs = ordered_ring_bonds(u);
    // Neighbour order as written, for chirality.
    std::vector<int> order;
    if (parent >= 0)
      order.push_back(parent);
    if (mol_.atoms[u].chirality != Chirality::none &&
        mol_.atoms[u].total_h() == 1)
      order.push_back(-1);
    for (int bi: rbs)
      order.push_back(mol_.bonds[bi].other(u));
    for (int v: children_[u])
      order.push_back(v);
    if (mol_.atoms[u].chirality != Chirality::none &&
        mol_.stereo_order[u].size() != order.size()) {
      // Lone-pair centres list three neighbours; pad consistently.
      while (order.size() < mol_.stereo_order[u].size())
        order.push_back(-1);
    }
    out += atom_text(u, order);

    std::vector<int> to_free;
    for (int bi: rbs) {
      auto it = open_.find(bi);
      if (it != open_.end()) {
        out += ring_label(it->second);
        to_free.push_back(it->second);
        open_.erase(it);
      } else {
        int num = 1;
        while (in_use_.count(num))
          ++num;
        in_use_.insert(num);
        open_[bi] = num;
        out += bond_text(bi);
        out += ring_label(num);
      }
    }
    for (int num: to_free)
      in_use_.erase(num);

    for (std::size_t i = 0; i < children_[u].size(); ++i) {
      const int v = children_[u][i];
      const int bi = mol_.bond_between(u, v);
      const bool last = i + 1 == children_[u].size();
      if (!last)
        out += '(';
      out += bond_text(bi);
      emit(v, u, out);
      if (!last)
        out += ')';
    }
  }

  const Molecule &mol_;
  std::vector<int> rank_;
  std::vector<char> visited_;
  std::vector<int> parent_;
  std::vector<int> emit_index_;
  std::vector<std::vector<int>> ring_bonds_;
  std::vector<std::vector<int>> children_;
  std::vector<char> is_ring_bond_;
  std::vector<char> dir_;
  std::map<int, int> open_;
  std::set<int> in_use_;
};

} // namespace detail

// Deterministic SMILES: DFS from the lowest canonical rank, branches in rank
// order. Invariant under input atom order.
inline std::string canonical_smiles(const Molecule &mol) {
  if (mol.size() == 0)
    return {};
  return detail::SmilesWriter(mol).write();
}

} // namespace onco::chem

#endif // ONCOGAT_CHEM_WRITER_HPP
