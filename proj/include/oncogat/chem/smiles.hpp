//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_CHEM_SMILES_HPP
#define ONCOGAT_CHEM_SMILES_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "oncogat/chem/element.hpp"
#include "oncogat/chem/molecule.hpp"
#include "oncogat/chem/perception.hpp"
#include "oncogat/core/error.hpp"

namespace onco::chem {

struct ParseOptions {
  // Dot-disconnected input is rejected unless this is set, in which case
  // only the largest fragment (by heavy atoms, first on ties) is kept.
  bool keep_largest_fragment = false;
};

namespace detail {

struct DirectedBond {
  char symbol = 0; // '/' or '\\'
  int from = -1;   // atom the symbol was written after
};

class SmilesParser {
public:
  explicit SmilesParser(std::string_view text) : s_(text) { }

  Molecule parse(const ParseOptions &opt) {
    if (s_.empty())
      throw ParseError("EmptyInput", "empty SMILES", 0);
    for (std::size_t i = 0; i < s_.size(); ++i)
      if (static_cast<unsigned char>(s_[i]) > 127 ||
          std::isspace(static_cast<unsigned char>(s_[i])))
        throw ParseError("InvalidSyntax", "unexpected character", i);

    std::vector<int> branch_stack;
    std::vector<std::size_t> branch_offsets;
    int prev = -1;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '(') {
        if (prev < 0 || pending_ != 0)
          throw ParseError("InvalidSyntax", "branch without a preceding atom",
                           pos_);
        branch_stack.push_back(prev);
        branch_offsets.push_back(pos_);
        ++pos_;
      } else if (c == ')') {
        if (branch_stack.empty())
          throw ParseError("UnbalancedParenthesis", "unmatched ')'", pos_);
        if (pending_ != 0)
          throw ParseError("InvalidSyntax", "bond before ')'", pos_);
        prev = branch_stack.back();
        branch_stack.pop_back();
        branch_offsets.pop_back();
        ++pos_;
      } else if (c == '.') {
        if (!opt.keep_largest_fragment)
          throw ParseError("DisconnectedInput",
                           "multi-component SMILES is not accepted", pos_);
        if (pending_ != 0 || !branch_stack.empty())
          throw ParseError("InvalidSyntax", "misplaced '.'", pos_);
        prev = -1;
        ++pos_;
      } else if (is_bond_char(c)) {
        if (pending_ != 0)
          throw ParseError("InvalidSyntax", "two consecutive bond symbols",
                           pos_);
        if (c == '$')
          throw ParseError("InvalidSyntax", "quadruple bonds are unsupported",
                           pos_);
        pending_ = c;
        pending_offset_ = pos_;
        ++pos_;
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
        if (prev < 0)
          throw ParseError("InvalidSyntax", "ring bond without an atom", pos_);
        ring_bond(prev);
      } else {
        const int atom = parse_atom();
        if (prev >= 0) {
          add_bond(prev, atom, pending_, prev, pending_offset_);
          stereo_[atom].push_back(prev);
          stereo_[prev].push_back(atom);
        } else if (pending_ != 0) {
          throw ParseError("InvalidSyntax", "bond without a preceding atom",
                           pending_offset_);
        }
        if (bracket_h_[atom])
          stereo_[atom].push_back(-1);
        pending_ = 0;
        prev = atom;
      }
    }
    if (!branch_stack.empty())
      throw ParseError("UnbalancedParenthesis", "unclosed '('",
                       branch_offsets.back());
    if (pending_ != 0)
      throw ParseError("InvalidSyntax", "dangling bond symbol",
                       pending_offset_);
    if (!rings_.empty()) {
      std::size_t off = s_.size();
      for (const auto &[num, open]: rings_)
        off = std::min(off, open.offset);
      throw ParseError("UnclosedRing", "ring bond left open", off);
    }
    if (atoms_.empty())
      throw ParseError("EmptyInput", "no atoms", 0);
    return build(opt);
  }

private:
  struct OpenRing {
    int atom;
    char symbol;
    std::size_t offset;
    std::size_t stereo_slot;
  };

  static bool is_bond_char(char c) {
    return c == '-' || c == '=' || c == '#' || c == ':' || c == '/' ||
           c == '\\' || c == '$';
  }

  int new_atom(Atom a, bool infer_h, bool bracket_h) {
    atoms_.push_back(a);
    infer_h_.push_back(infer_h);
    bracket_h_.push_back(bracket_h);
    stereo_.emplace_back();
    return static_cast<int>(atoms_.size()) - 1;
  }

  int parse_atom() {
    const std::size_t start = pos_;
    const char c = s_[pos_];
    if (c == '[')
      return parse_bracket();
    Atom a;
    a.source_offset = start;
    auto two = s_.substr(pos_, 2);
    if (two == "Cl" || two == "Br") {
      a.element = two == "Cl" ? 17 : 35;
      pos_ += 2;
      return new_atom(a, true, false);
    }
    switch (c) {
    case 'B':
      a.element = 5;
      break;
    case 'C':
      a.element = 6;
      break;
    case 'N':
      a.element = 7;
      break;
    case 'O':
      a.element = 8;
      break;
    case 'P':
      a.element = 15;
      break;
    case 'S':
      a.element = 16;
      break;
    case 'F':
      a.element = 9;
      break;
    case 'I':
      a.element = 53;
      break;
    case 'b':
    case 'c':
    case 'n':
    case 'o':
    case 'p':
    case 's':
      a.element = c == 'b' ? 5 : c == 'c' ? 6 : c == 'n' ? 7 : c == 'o' ? 8 : c == 'p' ? 15 : 16;
      a.is_aromatic = true;
      break;
    default:
      throw ParseError("UnknownElement",
                       std::string("unknown element or symbol '") + c + "'",
                       start);
    }
    ++pos_;
    return new_atom(a, true, false);
  }

  int read_int() {
    int v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      v = v * 10 + (s_[pos_++] - '0');
    return v;
  }

  int parse_bracket() {
    const std::size_t start = pos_++;
    Atom a;
    a.source_offset = start;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      a.isotope = read_int();
    if (pos_ >= s_.size())
      throw ParseError("InvalidSyntax", "unterminated bracket atom", start);

    const std::size_t sym_at = pos_;
    const char c0 = s_[pos_];
    if (std::islower(static_cast<unsigned char>(c0))) {
      static constexpr std::string_view aromatic2[] = {"se", "as", "te"};
      bool found = false;
      for (auto sym: aromatic2)
        if (s_.substr(pos_, 2) == sym) {
          a.element = element_from_symbol(std::string{char(std::toupper(sym[0])), sym[1]});
          pos_ += 2;
          found = true;
          break;
        }
      if (!found) {
        static constexpr std::string_view aromatic1 = "bcnops";
        if (aromatic1.find(c0) == std::string_view::npos)
          throw ParseError("UnknownElement", "unknown aromatic symbol", sym_at);
        a.element = element_from_symbol(std::string(1, char(std::toupper(c0))));
        ++pos_;
      }
      a.is_aromatic = true;
    } else if (std::isupper(static_cast<unsigned char>(c0))) {
      int z = 0;
      if (pos_ + 1 < s_.size() &&
          std::islower(static_cast<unsigned char>(s_[pos_ + 1])))
        z = element_from_symbol(s_.substr(pos_, 2));
      if (z) {
        pos_ += 2;
      } else {
        z = element_from_symbol(s_.substr(pos_, 1));
        if (!z)
          throw ParseError("UnknownElement", "unknown element", sym_at);
        ++pos_;
      }
      a.element = z;
    } else {
      throw ParseError("UnknownElement", "expected an element symbol", sym_at);
    }

    if (pos_ < s_.size() && s_[pos_] == '@') {
      ++pos_;
      a.chirality = Chirality::ccw;
      if (pos_ < s_.size() && s_[pos_] == '@') {
        ++pos_;
        a.chirality = Chirality::cw;
      } else if (s_.substr(pos_, 2) == "TH") {
        pos_ += 2;
        const int k = read_int();
        if (k == 2)
          a.chirality = Chirality::cw;
        else if (k != 1)
          throw ParseError("InvalidSyntax", "unsupported chirality class",
                           pos_);
      }
    }
    bool has_h = false;
    if (pos_ < s_.size() && s_[pos_] == 'H') {
      ++pos_;
      has_h = true;
      a.explicit_h = 1;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        a.explicit_h = read_int();
    }
    if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      const char sign = s_[pos_++];
      int mag = 1;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        mag = read_int();
      else
        while (pos_ < s_.size() && s_[pos_] == sign) {
          ++mag;
          ++pos_;
        }
      a.formal_charge = sign == '+' ? mag : -mag;
    }
    if (pos_ < s_.size() && s_[pos_] == ':') {
      ++pos_;
      read_int();
    }
    if (pos_ >= s_.size() || s_[pos_] != ']')
      throw ParseError("InvalidSyntax", "malformed bracket atom", start);
    ++pos_;
    return new_atom(a, false, has_h && a.explicit_h == 1);
  }

  void ring_bond(int atom) {
    const std::size_t start = pos_;
    int num;
    if (s_[pos_] == '%') {
      if (pos_ + 2 >= s_.size() ||
          !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) ||
          !std::isdigit(static_cast<unsigned char>(s_[pos_ + 2])))
        throw ParseError("InvalidSyntax", "malformed %nn ring bond", start);
      num = (s_[pos_ + 1] - '0') * 10 + (s_[pos_ + 2] - '0');
      pos_ += 3;
    } else {
      num = s_[pos_++] - '0';
    }
    auto it = rings_.find(num);
    if (it == rings_.end()) {
      stereo_[atom].push_back(-2); // filled in at closure
      rings_[num] = {atom, pending_, start, stereo_[atom].size() - 1};
    } else {
      const OpenRing open = it->second;
      rings_.erase(it);
      char sym = pending_;
      int from = atom;
      std::size_t sym_off = pending_offset_;
      if (open.symbol != 0) {
        if (sym != 0 && sym != open.symbol &&
            !((sym == '/' || sym == '\\') && (open.symbol == '/' || open.symbol == '\\')))
          throw ParseError("InvalidSyntax", "conflicting ring bond symbols",
                           start);
        if (sym == 0) {
          sym = open.symbol;
          from = open.atom;
          sym_off = open.offset;
        }
      }
      if (open.atom == atom)
        throw ParseError("InvalidSyntax", "ring bond to itself", start);
      add_bond(open.atom, atom, sym, from, sym_off);
      stereo_[open.atom][open.stereo_slot] = atom;
      stereo_[atom].push_back(open.atom);
    }
    pending_ = 0;
  }

  void add_bond(int u, int v, char sym, int from, std::size_t offset) {
    for (const auto &b: bonds_)
      if ((b.a == u && b.b == v) || (b.a == v && b.b == u))
        throw ParseError("InvalidSyntax", "duplicate bond", offset);
    Bond b;
    b.a = u;
    b.b = v;
    DirectedBond dir;
    switch (sym) {
    case 0:
      b.order = atoms_[u].is_aromatic && atoms_[v].is_aromatic
                    ? BondOrder::aromatic
                    : BondOrder::single;
      break;
    case '-':
      b.order = BondOrder::single;
      break;
    case '=':
      b.order = BondOrder::double_;
      break;
    case '#':
      b.order = BondOrder::triple;
      break;
    case ':':
      b.order = BondOrder::aromatic;
      break;
    case '/':
    case '\\':
      b.order = BondOrder::single;
      dir = {sym, from};
      break;
    default:
      break;
    }
    bonds_.push_back(b);
    dirs_.push_back(dir);
  }

  // Translates '/' '\' annotations into cis/trans flags on double bonds,
  // relative to the annotated substituents.
  void assign_double_bond_stereo() {
    auto normalized = [&](int bond_index, int toward) {
      // Symbol as if written from the substituent toward the double-bond
      // atom (left side) -- callers flip for the right side.
      const auto &d = dirs_[bond_index];
      const bool written_toward = d.from != toward;
      char s = d.symbol;
      if (!written_toward)
        s = s == '/' ? '\\' : '/';
      return s;
    };
    for (auto &b: bonds_) {
      if (b.order != BondOrder::double_)
        continue;
      auto find_dir = [&](int end, int other, int &subst) {
        for (std::size_t k = 0; k < bonds_.size(); ++k) {
          if (dirs_[k].symbol == 0)
            continue;
          const auto &c = bonds_[k];
          if ((c.a == end || c.b == end) && c.other(end) != other) {
            subst = c.other(end);
            return static_cast<int>(k);
          }
        }
        return -1;
      };
      int x = -1, y = -1;
      const int bx = find_dir(b.a, b.b, x);
      const int by = find_dir(b.b, b.a, y);
      if (bx < 0 || by < 0)
        continue;
      // Left symbol normalised to x->a, right symbol normalised to b->y.
      const char sa = normalized(bx, b.a);
      const char sb_toward = normalized(by, b.b);
      const char sb = sb_toward == '/' ? '\\' : '/';
      b.stereo = sa == sb ? BondStereo::trans : BondStereo::cis;
      b.stereo_ref_a = x;
      b.stereo_ref_b = y;
    }
  }

  Molecule build(const ParseOptions &opt) {
    assign_double_bond_stereo();

    // Fold hydrogen atoms into their heavy neighbour.
    std::vector<int> h_partner(atoms_.size(), -1);
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (atoms_[i].element != 1 || atoms_[i].formal_charge != 0)
        continue;
      int nb = -1, count = 0;
      for (const auto &b: bonds_)
        if (b.a == static_cast<int>(i) || b.b == static_cast<int>(i)) {
          ++count;
          nb = b.other(static_cast<int>(i));
          if (b.order != BondOrder::single)
            count = 99;
        }
      if (count == 1 && atoms_[nb].element != 1 && atoms_[i].explicit_h == 0)
        h_partner[i] = nb;
    }
    std::vector<int> remap(atoms_.size(), -1);
    Molecule mol;
    mol.source = std::string(s_);
    PerceptionInput in;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (h_partner[i] >= 0) {
        atoms_[h_partner[i]].explicit_h += 1;
        continue;
      }
      remap[i] = static_cast<int>(mol.atoms.size());
      mol.atoms.push_back(atoms_[i]);
      in.infer_h.push_back(infer_h_[i]);
    }
    for (auto &b: bonds_) {
      if (remap[b.a] < 0 || remap[b.b] < 0)
        continue;
      Bond nb = b;
      nb.a = remap[b.a];
      nb.b = remap[b.b];
      auto map_ref = [&](int r) { return r < 0 ? -1 : remap[r] < 0 ? -1 : remap[r]; };
      nb.stereo_ref_a = map_ref(b.stereo_ref_a);
      nb.stereo_ref_b = map_ref(b.stereo_ref_b);
      if (nb.stereo != BondStereo::none &&
          (nb.stereo_ref_a < 0 || nb.stereo_ref_b < 0)) {
        // Folded hydrogen as the reference substituent.
        nb.stereo = BondStereo::none;
      }
      mol.bonds.push_back(nb);
    }
    mol.stereo_order.resize(mol.atoms.size());
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (remap[i] < 0)
        continue;
      for (int v: stereo_[i])
        mol.stereo_order[remap[i]].push_back(v < 0 ? -1 : remap[v]);
    }

    if (opt.keep_largest_fragment)
      keep_largest(mol, in);
    finalize_molecule(mol, in);
    return mol;
  }

  static void keep_largest(Molecule &mol, PerceptionInput &in) {
    rebuild_adjacency(mol);
    const int n = static_cast<int>(mol.size());
    std::vector<int> comp(n, -1);
    std::vector<int> heavy;
    int nc = 0;
    for (int s = 0; s < n; ++s) {
      if (comp[s] >= 0)
        continue;
      heavy.push_back(0);
      std::vector<int> stack{s};
      comp[s] = nc;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        heavy[nc] += mol.atoms[u].element != 1;
        for (int v: mol.neighbors(u))
          if (comp[v] < 0) {
            comp[v] = nc;
            stack.push_back(v);
          }
      }
      ++nc;
    }
    if (nc <= 1)
      return;
    const int best = static_cast<int>(
        std::max_element(heavy.begin(), heavy.end()) - heavy.begin());
    std::vector<int> remap(n, -1);
    Molecule out;
    out.source = mol.source;
    PerceptionInput kept;
    for (int i = 0; i < n; ++i)
      if (comp[i] == best) {
        remap[i] = static_cast<int>(out.atoms.size());
        out.atoms.push_back(mol.atoms[i]);
        kept.infer_h.push_back(in.infer_h[i]);
      }
    for (auto b: mol.bonds)
      if (comp[b.a] == best) {
        b.a = remap[b.a];
        b.b = remap[b.b];
        b.stereo_ref_a = b.stereo_ref_a < 0 ? -1 : remap[b.stereo_ref_a];
        b.stereo_ref_b = b.stereo_ref_b < 0 ? -1 : remap[b.stereo_ref_b];
        out.bonds.push_back(b);
      }
    out.stereo_order.resize(out.atoms.size());
    for (int i = 0; i < n; ++i)
      if (comp[i] == best)
        for (int v: mol.stereo_order[i])
          out.stereo_order[remap[i]].push_back(v < 0 ? -1 : remap[v]);
    mol = std::move(out);
    in = std::move(kept);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  char pending_ = 0;
  std::size_t pending_offset_ = 0;
  std::vector<Atom> atoms_;
  std::vector<char> infer_h_;
  std::vector<char> bracket_h_;
  std::vector<std::vector<int>> stereo_;
  std::vector<Bond> bonds_;
  std::vector<DirectedBond> dirs_;
  std::map<int, OpenRing> rings_;
};

} // namespace detail

// Parses a SMILES string into a validated Molecule. Errors are ParseError
// with codes EmptyInput, InvalidSyntax, UnbalancedParenthesis, UnclosedRing,
// UnknownElement, ValenceViolation or DisconnectedInput, each carrying the
// byte offset of the offending token.
inline Molecule parse_smiles(std::string_view text,
                             const ParseOptions &opt = {}) {
  return detail::SmilesParser(text).parse(opt);
}

} // namespace onco::chem

#endif // ONCOGAT_CHEM_SMILES_HPP
