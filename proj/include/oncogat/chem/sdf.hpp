//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_CHEM_SDF_HPP
#define ONCOGAT_CHEM_SDF_HPP

#include <cstdlib>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "oncogat/chem/element.hpp"
#include "oncogat/chem/molecule.hpp"
#include "oncogat/chem/perception.hpp"
#include "oncogat/core/error.hpp"

namespace onco::chem {

inline constexpr std::size_t kMaxBatch = 2000;

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::string_view column(std::string_view line, std::size_t from,
                               std::size_t width) {
  if (from >= line.size())
    return {};
  return trim(line.substr(from, width));
}

inline bool parse_int(std::string_view s, int &out) {
  if (s.empty())
    return false;
  std::string tmp(s);
  char *end = nullptr;
  const long v = std::strtol(tmp.c_str(), &end, 10);
  if (end == tmp.c_str() || *end != '\0')
    return false;
  out = static_cast<int>(v);
  return true;
}

inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size())
        lines.push_back(text.substr(start));
      break;
    }
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

// One V2000 connection table. `first_line` is the 1-based line of the
// header in the enclosing file, used for error positions.
inline Molecule parse_mol_block(const std::vector<std::string_view> &lines,
                                std::size_t first_line) {
  if (lines.size() < 4)
    throw ParseError("MalformedCountsLine", "MOL block has no counts line",
                     first_line + lines.size());
  const auto counts = lines[3];
  int natoms = 0, nbonds = 0;
  if (!parse_int(column(counts, 0, 3), natoms) ||
      !parse_int(column(counts, 3, 3), nbonds) || natoms < 0 || nbonds < 0)
    throw ParseError("MalformedCountsLine", "cannot read atom/bond counts",
                     first_line + 3);
  if (counts.find("V3000") != std::string_view::npos)
    throw ParseError("MalformedCountsLine", "V3000 is not supported",
                     first_line + 3);

  Molecule mol;
  std::vector<Point2> coords;
  PerceptionInput in;
  for (int i = 0; i < natoms; ++i) {
    const std::size_t li = 4 + static_cast<std::size_t>(i);
    if (li >= lines.size() || lines[li].size() < 34)
      throw ParseError("AtomBlockShort", "atom block is truncated",
                       first_line + li);
    const auto line = lines[li];
    Atom a;
    a.source_offset = first_line + li;
    const auto sym = column(line, 31, 3);
    a.element = element_from_symbol(sym);
    if (sym == "D" || sym == "T")
      a.element = 1;
    if (!a.element)
      throw ParseError("UnknownElement",
                       "unknown element '" + std::string(sym) + "'",
                       first_line + li);
    int chg = 0;
    if (parse_int(column(line, 36, 3), chg) && chg != 0 && chg != 4)
      a.formal_charge = 4 - chg;
    const double x = std::strtod(std::string(column(line, 0, 10)).c_str(), nullptr);
    const double y = std::strtod(std::string(column(line, 10, 10)).c_str(), nullptr);
    coords.push_back({x, y});
    mol.atoms.push_back(a);
    in.infer_h.push_back(1);
  }
  for (int i = 0; i < nbonds; ++i) {
    const std::size_t li = 4 + static_cast<std::size_t>(natoms + i);
    if (li >= lines.size() || lines[li].size() < 9)
      throw ParseError("BondBlockShort", "bond block is truncated",
                       first_line + li);
    int a = 0, b = 0, type = 0;
    if (!parse_int(column(lines[li], 0, 3), a) ||
        !parse_int(column(lines[li], 3, 3), b) ||
        !parse_int(column(lines[li], 6, 3), type) || a < 1 || b < 1 ||
        a > natoms || b > natoms || a == b)
      throw ParseError("BondBlockShort", "malformed bond line", first_line + li);
    Bond bond;
    bond.a = a - 1;
    bond.b = b - 1;
    switch (type) {
    case 1:
      bond.order = BondOrder::single;
      break;
    case 2:
      bond.order = BondOrder::double_;
      break;
    case 3:
      bond.order = BondOrder::triple;
      break;
    case 4:
      bond.order = BondOrder::aromatic;
      mol.atoms[bond.a].is_aromatic = true;
      mol.atoms[bond.b].is_aromatic = true;
      break;
    default:
      throw ParseError("BondBlockShort", "unsupported bond type",
                       first_line + li);
    }
    mol.bonds.push_back(bond);
  }
  // Properties block: M  CHG resets all atom-block charges.
  bool chg_reset = false;
  for (std::size_t li = 4 + natoms + nbonds; li < lines.size(); ++li) {
    const auto line = lines[li];
    if (line.rfind("M  END", 0) == 0)
      break;
    if (line.rfind("M  CHG", 0) != 0)
      continue;
    if (!chg_reset) {
      for (auto &a: mol.atoms)
        a.formal_charge = 0;
      chg_reset = true;
    }
    int count = 0;
    parse_int(column(line, 6, 3), count);
    for (int k = 0; k < count; ++k) {
      int idx = 0, val = 0;
      if (parse_int(column(line, 10 + 8 * k, 3), idx) &&
          parse_int(column(line, 14 + 8 * k, 3), val) && idx >= 1 &&
          idx <= natoms)
        mol.atoms[idx - 1].formal_charge = val;
    }
  }

  // Explicit hydrogens become counts on their heavy neighbour.
  std::vector<int> deg(natoms, 0), partner(natoms, -1);
  for (const auto &b: mol.bonds) {
    ++deg[b.a];
    ++deg[b.b];
    partner[b.a] = b.b;
    partner[b.b] = b.a;
  }
  std::vector<int> remap(natoms, -1);
  Molecule out;
  out.source = std::string(lines[0]);
  std::vector<Point2> out_coords;
  PerceptionInput out_in;
  for (int i = 0; i < natoms; ++i) {
    const auto &a = mol.atoms[i];
    if (a.element == 1 && a.formal_charge == 0 && deg[i] == 1 &&
        mol.atoms[partner[i]].element != 1)
      continue;
    remap[i] = static_cast<int>(out.atoms.size());
    out.atoms.push_back(a);
    out_coords.push_back(coords[i]);
    out_in.infer_h.push_back(1);
  }
  for (int i = 0; i < natoms; ++i)
    if (remap[i] < 0)
      out.atoms[remap[partner[i]]].explicit_h += 1;
  for (auto b: mol.bonds) {
    if (remap[b.a] < 0 || remap[b.b] < 0)
      continue;
    b.a = remap[b.a];
    b.b = remap[b.b];
    out.bonds.push_back(b);
  }
  out.coords = std::move(out_coords);
  out.stereo_order.resize(out.atoms.size());
  finalize_molecule(out, out_in);
  return out;
}

} // namespace detail

// Parses an SDF (V2000 MOL blocks separated by "$$$$"). Rejects more than
// `max_molecules` blocks with BatchLimitExceeded before parsing any of them.
inline std::vector<Molecule> parse_sdf(std::string_view text,
                                       std::size_t max_molecules = kMaxBatch) {
  const auto lines = detail::split_lines(text);
  std::vector<std::pair<std::size_t, std::size_t>> blocks; // [begin, end)
  std::size_t begin = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (detail::trim(lines[i]) == "$$$$") {
      blocks.emplace_back(begin, i);
      begin = i + 1;
    }
  }
  bool tail = false;
  for (std::size_t i = begin; i < lines.size(); ++i)
    tail |= !detail::trim(lines[i]).empty();
  if (tail)
    blocks.emplace_back(begin, lines.size());
  if (blocks.size() > max_molecules)
    throw ParseError("BatchLimitExceeded",
                     "SDF holds " + std::to_string(blocks.size()) +
                         " molecules; the limit is " +
                         std::to_string(max_molecules),
                     0);
  std::vector<Molecule> mols;
  mols.reserve(blocks.size());
  for (auto [b, e]: blocks) {
    std::vector<std::string_view> block(lines.begin() + b, lines.begin() + e);
    mols.push_back(detail::parse_mol_block(block, b + 1));
  }
  return mols;
}

// Single MOL block.
inline Molecule parse_mol(std::string_view text) {
  const auto lines = detail::split_lines(text);
  return detail::parse_mol_block(lines, 1);
}

} // namespace onco::chem

#endif // ONCOGAT_CHEM_SDF_HPP
