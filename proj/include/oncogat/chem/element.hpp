//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_CHEM_ELEMENT_HPP
#define ONCOGAT_CHEM_ELEMENT_HPP

#include <array>
#include <cstdlib>
#include <span>
#include <string_view>
#include <vector>

namespace onco::chem {

inline constexpr int kMaxElement = 118;

inline constexpr std::array<std::string_view, kMaxElement + 1> kSymbols = {
    "*",  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na",
    "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",
    "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br",
    "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag",
    "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr",
    "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu",
    "Hf", "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi",
    "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am",
    "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh",
    "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og",
};

// Standard atomic weights (g/mol); mass number of the longest-lived isotope
// for elements without a standard weight.
inline constexpr std::array<double, kMaxElement + 1> kAtomicMass = {
    0.0,     1.008,   4.0026,  6.94,    9.0122,  10.81,   12.011,  14.007,
    15.999,  18.998,  20.180,  22.990,  24.305,  26.982,  28.085,  30.974,
    32.06,   35.45,   39.948,  39.098,  40.078,  44.956,  47.867,  50.942,
    51.996,  54.938,  55.845,  58.933,  58.693,  63.546,  65.38,   69.723,
    72.630,  74.922,  78.971,  79.904,  83.798,  85.468,  87.62,   88.906,
    91.224,  92.906,  95.95,   98.0,    101.07,  102.91,  106.42,  107.87,
    112.41,  114.82,  118.71,  121.76,  127.60,  126.90,  131.29,  132.91,
    137.33,  138.91,  140.12,  140.91,  144.24,  145.0,   150.36,  151.96,
    157.25,  158.93,  162.50,  164.93,  167.26,  168.93,  173.05,  174.97,
    178.49,  180.95,  183.84,  186.21,  190.23,  192.22,  195.08,  196.97,
    200.59,  204.38,  207.2,   208.98,  209.0,   210.0,   222.0,   223.0,
    226.0,   227.0,   232.04,  231.04,  238.03,  237.0,   244.0,   243.0,
    247.0,   247.0,   251.0,   252.0,   257.0,   258.0,   259.0,   266.0,
    267.0,   268.0,   269.0,   270.0,   277.0,   278.0,   281.0,   282.0,
    285.0,   286.0,   289.0,   290.0,   293.0,   294.0,   294.0,
};

inline int element_from_symbol(std::string_view sym) {
  for (int z = 1; z <= kMaxElement; ++z)
    if (kSymbols[z] == sym)
      return z;
  return 0;
}

inline std::string_view element_symbol(int z) {
  return (z >= 0 && z <= kMaxElement) ? kSymbols[z] : kSymbols[0];
}

// Allowed neutral valences for the elements the valence model covers.
// Elements outside the table are accepted with any valence.
inline std::span<const int> neutral_valences(int z) {
  static constexpr int b[] = {3}, c[] = {4}, n[] = {3, 5}, o[] = {2},
                       p[] = {3, 5}, s[] = {2, 4, 6}, hal[] = {1},
                       heavy_hal[] = {1, 3, 5, 7}, h[] = {1}, si[] = {4},
                       se[] = {2, 4, 6}, as[] = {3, 5};
  switch (z) {
  case 1:
    return h;
  case 5:
    return b;
  case 6:
    return c;
  case 7:
    return n;
  case 8:
    return o;
  case 9:
    return hal;
  case 14:
    return si;
  case 15:
    return p;
  case 16:
    return s;
  case 17:
  case 35:
  case 53:
    return heavy_hal;
  case 33:
    return as;
  case 34:
    return se;
  default:
    return {};
  }
}

inline bool has_valence_model(int z) { return !neutral_valences(z).empty(); }

// Valences after formal charge adjustment. Charged atoms behave like their
// isoelectronic neighbour: N+ like C (4), O- like F (1), C- like N (3),
// C+ like B (3), B- like C (4).
inline std::vector<int> allowed_valences(int z, int charge) {
  std::vector<int> out;
  if (!has_valence_model(z))
    return out;
  if (charge == 0) {
    auto v = neutral_valences(z);
    return {v.begin(), v.end()};
  }
  const bool electron_rich = z == 7 || z == 8 || z == 9 || z == 15 ||
                             z == 16 || z == 17 || z == 33 || z == 34 ||
                             z == 35 || z == 53;
  int shift;
  if (electron_rich)
    shift = charge; // N+ -> 4, O- -> 1
  else if (z == 6 || z == 14)
    shift = -std::abs(charge); // C+ and C- both trivalent
  else if (z == 5)
    shift = -charge; // B- -> 4
  else
    shift = -std::abs(charge);
  for (int v: neutral_valences(z)) {
    const int adj = v + shift;
    if (adj >= 0)
      out.push_back(adj);
  }
  return out;
}

inline bool is_halogen(int z) { return z == 9 || z == 17 || z == 35 || z == 53; }

} // namespace onco::chem

#endif // ONCOGAT_CHEM_ELEMENT_HPP
