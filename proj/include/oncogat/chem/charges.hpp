//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_CHEM_CHARGES_HPP
#define ONCOGAT_CHEM_CHARGES_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "oncogat/chem/molecule.hpp"

namespace onco::chem {

struct GasteigerParams {
  double a, b, c;
};

// Gasteiger-Marsili electronegativity coefficients chi(q) = a + b q + c q^2.
inline std::optional<GasteigerParams> gasteiger_params(int element,
                                                       Hybridization hyb) {
  switch (element) {
  case 1:
    return GasteigerParams{7.17, 6.24, -0.56};
  case 6:
    if (hyb == Hybridization::sp)
      return GasteigerParams{10.39, 9.45, 0.73};
    if (hyb == Hybridization::sp2)
      return GasteigerParams{8.79, 9.32, 1.51};
    return GasteigerParams{7.98, 9.18, 1.88};
  case 7:
    if (hyb == Hybridization::sp)
      return GasteigerParams{15.68, 11.70, -0.27};
    if (hyb == Hybridization::sp2)
      return GasteigerParams{12.87, 11.15, 0.85};
    return GasteigerParams{11.54, 10.82, 1.36};
  case 8:
    if (hyb == Hybridization::sp2 || hyb == Hybridization::sp)
      return GasteigerParams{17.07, 13.79, 0.47};
    return GasteigerParams{14.18, 12.92, 1.39};
  case 9:
    return GasteigerParams{14.66, 13.85, 2.31};
  case 15:
    return GasteigerParams{8.90, 8.24, 0.96};
  case 16:
    if (hyb == Hybridization::sp2 || hyb == Hybridization::sp)
      return GasteigerParams{10.88, 9.485, 1.325};
    return GasteigerParams{10.14, 9.13, 1.38};
  case 17:
    return GasteigerParams{11.00, 9.69, 1.35};
  case 35:
    return GasteigerParams{10.08, 8.47, 1.16};
  case 53:
    return GasteigerParams{9.90, 7.96, 0.96};
  default:
    return std::nullopt;
  }
}

struct ChargeResult {
  std::vector<double> atom;     // per atom in the molecule
  std::vector<double> hydrogen; // charge of each attached H, per heavy atom
  std::vector<std::string> warnings;

  double total() const {
    double s = 0.0;
    for (std::size_t i = 0; i < atom.size(); ++i)
      s += atom[i];
    return s;
  }
};

// Partial equalisation of orbital electronegativity: 8 damped iterations
// (factor 0.5^k) over all bonds including those to attached hydrogens.
// Transfers are pairwise so the total equals the summed formal charge.
// Atoms without parameters keep charge 0 and exchange nothing.
inline ChargeResult gasteiger_charges(const Molecule &mol,
                                      int iterations = 8) {
  const int n = static_cast<int>(mol.size());
  struct Site {
    GasteigerParams p;
    bool param;
    double q;
  };
  std::vector<Site> sites;
  std::vector<std::pair<int, int>> links;
  std::vector<int> first_h(n, -1);
  ChargeResult out;

  for (int i = 0; i < n; ++i) {
    const auto &a = mol.atoms[i];
    auto p = gasteiger_params(a.element, a.hybridization);
    if (!p)
      out.warnings.push_back("no Gasteiger parameters for atom " +
                             std::to_string(i) + "; charge set to 0");
    sites.push_back({p.value_or(GasteigerParams{0, 0, 0}), p.has_value(),
                     p ? static_cast<double>(a.formal_charge) : 0.0});
  }
  for (const auto &b: mol.bonds)
    if (sites[b.a].param && sites[b.b].param)
      links.emplace_back(b.a, b.b);
  // Order heavy-atom links by canonical rank so accumulated transfers do
  // not depend on input atom order.
  const bool ranked = static_cast<int>(mol.canonical_ranks.size()) == n;
  auto rank = [&](int i) { return ranked ? mol.canonical_ranks[i] : i; };
  for (auto &[i, j]: links)
    if (rank(j) < rank(i))
      std::swap(i, j);
  std::sort(links.begin(), links.end(), [&](auto x, auto y) {
    return std::pair(rank(x.first), rank(x.second)) < std::pair(rank(y.first), rank(y.second));
  });
  for (int i = 0; i < n; ++i) {
    if (!sites[i].param)
      continue;
    for (int h = 0; h < mol.atoms[i].total_h(); ++h) {
      const int idx = static_cast<int>(sites.size());
      if (h == 0)
        first_h[i] = idx;
      sites.push_back({*gasteiger_params(1, Hybridization::other), true, 0.0});
      links.emplace_back(i, idx);
    }
  }

  auto chi = [](const Site &s) {
    return s.p.a + s.p.b * s.q + s.p.c * s.q * s.q;
  };
  auto chi_plus = [](const Site &s, int element) {
    // Cation electronegativity; hydrogen uses the fixed 20.02 value.
    return element == 1 ? 20.02 : s.p.a + s.p.b + s.p.c;
  };
  auto element_of = [&](int idx) {
    return idx < n ? mol.atoms[idx].element : 1;
  };

  std::vector<double> delta(sites.size());
  double damp = 1.0;
  for (int k = 0; k < iterations; ++k) {
    damp *= 0.5;
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto [i, j]: links) {
      const double ci = chi(sites[i]), cj = chi(sites[j]);
      // Electrons flow toward the more electronegative partner.
      const int donor = ci < cj ? i : j;
      const double denom = chi_plus(sites[donor], element_of(donor));
      const double t = (std::abs(cj - ci) / denom) * damp;
      if (ci < cj) {
        delta[i] += t;
        delta[j] -= t;
      } else {
        delta[j] += t;
        delta[i] -= t;
      }
    }
    for (std::size_t s = 0; s < sites.size(); ++s)
      sites[s].q += delta[s];
  }

  out.atom.resize(n);
  out.hydrogen.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    out.atom[i] = sites[i].q;
    if (first_h[i] >= 0)
      out.hydrogen[i] = sites[first_h[i]].q;
  }
  return out;
}

// Sum over atoms and their attached hydrogens.
inline double total_partial_charge(const Molecule &mol, const ChargeResult &q) {
  double s = 0.0;
  for (std::size_t i = 0; i < mol.size(); ++i)
    s += q.atom[i] + q.hydrogen[i] * mol.atoms[i].total_h();
  return s;
}

} // namespace onco::chem

#endif // ONCOGAT_CHEM_CHARGES_HPP
