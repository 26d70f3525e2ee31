//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_EXPLAIN_OCCLUSION_HPP
#define ONCOGAT_EXPLAIN_OCCLUSION_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "oncogat/explain/scorer.hpp"

namespace onco::explain {

inline constexpr double kDisplayFraction = 0.20;

struct AtomAttribution {
  int atom = 0;
  double delta = 0.0;      // s(G) - s(G without the group)
  double importance = 0.0; // max(0, delta)
  double normalised = 0.0; // importance / in-molecule maximum
};

struct AttributionReport {
  std::string smiles;
  double base_score = 0.0;
  std::vector<AtomAttribution> atoms; // one per heavy-atom group, by atom index
  double display_fraction = kDisplayFraction;
  std::vector<int> top_set;
  int ensemble_size = 1;
  bool all_zero = false;

  std::vector<double> normalised_scores() const {
    std::vector<double> out;
    for (const auto &a: atoms)
      out.push_back(a.normalised);
    return out;
  }
};

// Number of groups selected at a fraction: ceil(fraction * n), guarded
// against products such as 0.1 * 30 landing just above an integer.
inline int fraction_count(double fraction, int n) {
  const double x = fraction * n;
  const double r = std::round(x);
  return static_cast<int>(std::abs(x - r) < 1e-9 ? r : std::ceil(x));
}

// Groups ordered by importance, then by raw drop, then by index.
inline std::vector<int> rank_groups(const std::vector<AtomAttribution> &atoms) {
  std::vector<int> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const auto &x = atoms[static_cast<std::size_t>(a)];
    const auto &y = atoms[static_cast<std::size_t>(b)];
    if (x.importance != y.importance)
      return x.importance > y.importance;
    return x.delta > y.delta;
  });
  return order;
}

inline void check_fraction(double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw Error("FractionOutOfRange", "fraction must lie in (0, 1], got " + std::to_string(fraction));
}

inline AttributionReport occlusion_attribution(const Scorer &scorer, const features::FeaturizedGraph &g,
                                               double display_fraction = kDisplayFraction) {
  check_fraction(display_fraction);
  scorer.check(g);
  const int groups = static_cast<int>(g.h_groups.size());
  std::vector<Matrix> variants{g.node_features};
  for (int h = 0; h < groups; ++h)
    variants.push_back(mask_groups(g, {h}));
  const auto s = scorer.scores(g, variants);

  AttributionReport r;
  r.base_score = s[0];
  r.display_fraction = display_fraction;
  r.ensemble_size = scorer.ensemble_size();
  double top = 0.0;
  for (int h = 0; h < groups; ++h) {
    AtomAttribution a;
    a.atom = h;
    a.delta = s[0] - s[static_cast<std::size_t>(h) + 1];
    a.importance = std::max(0.0, a.delta);
    top = std::max(top, a.importance);
    r.atoms.push_back(a);
  }
  r.all_zero = top == 0.0;
  if (!r.all_zero)
    for (auto &a: r.atoms)
      a.normalised = a.importance / top;
  const auto order = rank_groups(r.atoms);
  r.top_set.assign(order.begin(), order.begin() + fraction_count(display_fraction, groups));
  return r;
}

} // namespace onco::explain

#endif // ONCOGAT_EXPLAIN_OCCLUSION_HPP
