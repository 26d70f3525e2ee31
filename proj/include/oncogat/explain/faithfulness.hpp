//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_EXPLAIN_FAITHFULNESS_HPP
#define ONCOGAT_EXPLAIN_FAITHFULNESS_HPP

#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "oncogat/core/random.hpp"
#include "oncogat/explain/occlusion.hpp"

namespace onco::explain {

inline const std::vector<double> kFaithfulnessFractions{0.05, 0.10, 0.20, 0.30};
inline constexpr int kDefaultRepeats = 20;

struct FractionDrop {
  double fraction = 0.0;
  int k = 0;
  double drop_top = 0.0;
  double random_mean = 0.0;
  double random_std = 0.0; // population standard deviation over repeats
};

struct FaithfulnessReport {
  double base_logit = 0.0; // the target score s(G)
  std::optional<double> base_probability;
  int repeats = kDefaultRepeats;
  std::uint64_t seed = 0;
  std::vector<FractionDrop> fractions;
};

// Masks the top-k groups of the attribution ranking and, per repeat, k
// uniformly drawn groups.
inline FaithfulnessReport faithfulness_test(const Scorer &scorer, const features::FeaturizedGraph &g,
                                            const AttributionReport &attribution,
                                            const std::vector<double> &fractions = kFaithfulnessFractions,
                                            int repeats = kDefaultRepeats, std::uint64_t seed = 0) {
  for (double f: fractions)
    check_fraction(f);
  require(repeats >= 10, "InvalidArgument", "faithfulness needs at least 10 random repeats");
  const int groups = static_cast<int>(g.h_groups.size());
  require(static_cast<int>(attribution.atoms.size()) == groups, "SchemaMismatch",
          "attribution was computed with a different group definition");
  scorer.check(g);
  const auto order = rank_groups(attribution.atoms);

  Rng rng(seed);
  std::vector<Matrix> variants{g.node_features};
  for (double f: fractions) {
    const int k = fraction_count(f, groups);
    variants.push_back(mask_groups(g, std::vector<int>(order.begin(), order.begin() + k)));
    for (int r = 0; r < repeats; ++r) {
      auto pick = rng.sample(static_cast<std::size_t>(groups), static_cast<std::size_t>(k));
      variants.push_back(mask_groups(g, std::vector<int>(pick.begin(), pick.end())));
    }
  }
  const auto s = scorer.scores(g, variants);

  FaithfulnessReport rep;
  rep.base_logit = s[0];
  rep.base_probability = scorer.probability(g);
  rep.repeats = repeats;
  rep.seed = seed;
  std::size_t at = 1;
  for (double f: fractions) {
    FractionDrop d;
    d.fraction = f;
    d.k = fraction_count(f, groups);
    d.drop_top = s[0] - s[at++];
    std::vector<double> drops;
    for (int r = 0; r < repeats; ++r)
      drops.push_back(s[0] - s[at++]);
    // Offsets from the first draw keep identical draws exact.
    double shift = 0.0;
    for (double v: drops)
      shift += v - drops[0];
    d.random_mean = drops[0] + shift / repeats;
    double var = 0.0;
    for (double v: drops)
      var += (v - d.random_mean) * (v - d.random_mean);
    d.random_std = std::sqrt(var / repeats);
    rep.fractions.push_back(d);
  }
  return rep;
}

} // namespace onco::explain

#endif // ONCOGAT_EXPLAIN_FAITHFULNESS_HPP
