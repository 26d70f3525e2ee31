//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_EXPLAIN_REPORT_HPP
#define ONCOGAT_EXPLAIN_REPORT_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "oncogat/chem/writer.hpp"
#include "oncogat/explain/depict.hpp"
#include "oncogat/explain/faithfulness.hpp"
#include "oncogat/explain/integrated_gradients.hpp"
#include "oncogat/features/graph.hpp"

namespace onco::explain {

using Json = nlohmann::ordered_json;

inline Json to_json(const AttributionReport &r) {
  Json atoms = Json::array();
  for (const auto &a: r.atoms)
    atoms.push_back({{"atom", a.atom}, {"delta", a.delta}, {"importance", a.importance}, {"normalised", a.normalised}});
  return {{"smiles", r.smiles},
          {"base_score", r.base_score},
          {"ensemble_size", r.ensemble_size},
          {"display_fraction", r.display_fraction},
          {"all_zero", r.all_zero},
          {"top_set", r.top_set},
          {"atoms", atoms}};
}

inline Json to_json(const FaithfulnessReport &r) {
  Json fr = Json::array();
  for (const auto &f: r.fractions)
    fr.push_back({{"fraction", f.fraction},
                  {"k", f.k},
                  {"drop_top", f.drop_top},
                  {"random_mean", f.random_mean},
                  {"random_std", f.random_std}});
  return {{"base_logit", r.base_logit},
          {"base_probability", r.base_probability ? Json(*r.base_probability) : Json(nullptr)},
          {"repeats", r.repeats},
          {"seed", r.seed},
          {"fractions", fr}};
}

inline Json to_json(const IntegratedGradients &r) {
  return {{"steps", r.steps},
          {"score", r.score},
          {"baseline_score", r.baseline_score},
          {"completeness_gap", r.completeness_gap()},
          {"node", r.node},
          {"group", r.group}};
}

struct ExplainOptions {
  double display_fraction = kDisplayFraction;
  std::vector<double> fractions = kFaithfulnessFractions;
  int repeats = kDefaultRepeats;
  std::uint64_t seed = 0;
  int ig_steps = kDefaultIgSteps; // 0 skips integrated gradients
};

struct Explanation {
  AttributionReport attribution;
  FaithfulnessReport faithfulness;
  std::optional<IntegratedGradients> gradients;
  std::string svg;
};

// Full explanation of one molecule, featurised under the scorer's hydrogen
// convention.
inline Explanation explain_molecule(const Scorer &scorer, const chem::Molecule &mol, const ExplainOptions &opt = {}) {
  const auto g = features::featurize(mol, {.explicit_h = scorer.explicit_h()});
  Explanation e;
  e.attribution = occlusion_attribution(scorer, g, opt.display_fraction);
  e.attribution.smiles = chem::canonical_smiles(mol);
  e.faithfulness = faithfulness_test(scorer, g, e.attribution, opt.fractions, opt.repeats, opt.seed);
  if (opt.ig_steps > 0)
    e.gradients = integrated_gradients(scorer, g, opt.ig_steps);
  e.svg = depict_svg(mol, e.attribution);
  return e;
}

inline Json to_json(const Explanation &e) {
  Json j = {{"attribution", to_json(e.attribution)}, {"faithfulness", to_json(e.faithfulness)}};
  j["integrated_gradients"] = e.gradients ? to_json(*e.gradients) : Json(nullptr);
  j["svg"] = e.svg;
  return j;
}

} // namespace onco::explain

#endif // ONCOGAT_EXPLAIN_REPORT_HPP
