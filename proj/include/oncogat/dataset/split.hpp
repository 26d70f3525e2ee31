//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_DATASET_SPLIT_HPP
#define ONCOGAT_DATASET_SPLIT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "oncogat/core/csv.hpp"
#include "oncogat/core/error.hpp"
#include "oncogat/core/random.hpp"
#include "oncogat/dataset/cluster.hpp"
#include "oncogat/features/fingerprint.hpp"

namespace onco::dataset {

enum class Fold : int { train = 0, val = 1, test = 2 };
enum class SplitMethod { random, butina, density };

inline const char *fold_name(Fold f) {
  switch (f) {
  case Fold::train: return "train";
  case Fold::val: return "val";
  case Fold::test: return "test";
  }
  return "train";
}

inline Fold parse_fold(std::string_view s) {
  if (s == "train")
    return Fold::train;
  if (s == "val")
    return Fold::val;
  if (s == "test")
    return Fold::test;
  throw Error("SchemaMismatch", "unknown fold '" + std::string(s) + "'");
}

inline const char *method_name(SplitMethod m) {
  switch (m) {
  case SplitMethod::random: return "random";
  case SplitMethod::butina: return "butina";
  case SplitMethod::density: return "density";
  }
  return "random";
}

inline SplitMethod parse_method(std::string_view s) {
  if (s == "random")
    return SplitMethod::random;
  if (s == "butina")
    return SplitMethod::butina;
  if (s == "density")
    return SplitMethod::density;
  throw Error("InvalidArgument", "unknown split method '" + std::string(s) + "'");
}

using Ratios = std::array<double, 3>;

inline void check_ratios(const Ratios &r) {
  for (double x: r)
    require(x >= 0.0, "RatiosDontSumToOne", "fold ratios must be non-negative");
  if (std::abs(r[0] + r[1] + r[2] - 1.0) > 1e-9)
    throw Error("RatiosDontSumToOne", "fold ratios sum to " + csv::number(r[0] + r[1] + r[2]));
}

// Fold per compound, aligned with `compounds`. cluster_id is -1 for random
// splits.
struct DatasetSplit {
  std::vector<std::string> compounds;
  std::vector<Fold> fold;
  std::vector<int> cluster_id;
  SplitMethod method = SplitMethod::random;
  std::uint64_t seed = 0;
  Ratios ratios = {0.70, 0.15, 0.15};
  std::vector<std::string> warnings;

  std::vector<int> members(Fold f) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < fold.size(); ++i)
      if (fold[i] == f)
        out.push_back(static_cast<int>(i));
    return out;
  }

  std::map<std::string, Fold> lookup() const {
    std::map<std::string, Fold> out;
    for (std::size_t i = 0; i < compounds.size(); ++i)
      out.emplace(compounds[i], fold[i]);
    return out;
  }
};

// Noise labels (-1) become singleton clusters with fresh ids after the
// largest label.
inline std::vector<int> clusters_with_singletons(std::vector<int> labels) {
  int next = 0;
  for (int l: labels)
    next = std::max(next, l + 1);
  for (auto &l: labels)
    if (l < 0)
      l = next++;
  return labels;
}

// Whole clusters are assigned in seeded random order (largest first, so
// late large clusters cannot overshoot) to the fold with the largest
// remaining deficit against its target count.
inline DatasetSplit assign_folds(const std::vector<int> &cluster_of, const Ratios &ratios,
                                 std::uint64_t seed) {
  check_ratios(ratios);
  const int n = static_cast<int>(cluster_of.size());
  const auto ids = clusters_with_singletons(cluster_of);
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i)
    groups[ids[i]].push_back(i);
  std::vector<int> order;
  for (const auto &[id, m]: groups)
    order.push_back(id);
  Rng rng(seed);
  rng.shuffle(order);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return groups[a].size() > groups[b].size(); });

  DatasetSplit out;
  out.fold.assign(n, Fold::train);
  out.cluster_id = ids;
  out.seed = seed;
  out.ratios = ratios;
  std::array<double, 3> count = {0, 0, 0};
  for (int id: order) {
    int best = 0;
    double best_deficit = -1e300;
    for (int f = 0; f < 3; ++f) {
      if (ratios[f] <= 0.0)
        continue;
      const double deficit = ratios[f] * n - count[f];
      if (deficit > best_deficit) {
        best_deficit = deficit;
        best = f;
      }
    }
    for (int i: groups[id])
      out.fold[i] = static_cast<Fold>(best);
    count[best] += static_cast<double>(groups[id].size());
  }
  std::size_t largest = 0;
  for (const auto &[id, m]: groups)
    largest = std::max(largest, m.size());
  if (n > 0 && largest * 10 > static_cast<std::size_t>(n))
    out.warnings.push_back("largest cluster holds " + std::to_string(largest) + " of " +
                           std::to_string(n) + " compounds; fold ratios may be far from target");
  return out;
}

// Independent per-compound draws.
inline DatasetSplit random_split(std::size_t n, const Ratios &ratios, std::uint64_t seed) {
  check_ratios(ratios);
  DatasetSplit out;
  out.method = SplitMethod::random;
  out.seed = seed;
  out.ratios = ratios;
  out.fold.resize(n);
  out.cluster_id.assign(n, -1);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    out.fold[i] = u < ratios[0] ? Fold::train : u < ratios[0] + ratios[1] ? Fold::val : Fold::test;
  }
  return out;
}

struct SimilarityAudit {
  std::vector<int> test_index;
  std::vector<double> max_similarity; // per test compound, against train
  std::array<double, 5> quantiles{}; // min, q25, median, q75, max
  std::array<int, 10> histogram{};   // bins of width 0.1, last closed

  double median() const { return quantiles[2]; }
};

// Linear-interpolated quantile of sorted data.
inline double quantile_sorted(const std::vector<double> &v, double q) {
  if (v.empty())
    return 0.0;
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

inline SimilarityAudit audit_split(const DatasetSplit &split,
                                   const std::vector<features::Fingerprint> &fps) {
  require(fps.size() == split.fold.size(), "SchemaMismatch", "fingerprint and split sizes differ");
  SimilarityAudit a;
  const auto train = split.members(Fold::train);
  for (int t: split.members(Fold::test)) {
    double best = 0.0;
    for (int r: train)
      best = std::max(best, features::tanimoto(fps[t], fps[r]));
    a.test_index.push_back(t);
    a.max_similarity.push_back(best);
    a.histogram[std::min(9, static_cast<int>(best * 10.0))] += 1;
  }
  auto sorted = a.max_similarity;
  std::sort(sorted.begin(), sorted.end());
  const double qs[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int i = 0; i < 5; ++i)
    a.quantiles[i] = quantile_sorted(sorted, qs[i]);
  return a;
}

// Highest similarity between any two compounds in different folds.
inline double max_cross_fold_similarity(const DatasetSplit &split,
                                        const std::vector<features::Fingerprint> &fps) {
  double best = 0.0;
  for (std::size_t i = 0; i < fps.size(); ++i)
    for (std::size_t j = i + 1; j < fps.size(); ++j)
      if (split.fold[i] != split.fold[j])
        best = std::max(best, features::tanimoto(fps[i], fps[j]));
  return best;
}

struct SplitOptions {
  SplitMethod method = SplitMethod::density;
  std::uint64_t seed = 0;
  Ratios ratios = {0.70, 0.15, 0.15};
  double exclusion_threshold = 0.95;
  double butina_threshold = 0.6;
  int min_cluster_size = 5;
};

struct SplitResult {
  DatasetSplit split;     // over the compounds that survived exclusion
  Exclusion exclusion;    // indices into the input compound list
  std::vector<int> index; // input index of each split compound
};

// Full pipeline over unique canonical compounds: near-duplicate exclusion,
// clustering per method, fold assignment.
inline SplitResult split_compounds(const std::vector<std::string> &canonical,
                                   const std::vector<features::Fingerprint> &fps,
                                   const SplitOptions &opt) {
  SplitResult out;
  out.exclusion = exclude_near_duplicates(canonical, fps, opt.exclusion_threshold);
  out.index = out.exclusion.kept;
  std::vector<features::Fingerprint> kept;
  for (int i: out.index)
    kept.push_back(fps[i]);
  if (opt.method == SplitMethod::random) {
    out.split = random_split(kept.size(), opt.ratios, opt.seed);
  } else {
    std::vector<int> cluster_of(kept.size(), -1);
    if (opt.method == SplitMethod::butina) {
      const auto clusters = butina_cluster(kept, opt.butina_threshold);
      for (std::size_t c = 0; c < clusters.size(); ++c)
        for (int i: clusters[c])
          cluster_of[i] = static_cast<int>(c);
    } else {
      cluster_of = density_cluster(features::jaccard_distance_matrix(kept), opt.min_cluster_size);
    }
    out.split = assign_folds(cluster_of, opt.ratios, opt.seed);
  }
  out.split.method = opt.method;
  for (int i: out.index)
    out.split.compounds.push_back(canonical[i]);
  return out;
}

inline std::string manifest_csv(const DatasetSplit &s) {
  std::string out = csv::join({"canonical_smiles", "fold", "cluster_id", "method", "seed"}) + "\n";
  for (std::size_t i = 0; i < s.compounds.size(); ++i)
    out += csv::join({s.compounds[i], fold_name(s.fold[i]), std::to_string(s.cluster_id[i]),
                      method_name(s.method), std::to_string(s.seed)}) +
           "\n";
  return out;
}

inline DatasetSplit parse_manifest(std::string_view text) {
  const auto rows = csv::parse(text);
  require(!rows.empty(), "MissingColumn", "manifest has no header");
  const auto c_smi = csv::column(rows[0], "canonical_smiles");
  const auto c_fold = csv::column(rows[0], "fold");
  const auto c_cl = csv::column(rows[0], "cluster_id");
  const auto c_m = csv::column(rows[0], "method");
  const auto c_seed = csv::column(rows[0], "seed");
  DatasetSplit s;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto &row = rows[r];
    require(row.size() > std::max({c_smi, c_fold, c_cl, c_m, c_seed}), "SchemaMismatch",
            "manifest row " + std::to_string(r) + " is short");
    s.compounds.push_back(row[c_smi]);
    s.fold.push_back(parse_fold(row[c_fold]));
    s.cluster_id.push_back(std::stoi(row[c_cl]));
    s.method = parse_method(row[c_m]);
    s.seed = std::stoull(row[c_seed]);
  }
  return s;
}

inline std::string audit_csv(const DatasetSplit &s, const SimilarityAudit &a) {
  std::string out = csv::join({"compound", "max_cross_fold_similarity"}) + "\n";
  for (std::size_t k = 0; k < a.test_index.size(); ++k)
    out += csv::join({s.compounds[a.test_index[k]], csv::number(a.max_similarity[k])}) + "\n";
  return out;
}

inline std::string audit_summary_csv(const SimilarityAudit &a) {
  std::string out = "statistic,value\n";
  const char *names[5] = {"min", "q25", "median", "q75", "max"};
  for (int i = 0; i < 5; ++i)
    out += std::string(names[i]) + "," + csv::number(a.quantiles[i]) + "\n";
  for (int b = 0; b < 10; ++b)
    out += "bin_" + csv::number(b / 10.0) + "_" + csv::number((b + 1) / 10.0) + "," +
           std::to_string(a.histogram[b]) + "\n";
  return out;
}

} // namespace onco::dataset

#endif // ONCOGAT_DATASET_SPLIT_HPP
