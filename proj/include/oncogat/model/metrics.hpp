//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_MODEL_METRICS_HPP
#define ONCOGAT_MODEL_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "oncogat/core/error.hpp"

namespace onco::model {

struct Confusion {
  std::int64_t tn = 0, fp = 0, fn = 0, tp = 0;

  std::int64_t total() const { return tn + fp + fn + tp; }
};

struct ClassificationMetrics {
  double accuracy = 0.0;
  double auc = std::numeric_limits<double>::quiet_NaN();
  double precision = 0.0;
  double recall = 0.0;
  double mcc = 0.0;
  Confusion confusion;
};

// Threshold-dependent metrics. Undefined ratios (empty denominators) are 0.
inline ClassificationMetrics metrics_from_confusion(const Confusion &c) {
  ClassificationMetrics m;
  m.confusion = c;
  const double tp = static_cast<double>(c.tp), tn = static_cast<double>(c.tn);
  const double fp = static_cast<double>(c.fp), fn = static_cast<double>(c.fn);
  const double n = tp + tn + fp + fn;
  m.accuracy = n > 0 ? (tp + tn) / n : 0.0;
  m.precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
  m.recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
  const double den = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  m.mcc = den > 0 ? (tp * tn - fp * fn) / std::sqrt(den) : 0.0;
  return m;
}

inline void check_binary(const std::vector<double> &scores, const std::vector<int> &labels) {
  require(scores.size() == labels.size(), "ShapeMismatch", "one label per score required");
  for (int y: labels)
    require(y == 0 || y == 1, "DegenerateLabels", "labels must be 0 or 1");
}

inline Confusion confusion_at(const std::vector<double> &scores, const std::vector<int> &labels, double threshold) {
  check_binary(scores, labels);
  Confusion c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool pred = scores[i] >= threshold;
    if (labels[i] == 1)
      (pred ? c.tp : c.fn)++;
    else
      (pred ? c.fp : c.tn)++;
  }
  return c;
}

// Area under the ROC curve as the Mann-Whitney rank statistic with tied
// scores sharing their average rank.
inline double roc_auc(const std::vector<double> &scores, const std::vector<int> &labels) {
  check_binary(scores, labels);
  const std::size_t n = scores.size();
  const auto n_pos = static_cast<double>(std::count(labels.begin(), labels.end(), 1));
  const double n_neg = static_cast<double>(n) - n_pos;
  if (n_pos == 0 || n_neg == 0)
    throw Error("DegenerateLabels", "AUC needs both classes");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double pos_rank_sum = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]])
      ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k)
      if (labels[order[k]] == 1)
        pos_rank_sum += avg_rank;
    i = j;
  }
  return (pos_rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg);
}

// Positive when score >= threshold.
inline ClassificationMetrics compute_classification_metrics(const std::vector<double> &scores,
                                                            const std::vector<int> &labels, double threshold) {
  auto m = metrics_from_confusion(confusion_at(scores, labels, threshold));
  m.auc = roc_auc(scores, labels);
  return m;
}

struct CalibratedThreshold {
  double threshold = 0.5;
  double objective = 0.0;
  std::string objective_name = "mcc";
  bool degenerate = false; // all validation scores identical
};

// Scans every distinct score as a threshold and keeps the MCC maximiser;
// the first (lowest) threshold wins ties.
inline CalibratedThreshold calibrate_threshold(const std::vector<double> &scores, const std::vector<int> &labels) {
  check_binary(scores, labels);
  const auto n_pos = std::count(labels.begin(), labels.end(), 1);
  if (n_pos == 0 || n_pos == static_cast<std::ptrdiff_t>(labels.size()))
    throw Error("SingleClassValidation", "threshold calibration needs both classes in validation");
  std::vector<double> cand = scores;
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  CalibratedThreshold best;
  best.objective = -std::numeric_limits<double>::infinity();
  for (double t: cand) {
    const double mcc = metrics_from_confusion(confusion_at(scores, labels, t)).mcc;
    if (mcc > best.objective) {
      best.objective = mcc;
      best.threshold = t;
    }
  }
  best.degenerate = cand.size() == 1;
  return best;
}

struct RegressionMetrics {
  double pearson_r = 0.0;
  double rmse = 0.0;
};

inline RegressionMetrics compute_regression_metrics(const std::vector<double> &pred, const std::vector<double> &target) {
  require(pred.size() == target.size(), "ShapeMismatch", "one prediction per target required");
  if (pred.size() < 2)
    throw Error("ConstantInput", "regression metrics need at least two points");
  const double n = static_cast<double>(pred.size());
  const double mp = std::accumulate(pred.begin(), pred.end(), 0.0) / n;
  const double mt = std::accumulate(target.begin(), target.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0, se = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double dp = pred[i] - mp, dt = target[i] - mt;
    sxy += dp * dt;
    sxx += dp * dp;
    syy += dt * dt;
    se += (pred[i] - target[i]) * (pred[i] - target[i]);
  }
  if (sxx == 0.0 || syy == 0.0)
    throw Error("ConstantInput", "Pearson correlation is undefined for constant input");
  return {sxy / std::sqrt(sxx * syy), std::sqrt(se / n)};
}

} // namespace onco::model

#endif // ONCOGAT_MODEL_METRICS_HPP
