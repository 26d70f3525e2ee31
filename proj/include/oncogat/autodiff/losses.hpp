//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_AUTODIFF_LOSSES_HPP
#define ONCOGAT_AUTODIFF_LOSSES_HPP

#include <cmath>
#include <string>
#include <vector>

#include "oncogat/autodiff/ops.hpp"

namespace onco::ad {

struct LossConfig {
  double label_smoothing = 0.1;
  double huber_beta = 1.0;
  std::vector<double> class_weights; // empty means unit weights
};

inline void check_smoothing(double eps) {
  if (!(eps >= 0.0 && eps < 0.5))
    throw Error("BadEpsilon", "label smoothing must lie in [0, 0.5), got " + std::to_string(eps));
}

inline void check_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw Error("BadBeta", "huber beta must be positive, got " + std::to_string(beta));
}

// Mean over rows of -sum_c w_c q_c log softmax(logits)_c with
// q = (1 - eps) onehot + eps / C.
inline Tensor cross_entropy_smoothed(Tensor logits, const std::vector<int> &target, double eps,
                                     const std::vector<double> &class_weights = {}) {
  check_smoothing(eps);
  const auto n = logits.rows(), c = logits.cols();
  require(c >= 2, "ShapeMismatch", "cross entropy needs at least two classes");
  require(static_cast<Eigen::Index>(target.size()) == n, "ShapeMismatch", "one target per logits row required");
  require(class_weights.empty() || static_cast<Eigen::Index>(class_weights.size()) == c, "ShapeMismatch",
          "class_weights must have one entry per class");
  Matrix coef(n, c);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int y = target[static_cast<std::size_t>(i)];
    require(y >= 0 && y < c, "ShapeMismatch", "target class out of range");
    for (Eigen::Index j = 0; j < c; ++j) {
      const double q = (j == y ? 1.0 - eps : 0.0) + eps / static_cast<double>(c);
      const double w = class_weights.empty() ? 1.0 : class_weights[static_cast<std::size_t>(j)];
      coef(i, j) = -w * q / static_cast<double>(n);
    }
  }
  Tape &t = *logits.tape;
  return sum(mul(log_softmax_rows(logits), t.constant(std::move(coef))));
}

inline double huber_value(double e, double beta) {
  const double a = std::abs(e);
  return a < beta ? 0.5 * e * e / beta : a - 0.5 * beta;
}

// Mean elementwise Huber loss of pred - target.
inline Tensor huber_loss(Tensor pred, const Matrix &target, double beta) {
  check_beta(beta);
  if (pred.rows() != target.rows() || pred.cols() != target.cols())
    detail::shape_error("huber_loss", pred.value(), target);
  const Matrix e = pred.value() - target;
  const double inv_n = 1.0 / static_cast<double>(e.size());
  Matrix out(1, 1);
  out(0, 0) = e.unaryExpr([beta](double x) { return huber_value(x, beta); }).sum() * inv_n;
  return pred.tape->record(std::move(out), {pred}, [pred, e, beta, inv_n](Tape &t, int self) {
    const double g = t.node(self).grad(0, 0) * inv_n;
    t.grad(pred.id) += e.unaryExpr([beta, g](double x) {
      return g * (std::abs(x) < beta ? x / beta : (x > 0.0 ? 1.0 : -1.0));
    });
  });
}

} // namespace onco::ad

#endif // ONCOGAT_AUTODIFF_LOSSES_HPP
