//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_EXPLAIN_SCORER_HPP
#define ONCOGAT_EXPLAIN_SCORER_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "oncogat/model.hpp"

namespace onco::explain {

// Scalar target of one molecule as a function of its node-feature matrix.
// Topology, edge features and global features stay fixed.
class Scorer {
public:
  virtual ~Scorer() = default;

  virtual bool explicit_h() const = 0;
  virtual int ensemble_size() const { return 1; }

  // Target score for each node-feature variant of g.
  virtual std::vector<double> scores(const features::FeaturizedGraph &g, const std::vector<Matrix> &variants) const = 0;

  // d score / d node_features for each variant of g.
  virtual std::vector<Matrix> gradients(const features::FeaturizedGraph &g,
                                        const std::vector<Matrix> &variants) const = 0;

  // Positive-class probability of the unmodified graph, for classifiers.
  virtual std::optional<double> probability(const features::FeaturizedGraph &) const { return std::nullopt; }

  double score(const features::FeaturizedGraph &g) const { return scores(g, {g.node_features}).front(); }

  void check(const features::FeaturizedGraph &g) const {
    if (g.layout_version != features::kLayoutVersion)
      throw ModelError("LayoutVersionMismatch", "graph layout version " + std::to_string(g.layout_version) +
                                                   " does not match " + std::to_string(features::kLayoutVersion));
    if (g.explicit_h != explicit_h())
      throw ModelError("LayoutVersionMismatch", "graph hydrogen convention differs from the scorer");
  }
};

// Mean over checkpoints of the raw positive-class logit (classifiers) or the
// regression output. All members share one task and hydrogen convention.
class EnsembleScorer final : public Scorer {
public:
  explicit EnsembleScorer(std::vector<const model::Checkpoint *> members, int chunk = 64)
      : members_(std::move(members)), chunk_(chunk) {
    require(!members_.empty(), "EmptyEnsemble", "explanation needs at least one checkpoint");
    const auto &first = *members_.front();
    for (const auto *c: members_) {
      if (c->model.config().task != first.model.config().task)
        throw Error("MixedEnsemble", "checkpoints disagree on the task");
      if (c->explicit_h != first.explicit_h || c->layout_version != first.layout_version)
        throw ModelError("LayoutVersionMismatch", "checkpoints disagree on the feature layout");
    }
    if (first.layout_version != features::kLayoutVersion)
      throw ModelError("LayoutVersionMismatch", "checkpoint layout does not match this build");
  }

  bool explicit_h() const override { return members_.front()->explicit_h; }
  int ensemble_size() const override { return static_cast<int>(members_.size()); }
  model::Task task() const { return members_.front()->model.config().task; }

  std::vector<double> scores(const features::FeaturizedGraph &g, const std::vector<Matrix> &variants) const override {
    check(g);
    std::vector<double> out(variants.size(), 0.0);
    for_chunks(g, variants, [&](std::size_t s, const model::GraphBatch &b) {
      for (const auto *c: members_) {
        const Matrix y = c->model.predict(rescale(b, *c, g));
        for (Eigen::Index i = 0; i < y.rows(); ++i)
          out[s + static_cast<std::size_t>(i)] += y(i, target_col());
      }
    });
    for (auto &v: out)
      v /= static_cast<double>(members_.size());
    return out;
  }

  std::vector<Matrix> gradients(const features::FeaturizedGraph &g,
                                const std::vector<Matrix> &variants) const override {
    check(g);
    std::vector<Matrix> out(variants.size(), Matrix::Zero(g.n_nodes(), features::kAtomFeatureDim));
    const int n = g.n_nodes();
    for_chunks(g, variants, [&](std::size_t s, const model::GraphBatch &b) {
      for (const auto *c: members_) {
        ad::Tape t(false);
        auto x = t.leaf(b.node_features);
        auto tr = c->model.forward(t, x, rescale(b, *c, g));
        t.backward(ad::sum(ad::slice_cols(tr.output, target_col(), 1)));
        const Matrix gx = t.gradient(x);
        for (int v = 0; v < b.n_graphs(); ++v)
          out[s + static_cast<std::size_t>(v)] += gx.middleRows(static_cast<Eigen::Index>(v) * n, n);
      }
    });
    for (auto &m: out)
      m /= static_cast<double>(members_.size());
    return out;
  }

  std::optional<double> probability(const features::FeaturizedGraph &g) const override {
    if (task() != model::Task::classify)
      return std::nullopt;
    check(g);
    double p = 0.0;
    for (const auto *c: members_)
      p += model::predict_scores(*c, {&g}).front();
    return p / static_cast<double>(members_.size());
  }

private:
  Eigen::Index target_col() const { return task() == model::Task::classify ? 1 : 0; }

  // Batches are built once with the first member's scaler; members with a
  // different scaler get their own global rows.
  model::GraphBatch rescale(const model::GraphBatch &b, const model::Checkpoint &c,
                            const features::FeaturizedGraph &g) const {
    if (&c == members_.front())
      return b;
    model::GraphBatch r = b;
    const model::GraphBatch one = model::make_batch(g, c.scaler);
    for (int i = 0; i < r.n_graphs(); ++i)
      r.globals.row(i) = one.globals.row(0);
    return r;
  }

  template <class F>
  void for_chunks(const features::FeaturizedGraph &g, const std::vector<Matrix> &variants, F &&f) const {
    for (const auto &v: variants)
      require(v.rows() == g.node_features.rows() && v.cols() == g.node_features.cols(), "ShapeMismatch",
              "node-feature variant has the wrong shape");
    for (std::size_t s = 0; s < variants.size(); s += static_cast<std::size_t>(chunk_)) {
      const std::size_t e = std::min(variants.size(), s + static_cast<std::size_t>(chunk_));
      std::vector<features::FeaturizedGraph> copies(e - s, g);
      std::vector<const features::FeaturizedGraph *> ptrs;
      for (std::size_t i = s; i < e; ++i) {
        copies[i - s].node_features = variants[i];
        ptrs.push_back(&copies[i - s]);
      }
      f(s, model::make_batch(ptrs, members_.front()->scaler));
    }
  }

  std::vector<const model::Checkpoint *> members_;
  int chunk_;
};

// score = bias + sum over nodes of weights . x_node. Occlusion and
// integrated gradients are exact on it.
class LinearSurrogate final : public Scorer {
public:
  LinearSurrogate(Eigen::RowVectorXd weights, double bias, bool explicit_h)
      : w_(std::move(weights)), bias_(bias), explicit_h_(explicit_h) {
    require(w_.size() == features::kAtomFeatureDim, "ShapeMismatch", "surrogate weights must span the atom features");
  }

  bool explicit_h() const override { return explicit_h_; }

  std::vector<double> scores(const features::FeaturizedGraph &g, const std::vector<Matrix> &variants) const override {
    check(g);
    std::vector<double> out;
    out.reserve(variants.size());
    for (const auto &v: variants)
      out.push_back(bias_ + (v * w_.transpose()).sum());
    return out;
  }

  std::vector<Matrix> gradients(const features::FeaturizedGraph &g,
                                const std::vector<Matrix> &variants) const override {
    check(g);
    return std::vector<Matrix>(variants.size(), w_.replicate(g.n_nodes(), 1));
  }

  const Eigen::RowVectorXd &weights() const { return w_; }
  double bias() const { return bias_; }

private:
  Eigen::RowVectorXd w_;
  double bias_;
  bool explicit_h_;
};

// Copy of the node features with every row of the listed groups zeroed.
inline Matrix mask_groups(const features::FeaturizedGraph &g, const std::vector<int> &groups) {
  Matrix x = g.node_features;
  for (int h: groups) {
    require(h >= 0 && h < static_cast<int>(g.h_groups.size()), "InvalidArgument", "group index out of range");
    for (int u: g.h_groups[static_cast<std::size_t>(h)])
      x.row(u).setZero();
  }
  return x;
}

} // namespace onco::explain

#endif // ONCOGAT_EXPLAIN_SCORER_HPP
