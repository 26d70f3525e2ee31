//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_AUTODIFF_OPTIM_HPP
#define ONCOGAT_AUTODIFF_OPTIM_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "oncogat/autodiff/tape.hpp"

namespace onco::ad {

struct AdamWConfig {
  double lr = 1e-3;
  double weight_decay = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adam with decoupled weight decay. Moments are keyed by position in the
// parameter list, which must stay fixed between steps.
class AdamW {
public:
  explicit AdamW(AdamWConfig cfg = {}) : cfg_(cfg) { }

  const AdamWConfig &config() const { return cfg_; }
  void set_lr(double lr) { cfg_.lr = lr; }
  std::int64_t steps() const { return step_; }

  void step(const std::vector<Parameter *> &params) {
    if (m_.empty()) {
      for (auto *p: params) {
        m_.push_back(Matrix::Zero(p->value.rows(), p->value.cols()));
        v_.push_back(Matrix::Zero(p->value.rows(), p->value.cols()));
      }
    }
    require(m_.size() == params.size(), "ShapeMismatch", "parameter list changed between optimizer steps");
    for (std::size_t i = 0; i < params.size(); ++i) {
      const auto &p = *params[i];
      if (p.grad.rows() != p.value.rows() || p.grad.cols() != p.value.cols() ||
          m_[i].rows() != p.value.rows() || m_[i].cols() != p.value.cols())
        throw Error("ShapeMismatch", "gradient or moment shape differs from parameter " + p.name);
    }
    ++step_;
    const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(step_));
    const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(step_));
    for (std::size_t i = 0; i < params.size(); ++i) {
      auto &p = *params[i];
      m_[i] = cfg_.beta1 * m_[i] + (1.0 - cfg_.beta1) * p.grad;
      v_[i] = cfg_.beta2 * v_[i] + (1.0 - cfg_.beta2) * p.grad.cwiseProduct(p.grad);
      const Matrix old = p.value;
      const auto mhat = (m_[i] / bc1).array();
      const auto vhat = (v_[i] / bc2).array();
      p.value -= (cfg_.lr * mhat / (vhat.sqrt() + cfg_.eps)).matrix();
      p.value -= cfg_.lr * cfg_.weight_decay * old;
    }
  }

  const std::vector<Matrix> &first_moments() const { return m_; }
  const std::vector<Matrix> &second_moments() const { return v_; }

private:
  AdamWConfig cfg_;
  std::vector<Matrix> m_, v_;
  std::int64_t step_ = 0;
};

// Draws indices with probability inversely proportional to class frequency:
// a class uniformly, then a member of it uniformly.
class WeightedSampler {
public:
  WeightedSampler(const std::vector<int> &labels, int n_classes, std::uint64_t seed) : rng_(seed) {
    require(n_classes >= 1, "EmptyClass", "at least one class required");
    members_.resize(static_cast<std::size_t>(n_classes));
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const int y = labels[i];
      require(y >= 0 && y < n_classes, "EmptyClass", "label " + std::to_string(y) + " outside declared classes");
      members_[static_cast<std::size_t>(y)].push_back(i);
    }
    for (std::size_t c = 0; c < members_.size(); ++c)
      if (members_[c].empty())
        throw Error("EmptyClass", "class " + std::to_string(c) + " has no examples");
  }

  std::size_t next() {
    const auto &m = members_[rng_.below(members_.size())];
    return m[rng_.below(m.size())];
  }

  std::vector<std::size_t> draw(std::size_t n) {
    std::vector<std::size_t> out(n);
    for (auto &i: out)
      i = next();
    return out;
  }

  // Sampling weight of one example: 1 / count(class).
  double weight(int cls) const { return 1.0 / static_cast<double>(members_.at(static_cast<std::size_t>(cls)).size()); }

private:
  Rng rng_;
  std::vector<std::vector<std::size_t>> members_;
};

} // namespace onco::ad

#endif // ONCOGAT_AUTODIFF_OPTIM_HPP
