//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_AUTODIFF_TAPE_HPP
#define ONCOGAT_AUTODIFF_TAPE_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "oncogat/core/error.hpp"
#include "oncogat/core/matrix.hpp"
#include "oncogat/core/random.hpp"

namespace onco::ad {

// Learned tensor owned by a model. grad accumulates across backward passes
// until zero_grad.
struct Parameter {
  std::string name;
  Matrix value;
  Matrix grad;

  Parameter() = default;
  Parameter(std::string n, Matrix v)
      : name(std::move(n)), value(std::move(v)), grad(Matrix::Zero(value.rows(), value.cols())) { }

  void zero_grad() { grad.setZero(value.rows(), value.cols()); }
};

class Tape;

// Handle to a node recorded on a tape. Cheap to copy; valid while the tape
// lives.
struct Tensor {
  Tape *tape = nullptr;
  int id = -1;

  const Matrix &value() const;
  Eigen::Index rows() const { return value().rows(); }
  Eigen::Index cols() const { return value().cols(); }
  double scalar() const { return value()(0, 0); }
};

// Records operations in execution order, which is already topological.
// backward() visits nodes in reverse, once each.
class Tape {
public:
  using Backward = std::function<void(Tape &, int)>;

  struct Node {
    Matrix value;
    Matrix grad;
    bool requires_grad = false;
    bool has_grad = false;
    Parameter *param = nullptr;
    Backward backward;
  };

  explicit Tape(bool training = false, std::uint64_t seed = 0) : training_(training), rng_(seed) { }

  Tape(const Tape &) = delete;
  Tape &operator=(const Tape &) = delete;

  bool training() const { return training_; }
  Rng &rng() { return rng_; }

  Tensor constant(Matrix value) { return push(std::move(value), false, nullptr, {}); }

  // Differentiable input that is not a Parameter (gradient tests).
  Tensor leaf(Matrix value) { return push(std::move(value), true, nullptr, {}); }

  Tensor param(Parameter &p) { return push(p.value, true, &p, {}); }

  // Adds an op result. requires_grad is inherited from the inputs.
  Tensor record(Matrix value, std::initializer_list<Tensor> inputs, Backward backward) {
    return record(std::move(value), std::vector<Tensor>(inputs), std::move(backward));
  }

  Tensor record(Matrix value, const std::vector<Tensor> &inputs, Backward backward) {
    bool rg = false;
    for (const auto &t: inputs)
      rg = rg || nodes_[t.id].requires_grad;
    return push(std::move(value), rg, nullptr, rg ? std::move(backward) : Backward{});
  }

  const Node &node(int id) const { return nodes_[id]; }
  const Matrix &value(int id) const { return nodes_[id].value; }
  bool requires_grad(int id) const { return nodes_[id].requires_grad; }

  // Gradient accumulator of a node, zero-initialised on first use.
  Matrix &grad(int id) {
    auto &n = nodes_[id];
    if (!n.has_grad) {
      n.grad = Matrix::Zero(n.value.rows(), n.value.cols());
      n.has_grad = true;
    }
    return n.grad;
  }

  // Gradient of the last backward pass with respect to a node (zero when it
  // did not influence the loss).
  Matrix gradient(Tensor t) {
    return nodes_[t.id].has_grad ? nodes_[t.id].grad
                                 : Matrix::Zero(nodes_[t.id].value.rows(), nodes_[t.id].value.cols());
  }

  void backward(Tensor loss) {
    const auto &lv = nodes_[loss.id].value;
    if (lv.rows() != 1 || lv.cols() != 1)
      throw Error("NotScalarLoss", "backward needs a 1x1 loss, got " + std::to_string(lv.rows()) +
                                       "x" + std::to_string(lv.cols()));
    grad(loss.id)(0, 0) = 1.0;
    for (int i = loss.id; i >= 0; --i) {
      auto &n = nodes_[i];
      if (!n.requires_grad || !n.has_grad)
        continue;
      if (n.backward)
        n.backward(*this, i);
      if (n.param)
        n.param->grad += n.grad;
    }
  }

  std::size_t size() const { return nodes_.size(); }

private:
  Tensor push(Matrix value, bool rg, Parameter *p, Backward bw) {
    if (!value.allFinite())
      throw Error("NonFiniteValue", "non-finite value produced at tape node " +
                                        std::to_string(nodes_.size()));
    Node n;
    n.value = std::move(value);
    n.requires_grad = rg;
    n.param = p;
    n.backward = std::move(bw);
    nodes_.push_back(std::move(n));
    return {this, static_cast<int>(nodes_.size()) - 1};
  }

  std::vector<Node> nodes_;
  bool training_;
  Rng rng_;
};

inline const Matrix &Tensor::value() const { return tape->value(id); }

} // namespace onco::ad

#endif // ONCOGAT_AUTODIFF_TAPE_HPP
