//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <functional>
#include <numeric>

#include <gtest/gtest.h>

#include "oncogat/autodiff.hpp"
#include "support/gradcheck.hpp"
#include "support/op_cases.hpp"

namespace {

using namespace onco::ad;
using onco::Matrix;
using onco::Rng;
using onco::testing::gradcheck;
using onco::testing::dim;
using onco::testing::op_cases;
using onco::testing::random_index;
using onco::testing::project;
using onco::testing::random_matrix;

constexpr double kTol = 1e-4;
constexpr int kReps = 25;

std::string error_code(const std::function<void()> &f) {
  try {
    f();
  } catch (const onco::Error &e) {
    return e.code();
  }
  return "";
}

Matrix m(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto &r: rows) {
    Eigen::Index j = 0;
    for (double v: r)
      out(i, j++) = v;
    ++i;
  }
  return out;
}

TEST(Tape, SquareDerivative) {
  Tape t;
  auto x = t.leaf(Matrix::Constant(1, 1, 3.0));
  t.backward(mul(x, x));
  EXPECT_DOUBLE_EQ(t.gradient(x)(0, 0), 6.0);
}

TEST(Tape, ConstantHasZeroGradient) {
  Tape t;
  auto x = t.leaf(Matrix::Constant(1, 1, 2.0));
  auto c = t.constant(Matrix::Constant(1, 1, 5.0));
  t.backward(add(c, scale(c, 2.0)));
  EXPECT_EQ(t.gradient(x)(0, 0), 0.0);
  EXPECT_FALSE(t.requires_grad(c.id));
}

TEST(Tape, NotScalarLoss) {
  Tape t;
  auto x = t.leaf(Matrix::Ones(2, 1));
  EXPECT_EQ(error_code([&] { t.backward(x); }), "NotScalarLoss");
}

TEST(Tape, NonFiniteTrips) {
  Tape t;
  auto x = t.leaf(Matrix::Constant(1, 1, -1.0));
  EXPECT_EQ(error_code([&] { onco::ad::log(x); }), "NonFiniteValue");
  EXPECT_EQ(error_code([&] { div(x, t.constant(Matrix::Zero(1, 1))); }), "NonFiniteValue");
}

TEST(Tape, ParameterGradientsAccumulate) {
  Parameter p("w", Matrix::Constant(1, 1, 2.0));
  for (int i = 0; i < 2; ++i) {
    Tape t;
    auto w = t.param(p);
    t.backward(mul(w, w));
  }
  EXPECT_DOUBLE_EQ(p.grad(0, 0), 8.0);
  p.zero_grad();
  EXPECT_EQ(p.grad(0, 0), 0.0);
}

TEST(Ops, ShapeMismatch) {
  Tape t;
  auto a = t.leaf(Matrix::Ones(2, 3));
  auto b = t.leaf(Matrix::Ones(2, 2));
  EXPECT_EQ(error_code([&] { matmul(b, a.tape->leaf(Matrix::Ones(3, 3))); }), "ShapeMismatch");
  EXPECT_EQ(error_code([&] { add(a, b); }), "ShapeMismatch");
  EXPECT_EQ(error_code([&] { gather_rows(a, {2}); }), "ShapeMismatch");
  EXPECT_EQ(error_code([&] { slice_cols(a, 2, 2); }), "ShapeMismatch");
  EXPECT_EQ(error_code([&] { concat_cols({a, t.leaf(Matrix::Ones(3, 1))}); }), "ShapeMismatch");
}

TEST(Ops, Examples) {
  Tape t;
  EXPECT_DOUBLE_EQ(sigmoid(t.leaf(Matrix::Zero(1, 1))).scalar(), 0.5);
  auto s = segment_softmax(t.leaf(m({{2.0}, {2.0}})), {0, 0}, 1);
  EXPECT_DOUBLE_EQ(s.value()(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(s.value()(1, 0), 0.5);
  auto sc = scatter_add_rows(t.leaf(m({{1, 2}, {3, 4}})), {0, 0}, 1);
  EXPECT_EQ(sc.value(), m({{4, 6}}));
}

TEST(Ops, SegmentSoftmaxSumsToOne) {
  Rng rng(5);
  for (int rep = 0; rep < kReps; ++rep) {
    const auto n_seg = dim(rng, 1, 6);
    const auto n = n_seg + dim(rng, 0, 20);
    const auto seg = random_index(rng, static_cast<std::size_t>(n), static_cast<int>(n_seg), true);
    Tape t;
    auto y = segment_softmax(t.leaf(random_matrix(rng, n, 3, 10.0)), seg, n_seg);
    Matrix sums = Matrix::Zero(n_seg, 3);
    for (std::size_t i = 0; i < seg.size(); ++i)
      sums.row(seg[i]) += y.value().row(static_cast<Eigen::Index>(i));
    EXPECT_LT((sums.array() - 1.0).abs().maxCoeff(), 1e-9);
  }
}

TEST(Ops, Broadcasting) {
  Tape t;
  auto a = t.leaf(m({{1, 2}, {3, 4}}));
  auto row = t.leaf(m({{10, 20}}));
  auto col = t.leaf(m({{1}, {2}}));
  EXPECT_EQ(add(a, row).value(), m({{11, 22}, {13, 24}}));
  EXPECT_EQ(mul(a, col).value(), m({{1, 2}, {6, 8}}));
  t.backward(sum(mul(add(a, row), col)));
  EXPECT_EQ(t.gradient(row), m({{3, 3}}));
  EXPECT_EQ(t.gradient(col), m({{33}, {37}}));
}

TEST(Ops, DropoutModes) {
  Tape infer(false, 1);
  auto x = infer.leaf(Matrix::Ones(50, 40));
  EXPECT_EQ(dropout(x, 0.5).id, x.id);

  Tape a(true, 7), b(true, 7);
  auto ya = dropout(a.leaf(Matrix::Ones(50, 40)), 0.25);
  auto yb = dropout(b.leaf(Matrix::Ones(50, 40)), 0.25);
  EXPECT_EQ(ya.value(), yb.value());
  int zeros = 0;
  for (Eigen::Index i = 0; i < ya.value().size(); ++i) {
    const double v = ya.value().data()[i];
    EXPECT_TRUE(v == 0.0 || std::abs(v - 1.0 / 0.75) < 1e-15);
    zeros += v == 0.0;
  }
  // 2000 Bernoulli(0.25) draws: mean 500, sd ~19.4.
  EXPECT_NEAR(zeros, 500, 60);
  EXPECT_EQ(error_code([&] { dropout(ya, 1.0); }), "InvalidArgument");
}

TEST(Gradients, MatmulFixedShape) {
  Rng rng(1);
  const double err = gradcheck([](Tape &t, const auto &x) { return project(t, matmul(x[0], x[1])); },
                               {random_matrix(rng, 4, 3), random_matrix(rng, 3, 2)});
  EXPECT_LT(err, kTol);
}


TEST(Gradients, EveryOpRandomShapes) {
  Rng rng(2024);
  for (const auto &c: op_cases()) {
    double worst = 0.0;
    for (int rep = 0; rep < kReps; ++rep)
      worst = std::max(worst, c.run(rng));
    EXPECT_LT(worst, kTol) << c.name;
  }
}

TEST(Losses, CrossEntropyExamples) {
  for (double eps: {0.0, 0.1, 0.3}) {
    Tape t;
    auto l = cross_entropy_smoothed(t.leaf(Matrix::Zero(3, 2)), {0, 1, 0}, eps);
    EXPECT_NEAR(l.scalar(), std::log(2.0), 1e-15);
  }
  {
    Tape t;
    auto l = cross_entropy_smoothed(t.leaf(m({{60.0, 0.0}})), {0}, 0.0);
    EXPECT_LT(l.scalar(), 1e-20);
  }
  // logits (1, 0), target 0, eps 0.1: q = (0.95, 0.05).
  const double lse = std::log(std::exp(1.0) + 1.0);
  const double expected = -(0.95 * (1.0 - lse) + 0.05 * (0.0 - lse));
  Tape t;
  EXPECT_NEAR(cross_entropy_smoothed(t.leaf(m({{1.0, 0.0}})), {0}, 0.1).scalar(), expected, 1e-14);
  EXPECT_NEAR(expected, 0.3632616875, 1e-9);
}

TEST(Losses, CrossEntropyClassWeights) {
  Tape t;
  const double base = cross_entropy_smoothed(t.leaf(m({{0.3, -0.2}})), {1}, 0.0).scalar();
  const double weighted = cross_entropy_smoothed(t.leaf(m({{0.3, -0.2}})), {1}, 0.0, {1.0, 3.0}).scalar();
  EXPECT_NEAR(weighted, 3.0 * base, 1e-14);
}

TEST(Losses, CrossEntropyErrors) {
  Tape t;
  auto x = t.leaf(Matrix::Zero(1, 2));
  EXPECT_EQ(error_code([&] { cross_entropy_smoothed(x, {0}, 0.5); }), "BadEpsilon");
  EXPECT_EQ(error_code([&] { cross_entropy_smoothed(x, {0}, -0.1); }), "BadEpsilon");
  EXPECT_EQ(error_code([&] { cross_entropy_smoothed(t.leaf(Matrix::Zero(1, 1)), {0}, 0.1); }), "ShapeMismatch");
}

TEST(Losses, HuberExamples) {
  const double beta = 0.7;
  auto loss = [&](double e) {
    Tape t;
    return huber_loss(t.leaf(Matrix::Constant(1, 1, e)), Matrix::Zero(1, 1), beta).scalar();
  };
  EXPECT_EQ(loss(0.0), 0.0);
  EXPECT_NEAR(loss(beta), beta / 2.0, 1e-15);
  EXPECT_NEAR(0.5 * beta * beta / beta, beta - 0.5 * beta, 1e-15);
  EXPECT_NEAR(loss(std::nextafter(beta, 0.0)), beta / 2.0, 1e-12);
  EXPECT_NEAR(loss(-2.0 * beta), 1.5 * beta, 1e-15);
  Tape t;
  auto p = t.leaf(m({{0.0}, {2.0 * beta}}));
  EXPECT_NEAR(huber_loss(p, Matrix::Zero(2, 1), beta).scalar(), 0.75 * beta, 1e-15);
  EXPECT_EQ(error_code([&] { huber_loss(p, Matrix::Zero(2, 1), 0.0); }), "BadBeta");
}

TEST(AdamW, Examples) {
  {
    Parameter p("p", m({{1.5, -2.0}}));
    AdamW opt({0.1, 0.0});
    opt.step({&p});
    EXPECT_EQ(p.value, m({{1.5, -2.0}}));
  }
  {
    Parameter p("p", Matrix::Constant(1, 1, 2.0));
    p.grad(0, 0) = 1.0;
    AdamW opt({0.1, 0.01});
    opt.step({&p});
    // m_hat = 1, v_hat = 1: -0.1 / (1 + 1e-8) minus 0.1 * 0.01 * 2.
    EXPECT_NEAR(p.value(0, 0) - 2.0, -0.1 / (1.0 + 1e-8) - 0.002, 1e-15);
  }
  {
    Parameter p("p", Matrix::Constant(1, 1, 2.0));
    AdamW opt({0.1, 0.5});
    for (int i = 0; i < 3; ++i) {
      const double before = p.value(0, 0);
      opt.step({&p});
      EXPECT_LT(std::abs(p.value(0, 0)), std::abs(before));
    }
  }
  {
    Parameter p("p", Matrix::Constant(2, 2, 1.0));
    p.grad = Matrix::Ones(2, 3);
    AdamW opt;
    EXPECT_EQ(error_code([&] { opt.step({&p}); }), "ShapeMismatch");
  }
}

TEST(AdamW, ZeroDecayMatchesPlainAdam) {
  Rng rng(3);
  Parameter p("p", random_matrix(rng, 3, 2));
  Matrix ref = p.value, m1 = Matrix::Zero(3, 2), v = Matrix::Zero(3, 2);
  AdamW opt({0.05, 0.0});
  for (int s = 1; s <= 5; ++s) {
    p.grad = random_matrix(rng, 3, 2);
    m1 = 0.9 * m1 + 0.1 * p.grad;
    v = 0.999 * v + 0.001 * p.grad.cwiseProduct(p.grad);
    const Eigen::ArrayXXd mh = m1.array() / (1 - std::pow(0.9, s));
    const Eigen::ArrayXXd vh = v.array() / (1 - std::pow(0.999, s));
    ref -= (0.05 * mh / (vh.sqrt() + 1e-8)).matrix();
    opt.step({&p});
  }
  EXPECT_LT((p.value - ref).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Sampler, MinorityShare) {
  std::vector<int> labels(1000, 0);
  for (int i = 0; i < 100; ++i)
    labels[static_cast<std::size_t>(i) * 10] = 1;
  WeightedSampler s(labels, 2, 11);
  int minority = 0;
  for (auto i: s.draw(10000))
    minority += labels[i];
  EXPECT_NEAR(minority / 10000.0, 0.5, 0.03);
  EXPECT_DOUBLE_EQ(s.weight(1), 1.0 / 100.0);
  EXPECT_DOUBLE_EQ(s.weight(0), 1.0 / 900.0);
}

TEST(Sampler, BalancedWeightsAndDeterminism) {
  std::vector<int> labels = {0, 1, 0, 1};
  WeightedSampler a(labels, 2, 4), b(labels, 2, 4);
  EXPECT_EQ(a.weight(0), a.weight(1));
  EXPECT_EQ(a.draw(100), b.draw(100));
}

TEST(Sampler, EmptyClass) {
  EXPECT_EQ(error_code([] { WeightedSampler({0, 0, 0}, 2, 1); }), "EmptyClass");
  EXPECT_EQ(error_code([] { WeightedSampler({0, 0, 0}, 1, 1); }), "");
}

} // namespace
