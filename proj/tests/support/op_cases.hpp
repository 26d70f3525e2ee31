//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_TESTS_SUPPORT_OP_CASES_HPP
#define ONCOGAT_TESTS_SUPPORT_OP_CASES_HPP

#include <functional>
#include <vector>

#include "oncogat/autodiff.hpp"
#include "support/gradcheck.hpp"

namespace onco::testing {

// Values bounded away from zero so kinks stay outside the difference stencil.
inline Matrix away_from_zero(Rng &rng, Eigen::Index r, Eigen::Index c) {
  Matrix x = random_matrix(rng, r, c);
  for (Eigen::Index i = 0; i < x.size(); ++i)
    x.data()[i] += x.data()[i] >= 0 ? 0.05 : -0.05;
  return x;
}

inline std::vector<int> random_index(Rng &rng, std::size_t n, int limit, bool cover) {
  std::vector<int> idx(n);
  for (std::size_t i = 0; i < n; ++i)
    idx[i] = cover && static_cast<int>(i) < limit ? static_cast<int>(i) : static_cast<int>(rng.below(limit));
  rng.shuffle(idx);
  return idx;
}

inline Eigen::Index dim(Rng &rng, int lo, int hi) { return lo + static_cast<Eigen::Index>(rng.below(hi - lo + 1)); }

// One randomly shaped gradient check per call; run returns the relative error.
struct OpCase {
  const char *name;
  std::function<double(Rng &)> run;
};

inline std::vector<OpCase> op_cases() {
  using namespace ad;
  std::vector<OpCase> cases;
  auto unary_case = [&](const char *name, std::function<Tensor(Tensor)> op, bool positive, bool kink) {
    cases.push_back({name, [op, positive, kink](Rng &rng) {
                       const auto r = dim(rng, 1, 6), c = dim(rng, 1, 6);
                       Matrix x = kink ? away_from_zero(rng, r, c) : random_matrix(rng, r, c);
                       if (positive)
                         x = (x.array().abs() + 0.5).matrix();
                       return gradcheck([op](Tape &t, const auto &in) { return project(t, op(in[0])); }, {x});
                     }});
  };
  unary_case("relu", [](Tensor a) { return relu(a); }, false, true);
  unary_case("sigmoid", [](Tensor a) { return sigmoid(a); }, false, false);
  unary_case("tanh", [](Tensor a) { return onco::ad::tanh(a); }, false, false);
  unary_case("sqrt", [](Tensor a) { return onco::ad::sqrt(a); }, true, false);
  unary_case("exp", [](Tensor a) { return onco::ad::exp(a); }, false, false);
  unary_case("log", [](Tensor a) { return onco::ad::log(a); }, true, false);
  unary_case("square", [](Tensor a) { return square(a); }, false, false);
  unary_case("scale", [](Tensor a) { return scale(a, -1.7); }, false, false);
  unary_case("add_scalar", [](Tensor a) { return add_scalar(a, 0.3); }, false, false);
  unary_case("softmax_rows", [](Tensor a) { return softmax_rows(a); }, false, false);
  unary_case("log_softmax_rows", [](Tensor a) { return log_softmax_rows(a); }, false, false);
  unary_case("sum", [](Tensor a) { return sum(a); }, false, false);
  unary_case("mean", [](Tensor a) { return mean(a); }, false, false);
  unary_case("sum_rows", [](Tensor a) { return sum_rows(a); }, false, false);
  unary_case("transpose", [](Tensor a) { return transpose(a); }, false, false);
  unary_case("sum_cols", [](Tensor a) { return sum_cols(a); }, false, false);

  cases.push_back({"matmul", [](Rng &rng) {
                     const auto a = dim(rng, 1, 6), b = dim(rng, 1, 6), c = dim(rng, 1, 6);
                     return gradcheck([](Tape &t, const auto &x) { return project(t, matmul(x[0], x[1])); },
                                      {random_matrix(rng, a, b), random_matrix(rng, b, c)});
                   }});
  for (auto op: {BinaryOp::add, BinaryOp::sub, BinaryOp::mul, BinaryOp::div}) {
    cases.push_back({"binary_broadcast", [op](Rng &rng) {
                       const auto r = dim(rng, 1, 5), c = dim(rng, 1, 5);
                       const int mode = static_cast<int>(rng.below(3));
                       const auto br = mode == 1 ? 1 : r, bc = mode == 2 ? 1 : c;
                       Matrix b = random_matrix(rng, br, bc);
                       if (op == BinaryOp::div)
                         b = (b.array().abs() + 0.5).matrix();
                       return gradcheck(
                           [op](Tape &t, const auto &x) { return project(t, binary(x[0], x[1], op)); },
                           {random_matrix(rng, r, c), b});
                     }});
  }
  cases.push_back({"dropout_fixed_mask", [](Rng &rng) {
                     const auto r = dim(rng, 1, 6), c = dim(rng, 1, 6);
                     Matrix mask(r, c);
                     for (Eigen::Index i = 0; i < mask.size(); ++i)
                       mask.data()[i] = rng.uniform() < 0.3 ? 0.0 : 1.0 / 0.7;
                     return gradcheck(
                         [mask](Tape &t, const auto &x) { return project(t, dropout_with_mask(x[0], mask)); },
                         {random_matrix(rng, r, c)});
                   }});
  cases.push_back({"concat_slice", [](Rng &rng) {
                     const auto r = dim(rng, 1, 5), c1 = dim(rng, 1, 4), c2 = dim(rng, 1, 4);
                     const auto start = static_cast<Eigen::Index>(rng.below(c1 + c2));
                     const auto count = 1 + static_cast<Eigen::Index>(rng.below(c1 + c2 - start));
                     return gradcheck(
                         [start, count](Tape &t, const auto &x) {
                           auto y = concat_cols({x[0], x[1]});
                           return project(t, concat_cols({slice_cols(y, start, count), x[0]}));
                         },
                         {random_matrix(rng, r, c1), random_matrix(rng, r, c2)});
                   }});
  cases.push_back({"slice_rows", [](Rng &rng) {
                     const auto r = dim(rng, 2, 6), c = dim(rng, 1, 4);
                     const auto start = static_cast<Eigen::Index>(rng.below(r));
                     const auto count = 1 + static_cast<Eigen::Index>(rng.below(r - start));
                     return gradcheck(
                         [start, count](Tape &t, const auto &x) { return project(t, slice_rows(x[0], start, count)); },
                         {random_matrix(rng, r, c)});
                   }});
  cases.push_back({"gather_scatter", [](Rng &rng) {
                     const auto n = dim(rng, 1, 6), e = dim(rng, 1, 12), out = dim(rng, 1, 5), c = dim(rng, 1, 4);
                     auto gi = random_index(rng, static_cast<std::size_t>(e), static_cast<int>(n), false);
                     auto si = random_index(rng, static_cast<std::size_t>(e), static_cast<int>(out), false);
                     return gradcheck(
                         [gi, si, out](Tape &t, const auto &x) {
                           return project(t, scatter_add_rows(gather_rows(x[0], gi), si, out));
                         },
                         {random_matrix(rng, n, c)});
                   }});
  cases.push_back({"segment_softmax", [](Rng &rng) {
                     const auto n_seg = dim(rng, 1, 4), n = n_seg + dim(rng, 0, 8), c = dim(rng, 1, 3);
                     auto seg = random_index(rng, static_cast<std::size_t>(n), static_cast<int>(n_seg), true);
                     return gradcheck(
                         [seg, n_seg](Tape &t, const auto &x) { return project(t, segment_softmax(x[0], seg, n_seg)); },
                         {random_matrix(rng, n, c, 2.0)});
                   }});
  cases.push_back({"segment_matmul_tn", [](Rng &rng) {
                     const auto n_seg = dim(rng, 1, 4), n = n_seg + dim(rng, 0, 8), k = dim(rng, 1, 4),
                                d = dim(rng, 1, 4);
                     auto seg = random_index(rng, static_cast<std::size_t>(n), static_cast<int>(n_seg), true);
                     return gradcheck(
                         [seg, n_seg](Tape &t, const auto &x) {
                           return project(t, segment_matmul_tn(x[0], x[1], seg, n_seg));
                         },
                         {random_matrix(rng, n, k), random_matrix(rng, n, d)});
                   }});
  cases.push_back({"block_attention", [](Rng &rng) {
                     const auto nb = dim(rng, 1, 3), k = dim(rng, 1, 4), d = dim(rng, 1, 4);
                     return gradcheck(
                         [k](Tape &t, const auto &x) {
                           auto a = softmax_rows(block_matmul_nt(x[0], x[1], k));
                           return project(t, block_matmul_nn(a, x[2], k));
                         },
                         {random_matrix(rng, nb * k, d), random_matrix(rng, nb * k, d), random_matrix(rng, nb * k, d)});
                   }});
  cases.push_back({"cross_entropy", [](Rng &rng) {
                     const auto n = dim(rng, 1, 6), c = dim(rng, 2, 5);
                     std::vector<int> y(static_cast<std::size_t>(n));
                     for (auto &v: y)
                       v = static_cast<int>(rng.below(c));
                     std::vector<double> w(static_cast<std::size_t>(c));
                     for (auto &v: w)
                       v = rng.uniform(0.5, 2.0);
                     const double eps = rng.uniform(0.0, 0.45);
                     return gradcheck(
                         [y, w, eps](Tape &, const auto &x) { return cross_entropy_smoothed(x[0], y, eps, w); },
                         {random_matrix(rng, n, c, 2.0)});
                   }});
  cases.push_back({"huber", [](Rng &rng) {
                     const auto n = dim(rng, 1, 8);
                     const double beta = rng.uniform(0.3, 2.0);
                     Matrix target = random_matrix(rng, n, 1, 2.0);
                     Matrix pred = target;
                     // Residuals kept clear of the branch switch at |e| = beta.
                     for (Eigen::Index i = 0; i < n; ++i) {
                       const double mag = rng.uniform() < 0.5 ? rng.uniform(0.0, 0.8) * beta : rng.uniform(1.2, 3.0) * beta;
                       pred(i, 0) += rng.uniform() < 0.5 ? mag : -mag;
                     }
                     return gradcheck(
                         [target, beta](Tape &, const auto &x) { return huber_loss(x[0], target, beta); }, {pred});
                   }});
  return cases;
}

} // namespace onco::testing

#endif // ONCOGAT_TESTS_SUPPORT_OP_CASES_HPP
