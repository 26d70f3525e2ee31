//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_AUTODIFF_OPS_HPP
#define ONCOGAT_AUTODIFF_OPS_HPP

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "oncogat/autodiff/tape.hpp"

namespace onco::ad {

namespace detail {

using Index = Eigen::Index;

inline std::string shape(const Matrix &m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

[[noreturn]] inline void shape_error(const char *op, const Matrix &a, const Matrix &b) {
  throw Error("ShapeMismatch", std::string(op) + ": incompatible shapes " + shape(a) + " and " + shape(b));
}

// Broadcast result dimension, or -1 when incompatible.
inline Index bdim(Index a, Index b) {
  if (a == b)
    return a;
  if (a == 1)
    return b;
  if (b == 1)
    return a;
  return -1;
}

inline Matrix expand(const Matrix &x, Index r, Index c) {
  if (x.rows() == r && x.cols() == c)
    return x;
  return x.replicate(r / x.rows(), c / x.cols());
}

// Sums a broadcast gradient back down to shape r x c.
inline Matrix reduce(const Matrix &g, Index r, Index c) {
  if (g.rows() == r && g.cols() == c)
    return g;
  Matrix out = g;
  if (r == 1 && out.rows() != 1)
    out = out.colwise().sum().eval();
  if (c == 1 && out.cols() != 1)
    out = out.rowwise().sum().eval();
  return out;
}

inline void check_index(const std::vector<int> &idx, Index limit, const char *op) {
  for (int i: idx)
    if (i < 0 || i >= limit)
      throw Error("ShapeMismatch", std::string(op) + ": index " + std::to_string(i) + " out of range " +
                                       std::to_string(limit));
}

} // namespace detail

inline Tensor matmul(Tensor a, Tensor b) {
  const Matrix &A = a.value(), &B = b.value();
  if (A.cols() != B.rows())
    detail::shape_error("matmul", A, B);
  return a.tape->record(A * B, {a, b}, [a, b](Tape &t, int self) {
    const Matrix &g = t.node(self).grad;
    if (t.requires_grad(a.id))
      t.grad(a.id).noalias() += g * t.value(b.id).transpose();
    if (t.requires_grad(b.id))
      t.grad(b.id).noalias() += t.value(a.id).transpose() * g;
  });
}

inline Tensor transpose(Tensor a) {
  return a.tape->record(a.value().transpose(), {a}, [a](Tape &t, int self) {
    t.grad(a.id) += t.node(self).grad.transpose();
  });
}

enum class BinaryOp { add, sub, mul, div };

inline Tensor binary(Tensor a, Tensor b, BinaryOp op) {
  const Matrix &A = a.value(), &B = b.value();
  const auto r = detail::bdim(A.rows(), B.rows()), c = detail::bdim(A.cols(), B.cols());
  if (r < 0 || c < 0)
    detail::shape_error("elementwise", A, B);
  const Matrix Ae = detail::expand(A, r, c), Be = detail::expand(B, r, c);
  Matrix out;
  switch (op) {
  case BinaryOp::add: out = Ae + Be; break;
  case BinaryOp::sub: out = Ae - Be; break;
  case BinaryOp::mul: out = Ae.cwiseProduct(Be); break;
  case BinaryOp::div: out = Ae.cwiseQuotient(Be); break;
  }
  return a.tape->record(std::move(out), {a, b}, [a, b, op, r, c](Tape &t, int self) {
    const Matrix &g = t.node(self).grad;
    const Matrix &A = t.value(a.id), &B = t.value(b.id);
    if (t.requires_grad(a.id)) {
      Matrix ga;
      switch (op) {
      case BinaryOp::add:
      case BinaryOp::sub: ga = g; break;
      case BinaryOp::mul: ga = g.cwiseProduct(detail::expand(B, r, c)); break;
      case BinaryOp::div: ga = g.cwiseQuotient(detail::expand(B, r, c)); break;
      }
      t.grad(a.id) += detail::reduce(ga, A.rows(), A.cols());
    }
    if (t.requires_grad(b.id)) {
      Matrix gb;
      switch (op) {
      case BinaryOp::add: gb = g; break;
      case BinaryOp::sub: gb = -g; break;
      case BinaryOp::mul: gb = g.cwiseProduct(detail::expand(A, r, c)); break;
      case BinaryOp::div: {
        const Matrix Be = detail::expand(B, r, c);
        gb = -g.cwiseProduct(detail::expand(A, r, c)).cwiseQuotient(Be.cwiseProduct(Be));
        break;
      }
      }
      t.grad(b.id) += detail::reduce(gb, B.rows(), B.cols());
    }
  });
}

inline Tensor add(Tensor a, Tensor b) { return binary(a, b, BinaryOp::add); }
inline Tensor sub(Tensor a, Tensor b) { return binary(a, b, BinaryOp::sub); }
inline Tensor mul(Tensor a, Tensor b) { return binary(a, b, BinaryOp::mul); }
inline Tensor div(Tensor a, Tensor b) { return binary(a, b, BinaryOp::div); }

inline Tensor scale(Tensor a, double s) {
  return a.tape->record(a.value() * s, {a}, [a, s](Tape &t, int self) {
    t.grad(a.id) += t.node(self).grad * s;
  });
}

inline Tensor add_scalar(Tensor a, double s) {
  return a.tape->record((a.value().array() + s).matrix(), {a},
                        [a](Tape &t, int self) { t.grad(a.id) += t.node(self).grad; });
}

// Elementwise op with derivative expressed through input x and output y.
template <class F, class D>
Tensor unary(Tensor a, F f, D dfdx) {
  Matrix out = a.value().unaryExpr(f);
  return a.tape->record(std::move(out), {a}, [a, dfdx](Tape &t, int self) {
    const auto &n = t.node(self);
    const Matrix &x = t.value(a.id);
    Matrix d(x.rows(), x.cols());
    for (Eigen::Index i = 0; i < x.size(); ++i)
      d.data()[i] = dfdx(x.data()[i], n.value.data()[i]);
    t.grad(a.id) += n.grad.cwiseProduct(d);
  });
}

inline Tensor relu(Tensor a) {
  return unary(a, [](double x) { return x > 0.0 ? x : 0.0; },
               [](double x, double) { return x > 0.0 ? 1.0 : 0.0; });
}

inline double sigmoid_scalar(double x) {
  if (x >= 0.0)
    return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

inline Tensor sigmoid(Tensor a) {
  return unary(a, sigmoid_scalar, [](double, double y) { return y * (1.0 - y); });
}

inline Tensor tanh(Tensor a) {
  return unary(a, [](double x) { return std::tanh(x); }, [](double, double y) { return 1.0 - y * y; });
}

inline Tensor sqrt(Tensor a) {
  return unary(a, [](double x) { return std::sqrt(x); }, [](double, double y) { return 0.5 / y; });
}

inline Tensor exp(Tensor a) {
  return unary(a, [](double x) { return std::exp(x); }, [](double, double y) { return y; });
}

inline Tensor log(Tensor a) {
  return unary(a, [](double x) { return std::log(x); }, [](double x, double) { return 1.0 / x; });
}

inline Tensor square(Tensor a) {
  return unary(a, [](double x) { return x * x; }, [](double x, double) { return 2.0 * x; });
}

// Multiplies by a fixed mask (entries 0 or 1/(1-p) for inverted dropout).
inline Tensor dropout_with_mask(Tensor a, const Matrix &mask) {
  if (mask.rows() != a.rows() || mask.cols() != a.cols())
    detail::shape_error("dropout", a.value(), mask);
  return a.tape->record(a.value().cwiseProduct(mask), {a}, [a, mask](Tape &t, int self) {
    t.grad(a.id) += t.node(self).grad.cwiseProduct(mask);
  });
}

// Identity outside training mode; otherwise zeroes entries with probability
// p and scales survivors by 1/(1-p), drawing from the tape's generator.
inline Tensor dropout(Tensor a, double p) {
  require(p >= 0.0 && p < 1.0, "InvalidArgument", "dropout probability must lie in [0, 1)");
  if (!a.tape->training() || p == 0.0)
    return a;
  Matrix mask(a.rows(), a.cols());
  auto &rng = a.tape->rng();
  const double keep = 1.0 / (1.0 - p);
  for (Eigen::Index i = 0; i < mask.size(); ++i)
    mask.data()[i] = rng.uniform() < p ? 0.0 : keep;
  return dropout_with_mask(a, mask);
}

inline Tensor concat_cols(const std::vector<Tensor> &parts) {
  require(!parts.empty(), "ShapeMismatch", "concat of nothing");
  const auto r = parts[0].rows();
  Eigen::Index c = 0;
  for (const auto &p: parts) {
    if (p.rows() != r)
      detail::shape_error("concat", parts[0].value(), p.value());
    c += p.cols();
  }
  Matrix out(r, c);
  Eigen::Index at = 0;
  for (const auto &p: parts) {
    out.middleCols(at, p.cols()) = p.value();
    at += p.cols();
  }
  return parts[0].tape->record(std::move(out), parts, [parts](Tape &t, int self) {
    const Matrix &g = t.node(self).grad;
    Eigen::Index at = 0;
    for (const auto &p: parts) {
      if (t.requires_grad(p.id))
        t.grad(p.id) += g.middleCols(at, p.cols());
      at += p.cols();
    }
  });
}

inline Tensor slice_cols(Tensor a, Eigen::Index start, Eigen::Index count) {
  if (start < 0 || count < 0 || start + count > a.cols())
    throw Error("ShapeMismatch", "slice_cols out of range");
  return a.tape->record(a.value().middleCols(start, count), {a}, [a, start, count](Tape &t, int self) {
    t.grad(a.id).middleCols(start, count) += t.node(self).grad;
  });
}

inline Tensor slice_rows(Tensor a, Eigen::Index start, Eigen::Index count) {
  if (start < 0 || count < 0 || start + count > a.rows())
    throw Error("ShapeMismatch", "slice_rows out of range");
  return a.tape->record(a.value().middleRows(start, count), {a}, [a, start, count](Tape &t, int self) {
    t.grad(a.id).middleRows(start, count) += t.node(self).grad;
  });
}

inline Tensor sum(Tensor a) {
  Matrix out(1, 1);
  out(0, 0) = a.value().sum();
  return a.tape->record(std::move(out), {a}, [a](Tape &t, int self) {
    t.grad(a.id).array() += t.node(self).grad(0, 0);
  });
}

inline Tensor mean(Tensor a) { return scale(sum(a), 1.0 / static_cast<double>(a.value().size())); }

// Column sums: R x C -> 1 x C.
inline Tensor sum_rows(Tensor a) {
  return a.tape->record(a.value().colwise().sum(), {a}, [a](Tape &t, int self) {
    t.grad(a.id).rowwise() += t.node(self).grad.row(0);
  });
}

// Row sums: R x C -> R x 1.
inline Tensor sum_cols(Tensor a) {
  return a.tape->record(a.value().rowwise().sum(), {a}, [a](Tape &t, int self) {
    t.grad(a.id).colwise() += t.node(self).grad.col(0);
  });
}

inline Tensor gather_rows(Tensor a, std::vector<int> idx) {
  detail::check_index(idx, a.rows(), "gather_rows");
  const Matrix &A = a.value();
  Matrix out(static_cast<Eigen::Index>(idx.size()), A.cols());
  for (std::size_t i = 0; i < idx.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = A.row(idx[i]);
  return a.tape->record(std::move(out), {a}, [a, idx = std::move(idx)](Tape &t, int self) {
    const Matrix &g = t.node(self).grad;
    Matrix &ga = t.grad(a.id);
    for (std::size_t i = 0; i < idx.size(); ++i)
      ga.row(idx[i]) += g.row(static_cast<Eigen::Index>(i));
  });
}

// out[idx[i]] += a[i]; out has n rows.
inline Tensor scatter_add_rows(Tensor a, std::vector<int> idx, Eigen::Index n) {
  require(static_cast<Eigen::Index>(idx.size()) == a.rows(), "ShapeMismatch",
          "scatter_add_rows: one index per row required");
  detail::check_index(idx, n, "scatter_add_rows");
  const Matrix &A = a.value();
  Matrix out = Matrix::Zero(n, A.cols());
  for (std::size_t i = 0; i < idx.size(); ++i)
    out.row(idx[i]) += A.row(static_cast<Eigen::Index>(i));
  return a.tape->record(std::move(out), {a}, [a, idx = std::move(idx)](Tape &t, int self) {
    const Matrix &g = t.node(self).grad;
    Matrix &ga = t.grad(a.id);
    for (std::size_t i = 0; i < idx.size(); ++i)
      ga.row(static_cast<Eigen::Index>(i)) += g.row(idx[i]);
  });
}

// Softmax of each column within groups of rows sharing a segment id.
inline Tensor segment_softmax(Tensor a, std::vector<int> seg, Eigen::Index n_seg) {
  require(static_cast<Eigen::Index>(seg.size()) == a.rows(), "ShapeMismatch",
          "segment_softmax: one segment id per row required");
  detail::check_index(seg, n_seg, "segment_softmax");
  const Matrix &A = a.value();
  const auto C = A.cols();
  Matrix mx = Matrix::Constant(n_seg, C, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < seg.size(); ++i)
    mx.row(seg[i]) = mx.row(seg[i]).cwiseMax(A.row(static_cast<Eigen::Index>(i)));
  Matrix out(A.rows(), C);
  Matrix denom = Matrix::Zero(n_seg, C);
  for (std::size_t i = 0; i < seg.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    out.row(r) = (A.row(r) - mx.row(seg[i])).array().exp().matrix();
    denom.row(seg[i]) += out.row(r);
  }
  for (std::size_t i = 0; i < seg.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = out.row(static_cast<Eigen::Index>(i)).cwiseQuotient(denom.row(seg[i]));
  return a.tape->record(std::move(out), {a}, [a, seg = std::move(seg), n_seg](Tape &t, int self) {
    const auto &n = t.node(self);
    const Matrix gy = n.grad.cwiseProduct(n.value);
    Matrix dot = Matrix::Zero(n_seg, n.value.cols());
    for (std::size_t i = 0; i < seg.size(); ++i)
      dot.row(seg[i]) += gy.row(static_cast<Eigen::Index>(i));
    Matrix &ga = t.grad(a.id);
    for (std::size_t i = 0; i < seg.size(); ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      ga.row(r) += gy.row(r) - n.value.row(r).cwiseProduct(dot.row(seg[i]));
    }
  });
}

inline Tensor log_softmax_rows(Tensor a) {
  const Matrix &A = a.value();
  const Eigen::VectorXd mx = A.rowwise().maxCoeff();
  Matrix shifted = A.colwise() - mx;
  const Eigen::VectorXd lse = shifted.array().exp().rowwise().sum().log();
  Matrix out = shifted.colwise() - lse;
  return a.tape->record(std::move(out), {a}, [a](Tape &t, int self) {
    const auto &n = t.node(self);
    const Matrix sm = n.value.array().exp().matrix();
    const Eigen::VectorXd gs = n.grad.rowwise().sum();
    t.grad(a.id) += n.grad - (sm.array().colwise() * gs.array()).matrix();
  });
}

inline Tensor softmax_rows(Tensor a) {
  const Matrix &A = a.value();
  Matrix out = (A.colwise() - A.rowwise().maxCoeff()).array().exp().matrix();
  out = (out.array().colwise() / out.rowwise().sum().array()).matrix();
  return a.tape->record(std::move(out), {a}, [a](Tape &t, int self) {
    const auto &n = t.node(self);
    const Matrix gy = n.grad.cwiseProduct(n.value);
    const Eigen::VectorXd dot = gy.rowwise().sum();
    t.grad(a.id) += gy - (n.value.array().colwise() * dot.array()).matrix();
  });
}

// Per segment b: A_b^T V_b, stacked into rows [b*k, (b+1)*k). A is N x k,
// V is N x d, seg assigns each row to one of n_seg segments.
inline Tensor segment_matmul_tn(Tensor a, Tensor v, std::vector<int> seg, Eigen::Index n_seg) {
  const Matrix &A = a.value(), &V = v.value();
  if (A.rows() != V.rows() || static_cast<Eigen::Index>(seg.size()) != A.rows())
    detail::shape_error("segment_matmul_tn", A, V);
  detail::check_index(seg, n_seg, "segment_matmul_tn");
  const auto k = A.cols(), d = V.cols();
  Matrix out = Matrix::Zero(n_seg * k, d);
  for (std::size_t i = 0; i < seg.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    out.middleRows(seg[i] * k, k).noalias() += A.row(r).transpose() * V.row(r);
  }
  return a.tape->record(std::move(out), {a, v}, [a, v, seg = std::move(seg), k](Tape &t, int self) {
    const Matrix &g = t.node(self).grad;
    const Matrix &A = t.value(a.id), &V = t.value(v.id);
    const bool ra = t.requires_grad(a.id), rv = t.requires_grad(v.id);
    for (std::size_t i = 0; i < seg.size(); ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      const auto gb = g.middleRows(seg[i] * k, k);
      if (ra)
        t.grad(a.id).row(r).noalias() += V.row(r) * gb.transpose();
      if (rv)
        t.grad(v.id).row(r).noalias() += A.row(r) * gb;
    }
  });
}

// Per block of k rows: Q_b K_b^T (k x k), stacked.
inline Tensor block_matmul_nt(Tensor q, Tensor kk, Eigen::Index k) {
  const Matrix &Q = q.value(), &K = kk.value();
  if (Q.rows() != K.rows() || Q.cols() != K.cols() || k <= 0 || Q.rows() % k != 0)
    detail::shape_error("block_matmul_nt", Q, K);
  const auto nb = Q.rows() / k;
  Matrix out(Q.rows(), k);
  for (Eigen::Index b = 0; b < nb; ++b)
    out.middleRows(b * k, k).noalias() = Q.middleRows(b * k, k) * K.middleRows(b * k, k).transpose();
  return q.tape->record(std::move(out), {q, kk}, [q, kk, k, nb](Tape &t, int self) {
    const Matrix &g = t.node(self).grad;
    for (Eigen::Index b = 0; b < nb; ++b) {
      const auto gb = g.middleRows(b * k, k);
      if (t.requires_grad(q.id))
        t.grad(q.id).middleRows(b * k, k).noalias() += gb * t.value(kk.id).middleRows(b * k, k);
      if (t.requires_grad(kk.id))
        t.grad(kk.id).middleRows(b * k, k).noalias() += gb.transpose() * t.value(q.id).middleRows(b * k, k);
    }
  });
}

// Per block of k rows: A_b (k x k) times V_b (k x d), stacked.
inline Tensor block_matmul_nn(Tensor a, Tensor v, Eigen::Index k) {
  const Matrix &A = a.value(), &V = v.value();
  if (A.rows() != V.rows() || A.cols() != k || k <= 0 || A.rows() % k != 0)
    detail::shape_error("block_matmul_nn", A, V);
  const auto nb = A.rows() / k;
  Matrix out(A.rows(), V.cols());
  for (Eigen::Index b = 0; b < nb; ++b)
    out.middleRows(b * k, k).noalias() = A.middleRows(b * k, k) * V.middleRows(b * k, k);
  return a.tape->record(std::move(out), {a, v}, [a, v, k, nb](Tape &t, int self) {
    const Matrix &g = t.node(self).grad;
    for (Eigen::Index b = 0; b < nb; ++b) {
      const auto gb = g.middleRows(b * k, k);
      if (t.requires_grad(a.id))
        t.grad(a.id).middleRows(b * k, k).noalias() += gb * t.value(v.id).middleRows(b * k, k).transpose();
      if (t.requires_grad(v.id))
        t.grad(v.id).middleRows(b * k, k).noalias() += t.value(a.id).middleRows(b * k, k).transpose() * gb;
    }
  });
}

} // namespace onco::ad

#endif // ONCOGAT_AUTODIFF_OPS_HPP
