//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_MODEL_NETWORK_HPP
#define ONCOGAT_MODEL_NETWORK_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "oncogat/autodiff.hpp"
#include "oncogat/features/atom_features.hpp"
#include "oncogat/model/batch.hpp"

namespace onco::model {

enum class SizeClass { full, small };
enum class Task { classify, regress };

inline std::string size_class_name(SizeClass s) { return s == SizeClass::full ? "full" : "small"; }
inline std::string task_name(Task t) { return t == Task::classify ? "classify" : "regress"; }

inline SizeClass parse_size_class(const std::string &s) {
  if (s == "full")
    return SizeClass::full;
  if (s == "small")
    return SizeClass::small;
  throw Error("BadConfig", "unknown size class '" + s + "'");
}

inline Task parse_task(const std::string &s) {
  if (s == "classify")
    return Task::classify;
  if (s == "regress")
    return Task::regress;
  throw Error("BadConfig", "unknown task '" + s + "'");
}

// Datasets with fewer entries than this train the small configuration.
constexpr std::size_t kSmallModelCutoff = 15000;

inline SizeClass size_class_for(std::size_t n_entries) {
  return n_entries < kSmallModelCutoff ? SizeClass::small : SizeClass::full;
}

// Pooling seed count from the median training-graph node count.
inline int choose_k(double median_nodes) {
  return std::max(8, std::min(64, static_cast<int>(std::floor(0.5 * median_nodes))));
}

inline double median_node_count(std::vector<int> counts) {
  require(!counts.empty(), "EmptyFold", "median of no graphs");
  std::sort(counts.begin(), counts.end());
  const std::size_t n = counts.size();
  return n % 2 == 1 ? counts[n / 2] : 0.5 * (counts[n / 2 - 1] + counts[n / 2]);
}

struct ModelConfig {
  int hidden_dim = 128;
  int n_blocks = 2;
  int n_heads = 4;
  int ffn_mult = 2;
  double dropout_p = 0.1;
  int pool_seeds = 8;
  SizeClass size_class = SizeClass::small;
  Task task = Task::classify;
  std::uint64_t seed = 0;
  int node_dim = features::kAtomFeatureDim;
  int edge_dim = features::kBondFeatureDim;
  int global_dim = 0;

  int n_outputs() const { return task == Task::classify ? 2 : 1; }
  int head_dim() const { return hidden_dim / n_heads; }

  void validate() const {
    require(hidden_dim > 0 && n_heads > 0 && hidden_dim % n_heads == 0, "BadConfig",
            "hidden_dim must be a positive multiple of n_heads");
    require(n_blocks >= 0 && ffn_mult > 0 && pool_seeds >= 1 && global_dim >= 0, "BadConfig",
            "block count, ffn multiplier, seed count and global width must be valid");
    require(dropout_p >= 0.0 && dropout_p < 1.0, "BadConfig", "dropout must lie in [0, 1)");
  }

  bool operator==(const ModelConfig &) const = default;
};

// Preset for a size class: full = 4 blocks / 256 wide / 8 heads,
// small = 2 / 128 / 4.
inline ModelConfig preset(SizeClass s, Task task, int global_dim, int pool_seeds, std::uint64_t seed) {
  ModelConfig c;
  c.size_class = s;
  c.task = task;
  c.global_dim = global_dim;
  c.pool_seeds = pool_seeds;
  c.seed = seed;
  if (s == SizeClass::full) {
    c.hidden_dim = 256;
    c.n_blocks = 4;
    c.n_heads = 8;
  }
  return c;
}

// Tensors of interest from one forward pass.
struct Trace {
  ad::Tensor output;                    // B x n_outputs
  ad::Tensor pooled;                    // B x H
  ad::Tensor global;                    // B x H, projected global stream
  ad::Tensor gate;                      // B x H, in (0, 1)
  ad::Tensor fused;                     // B x H, head input
  std::vector<ad::Tensor> attention;    // per block: (E + N) x heads
};

class Model {
public:
  Model() = default;

  explicit Model(const ModelConfig &cfg) : cfg_(cfg) {
    cfg_.validate();
    build();
    Rng rng(cfg_.seed);
    for (auto &p: params_)
      init(p, rng);
  }

  const ModelConfig &config() const { return cfg_; }
  std::vector<ad::Parameter> &parameters() { return params_; }
  const std::vector<ad::Parameter> &parameters() const { return params_; }

  std::vector<ad::Parameter *> parameter_ptrs() {
    std::vector<ad::Parameter *> out;
    for (auto &p: params_)
      out.push_back(&p);
    return out;
  }

  ad::Parameter &parameter(const std::string &name) { return params_.at(index_of(name)); }
  const ad::Parameter &parameter(const std::string &name) const { return params_.at(index_of(name)); }

  void zero_grad() {
    for (auto &p: params_)
      p.zero_grad();
  }

  // Forward pass with parameters recorded as differentiable inputs.
  Trace forward(ad::Tape &t, const GraphBatch &b) {
    return run(t, t.constant(b.node_features), b, [&](int i) { return t.param(params_[i]); });
  }

  // Forward pass with parameters as constants; node features may be a
  // differentiable leaf.
  Trace forward(ad::Tape &t, ad::Tensor nodes, const GraphBatch &b) const {
    return run(t, nodes, b, [&](int i) { return t.constant(params_[i].value); });
  }

  Trace forward(ad::Tape &t, const GraphBatch &b) const { return forward(t, t.constant(b.node_features), b); }

  // Inference outputs, B x n_outputs.
  Matrix predict(const GraphBatch &b) const {
    ad::Tape t(false);
    return forward(t, b).output.value();
  }

  // Checkpoint loading: replaces parameter values by name.
  void set_parameter(const std::string &name, const Matrix &value) {
    auto &p = params_.at(index_of(name));
    if (p.value.rows() != value.rows() || p.value.cols() != value.cols())
      throw Error("ShapeMismatch", "parameter " + name + " has shape " + std::to_string(p.value.rows()) + "x" +
                                       std::to_string(p.value.cols()));
    p.value = value;
    p.zero_grad();
  }

private:
  struct Linear {
    int w = -1, b = -1;
  };
  struct Conv {
    int wq = -1, bq = -1, wk = -1, wv = -1, bv = -1, wek = -1, wev = -1;
  };
  struct Norm {
    int alpha = -1, gamma = -1, beta = -1;
  };
  struct Block {
    Norm norm1, norm2;
    Conv conv;
    Linear ff1, ff2;
  };
  struct Pool {
    int seeds = -1, wk = -1, wv = -1, bv = -1;
    Linear mab;
    int sq = -1, sk = -1, sv = -1, sb = -1;
  };

  enum class Init { xavier, zeros, ones };

  int add(const std::string &name, Eigen::Index r, Eigen::Index c, Init how) {
    params_.emplace_back(name, Matrix::Zero(r, c));
    inits_.push_back(how);
    index_[name] = static_cast<int>(params_.size()) - 1;
    return static_cast<int>(params_.size()) - 1;
  }

  Linear add_linear(const std::string &name, int in, int out, bool bias = true) {
    Linear l;
    l.w = add(name + ".w", in, out, Init::xavier);
    if (bias)
      l.b = add(name + ".b", 1, out, Init::zeros);
    return l;
  }

  Norm add_norm(const std::string &name, int h) {
    return {add(name + ".alpha", 1, h, Init::ones), add(name + ".gamma", 1, h, Init::ones),
            add(name + ".beta", 1, h, Init::zeros)};
  }

  void build() {
    const int h = cfg_.hidden_dim, nh = cfg_.n_heads;
    input_ = add_linear("input", cfg_.node_dim, h);
    for (int i = 0; i < cfg_.n_blocks; ++i) {
      const std::string p = "block" + std::to_string(i);
      Block blk;
      blk.norm1 = add_norm(p + ".norm1", h);
      blk.conv.wq = add(p + ".conv.wq", h, h, Init::xavier);
      blk.conv.bq = add(p + ".conv.bq", 1, h, Init::zeros);
      blk.conv.wk = add(p + ".conv.wk", h, h, Init::xavier);
      blk.conv.wv = add(p + ".conv.wv", h, nh * h, Init::xavier);
      blk.conv.bv = add(p + ".conv.bv", 1, nh * h, Init::zeros);
      blk.conv.wek = add(p + ".conv.wek", cfg_.edge_dim, h, Init::xavier);
      blk.conv.wev = add(p + ".conv.wev", cfg_.edge_dim, nh * h, Init::xavier);
      blk.norm2 = add_norm(p + ".norm2", h);
      blk.ff1 = add_linear(p + ".ff1", h, cfg_.ffn_mult * h);
      blk.ff2 = add_linear(p + ".ff2", cfg_.ffn_mult * h, h);
      blocks_.push_back(blk);
    }
    pool_.seeds = add("pool.seeds", cfg_.pool_seeds, h, Init::xavier);
    pool_.wk = add("pool.wk", h, h, Init::xavier);
    pool_.wv = add("pool.wv", h, h, Init::xavier);
    pool_.bv = add("pool.bv", 1, h, Init::zeros);
    pool_.mab = add_linear("pool.mab", h, h);
    pool_.sq = add("pool.sq", h, h, Init::xavier);
    pool_.sk = add("pool.sk", h, h, Init::xavier);
    pool_.sv = add("pool.sv", h, h, Init::xavier);
    pool_.sb = add("pool.sb", 1, h, Init::zeros);
    proj_ = add_linear("fusion.proj", cfg_.global_dim, h);
    gate_ = add_linear("fusion.gate", h, h);
    head_ = add_linear("head", h, cfg_.n_outputs());

    // Constant maps between per-head and flat layouts.
    const int dh = cfg_.head_dim();
    head_sum_ = Matrix::Zero(h, nh);
    for (int c = 0; c < h; ++c)
      head_sum_(c, c / dh) = 1.0;
    head_expand_ = Matrix::Zero(nh, nh * h);
    head_mean_ = Matrix::Zero(nh * h, h);
    for (int j = 0; j < nh; ++j)
      for (int c = 0; c < h; ++c) {
        head_expand_(j, j * h + c) = 1.0;
        head_mean_(j * h + c, c) = 1.0 / nh;
      }
  }

  void init(ad::Parameter &p, Rng &rng) const {
    const Init how = inits_[static_cast<std::size_t>(&p - params_.data())];
    if (how == Init::ones) {
      p.value.setOnes();
    } else if (how == Init::xavier) {
      const double limit = std::sqrt(6.0 / static_cast<double>(std::max<Eigen::Index>(1, p.value.rows() + p.value.cols())));
      for (Eigen::Index i = 0; i < p.value.size(); ++i)
        p.value.data()[i] = rng.uniform(-limit, limit);
    }
    p.zero_grad();
  }

  int index_of(const std::string &name) const {
    auto it = index_.find(name);
    if (it == index_.end())
      throw Error("UnknownParameter", "no parameter named " + name);
    return it->second;
  }

  template <class Bind>
  static ad::Tensor linear(ad::Tensor x, const Linear &l, Bind &bind) {
    auto y = ad::matmul(x, bind(l.w));
    return l.b >= 0 ? ad::add(y, bind(l.b)) : y;
  }

  // Per-graph normalisation with learned shift fraction alpha.
  template <class Bind>
  static ad::Tensor graph_norm(ad::Tape &t, ad::Tensor x, const Norm &n, const GraphBatch &b, Bind &bind) {
    auto inv = t.constant(b.inv_graph_size);
    auto mean = ad::mul(ad::scatter_add_rows(x, b.graph_of_node, b.n_graphs()), inv);
    auto centred = ad::sub(x, ad::mul(ad::gather_rows(mean, b.graph_of_node), bind(n.alpha)));
    auto var = ad::mul(ad::scatter_add_rows(ad::square(centred), b.graph_of_node, b.n_graphs()), inv);
    auto std = ad::sqrt(ad::add_scalar(ad::gather_rows(var, b.graph_of_node), kNormEps));
    return ad::add(ad::mul(ad::div(centred, std), bind(n.gamma)), bind(n.beta));
  }

  template <class Bind>
  ad::Tensor conv(ad::Tape &t, ad::Tensor x, const Conv &c, ad::Tensor edges, const GraphBatch &b, Bind &bind,
                  std::vector<ad::Tensor> &attention) const {
    const auto n = b.n_nodes();
    auto q = ad::add(ad::matmul(x, bind(c.wq)), bind(c.bq));
    auto k = ad::matmul(x, bind(c.wk));
    auto v = ad::add(ad::matmul(x, bind(c.wv)), bind(c.bv));
    auto qd = ad::gather_rows(q, b.edge_dst);
    auto ks = ad::add(ad::gather_rows(k, b.edge_src), ad::matmul(edges, bind(c.wek)));
    auto logits = ad::scale(ad::matmul(ad::mul(qd, ks), t.constant(head_sum_)),
                            1.0 / std::sqrt(static_cast<double>(cfg_.head_dim())));
    auto att = ad::segment_softmax(logits, b.edge_dst, n);
    attention.push_back(att);
    att = ad::dropout(att, cfg_.dropout_p);
    auto vs = ad::add(ad::gather_rows(v, b.edge_src), ad::matmul(edges, bind(c.wev)));
    auto msg = ad::mul(ad::matmul(att, t.constant(head_expand_)), vs);
    return ad::matmul(ad::scatter_add_rows(msg, b.edge_dst, n), t.constant(head_mean_));
  }

  template <class Bind>
  ad::Tensor pool(ad::Tape &t, ad::Tensor x, const GraphBatch &b, Bind &bind) const {
    const int h = cfg_.hidden_dim, nh = cfg_.n_heads, dh = cfg_.head_dim(), k = cfg_.pool_seeds;
    const int ng = b.n_graphs();
    auto seeds = bind(pool_.seeds);
    auto keys = ad::matmul(x, bind(pool_.wk));
    auto vals = ad::add(ad::matmul(x, bind(pool_.wv)), bind(pool_.bv));
    std::vector<ad::Tensor> heads;
    for (int j = 0; j < nh; ++j) {
      auto logits = ad::scale(ad::matmul(ad::slice_cols(keys, j * dh, dh), ad::transpose(ad::slice_cols(seeds, j * dh, dh))),
                              1.0 / std::sqrt(static_cast<double>(dh)));
      auto a = ad::segment_softmax(logits, b.graph_of_node, ng);
      heads.push_back(ad::segment_matmul_tn(a, ad::slice_cols(vals, j * dh, dh), b.graph_of_node, ng));
    }
    std::vector<int> seed_rows, slot_graph;
    for (int g = 0; g < ng; ++g)
      for (int s = 0; s < k; ++s) {
        seed_rows.push_back(s);
        slot_graph.push_back(g);
      }
    auto o = ad::add(ad::gather_rows(seeds, seed_rows), ad::concat_cols(heads));
    o = ad::add(o, ad::relu(linear(o, pool_.mab, bind)));
    auto sq = ad::matmul(o, bind(pool_.sq));
    auto sk = ad::matmul(o, bind(pool_.sk));
    auto sv = ad::add(ad::matmul(o, bind(pool_.sv)), bind(pool_.sb));
    auto a = ad::softmax_rows(ad::scale(ad::block_matmul_nt(sq, sk, k), 1.0 / std::sqrt(static_cast<double>(h))));
    o = ad::add(o, ad::block_matmul_nn(a, sv, k));
    return ad::scale(ad::scatter_add_rows(o, slot_graph, ng), 1.0 / k);
  }

  template <class Bind>
  Trace run(ad::Tape &t, ad::Tensor nodes, const GraphBatch &b, Bind bind) const {
    require(nodes.cols() == cfg_.node_dim && nodes.rows() == b.n_nodes(), "ShapeMismatch",
            "node feature matrix does not match the batch");
    require(b.globals.cols() == cfg_.global_dim, "ShapeMismatch", "global feature width differs from the model");
    Trace tr;
    auto edges = t.constant(b.edge_features);
    auto x = linear(nodes, input_, bind);
    for (const auto &blk: blocks_) {
      x = ad::add(x, conv(t, graph_norm(t, x, blk.norm1, b, bind), blk.conv, edges, b, bind, tr.attention));
      auto f = linear(ad::relu(linear(graph_norm(t, x, blk.norm2, b, bind), blk.ff1, bind)), blk.ff2, bind);
      x = ad::add(x, f);
    }
    tr.pooled = pool(t, x, b, bind);
    tr.global = linear(t.constant(b.globals), proj_, bind);
    tr.gate = ad::sigmoid(linear(tr.global, gate_, bind));
    tr.fused = ad::add(tr.global, ad::mul(tr.gate, ad::sub(tr.pooled, tr.global)));
    tr.output = linear(tr.fused, head_, bind);
    return tr;
  }

  static constexpr double kNormEps = 1e-5;

  ModelConfig cfg_;
  std::vector<ad::Parameter> params_;
  std::vector<Init> inits_;
  std::map<std::string, int> index_;
  Linear input_, proj_, gate_, head_;
  std::vector<Block> blocks_;
  Pool pool_;
  Matrix head_sum_, head_expand_, head_mean_;
};

} // namespace onco::model

#endif // ONCOGAT_MODEL_NETWORK_HPP
