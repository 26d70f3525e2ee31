//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_MODEL_TRAIN_HPP
#define ONCOGAT_MODEL_TRAIN_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oncogat/autodiff.hpp"
#include "oncogat/core/csv.hpp"
#include "oncogat/dataset/records.hpp"
#include "oncogat/dataset/split.hpp"
#include "oncogat/model/checkpoint.hpp"

namespace onco::model {

struct TrainOptions {
  int batch_size = 64;
  int max_epochs = 100;
  int patience = 10;
  double label_smoothing = 0.1;
  double huber_beta = 1.0;
  ad::AdamWConfig optimizer;
  std::uint64_t seed = 0;
  // Dataset size used for the small/full choice; 0 means the training
  // fold size.
  std::size_t n_entries = 0;
  std::optional<SizeClass> size_class;
  std::optional<int> hidden_dim;
  std::optional<int> n_blocks;
  std::optional<int> n_heads;
  std::optional<double> dropout_p;
  std::string target = "activity";
};

struct EpochLog {
  int epoch = 0;
  double train_loss = 0.0;
  double val_loss = 0.0;
  double val_metric = std::numeric_limits<double>::quiet_NaN(); // AUC or Pearson r
};

struct TrainResult {
  Checkpoint checkpoint;
  std::vector<EpochLog> log;
};

inline std::string training_log_csv(const std::vector<EpochLog> &log) {
  std::string out = "epoch,train_loss,val_loss,val_metric\n";
  for (const auto &e: log)
    out += std::to_string(e.epoch) + "," + csv::number(e.train_loss) + "," + csv::number(e.val_loss) + "," +
           (std::isnan(e.val_metric) ? std::string() : csv::number(e.val_metric)) + "\n";
  return out;
}

// Chunks of at most batch_size graphs, in index order.
inline std::vector<GraphBatch> make_batches(const std::vector<features::FeaturizedGraph> &graphs,
                                            const std::vector<std::size_t> &idx, const features::FeatureScaler &scaler,
                                            int batch_size) {
  std::vector<GraphBatch> out;
  for (std::size_t s = 0; s < idx.size(); s += static_cast<std::size_t>(batch_size)) {
    std::vector<const features::FeaturizedGraph *> part;
    for (std::size_t i = s; i < std::min(idx.size(), s + static_cast<std::size_t>(batch_size)); ++i)
      part.push_back(&graphs.at(idx[i]));
    out.push_back(make_batch(part, scaler));
  }
  return out;
}

inline ad::Tensor task_loss(const ModelConfig &cfg, ad::Tensor out, const std::vector<double> &y,
                            const TrainOptions &opt) {
  if (cfg.task == Task::classify) {
    std::vector<int> cls(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
      cls[i] = static_cast<int>(y[i]);
    return ad::cross_entropy_smoothed(out, cls, opt.label_smoothing);
  }
  Matrix target(static_cast<Eigen::Index>(y.size()), 1);
  for (std::size_t i = 0; i < y.size(); ++i)
    target(static_cast<Eigen::Index>(i), 0) = y[i];
  return ad::huber_loss(out, target, opt.huber_beta);
}

// Positive-class probability for classifiers, the prediction for
// regressors; one value per graph.
inline std::vector<double> output_scores(const ModelConfig &cfg, const Matrix &out) {
  std::vector<double> s(static_cast<std::size_t>(out.rows()));
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    if (cfg.task == Task::classify) {
      const double d = out(i, 0) - out(i, 1);
      s[static_cast<std::size_t>(i)] = ad::sigmoid_scalar(-d);
    } else {
      s[static_cast<std::size_t>(i)] = out(i, 0);
    }
  }
  return s;
}

inline Matrix predict_outputs(const Checkpoint &c, const std::vector<const features::FeaturizedGraph *> &graphs,
                              int batch_size = 64) {
  const int n_out = c.model.config().n_outputs();
  Matrix out(static_cast<Eigen::Index>(graphs.size()), n_out);
  for (std::size_t s = 0; s < graphs.size(); s += static_cast<std::size_t>(batch_size)) {
    const std::size_t e = std::min(graphs.size(), s + static_cast<std::size_t>(batch_size));
    std::vector<const features::FeaturizedGraph *> part(graphs.begin() + static_cast<std::ptrdiff_t>(s),
                                                        graphs.begin() + static_cast<std::ptrdiff_t>(e));
    for (const auto *g: part)
      if (g->explicit_h != c.explicit_h)
        throw ModelError("LayoutVersionMismatch", "graph hydrogen convention differs from the checkpoint");
    out.middleRows(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(e - s)) =
        c.model.predict(make_batch(part, c.scaler));
  }
  return out;
}

inline std::vector<double> predict_scores(const Checkpoint &c, const std::vector<const features::FeaturizedGraph *> &graphs) {
  return output_scores(c.model.config(), predict_outputs(c, graphs));
}

namespace detail {

inline std::vector<double> pick(const std::vector<double> &y, const std::vector<std::size_t> &idx) {
  std::vector<double> out;
  for (auto i: idx)
    out.push_back(y.at(i));
  return out;
}

inline double validation_metric(Task task, const std::vector<double> &scores, const std::vector<double> &y) {
  try {
    if (task == Task::classify) {
      std::vector<int> cls(y.begin(), y.end());
      return roc_auc(scores, cls);
    }
    return compute_regression_metrics(scores, y).pearson_r;
  } catch (const Error &) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

} // namespace detail

// Seeded mini-batch training with early stopping on validation loss. y holds
// class labels (0/1) for classification and targets for regression.
inline TrainResult train(Task task, const std::vector<features::FeaturizedGraph> &graphs, const std::vector<double> &y,
                         const std::vector<std::size_t> &train_idx, const std::vector<std::size_t> &val_idx,
                         const TrainOptions &opt = {}) {
  if (train_idx.empty() || val_idx.empty())
    throw Error("EmptyFold", "training needs non-empty train and validation folds");
  require(y.size() == graphs.size(), "ShapeMismatch", "one target per graph required");
  require(opt.batch_size >= 1 && opt.max_epochs >= 1 && opt.patience >= 1, "BadConfig",
          "batch size, epochs and patience must be positive");
  const bool explicit_h = graphs.at(train_idx[0]).explicit_h;
  for (auto i: train_idx)
    require(graphs.at(i).explicit_h == explicit_h, "BadConfig", "mixed hydrogen conventions in training data");

  Matrix raw(static_cast<Eigen::Index>(train_idx.size()),
             static_cast<Eigen::Index>(graphs.at(train_idx[0]).global_features.size()));
  std::vector<int> sizes;
  for (std::size_t r = 0; r < train_idx.size(); ++r) {
    const auto &g = graphs.at(train_idx[r]);
    require(static_cast<Eigen::Index>(g.global_features.size()) == raw.cols(), "SchemaMismatch",
            "global feature width varies across graphs");
    for (Eigen::Index j = 0; j < raw.cols(); ++j)
      raw(static_cast<Eigen::Index>(r), j) = g.global_features[static_cast<std::size_t>(j)];
    sizes.push_back(g.n_nodes());
  }
  Checkpoint ck;
  ck.scaler = features::fit_scaler(raw);
  ck.explicit_h = explicit_h;
  ck.meta.target = opt.target;

  const std::size_t n_entries = opt.n_entries ? opt.n_entries : train_idx.size();
  ModelConfig cfg = preset(opt.size_class.value_or(size_class_for(n_entries)), task, ck.scaler.n_output(),
                           choose_k(median_node_count(sizes)), opt.seed);
  if (opt.hidden_dim)
    cfg.hidden_dim = *opt.hidden_dim;
  if (opt.n_blocks)
    cfg.n_blocks = *opt.n_blocks;
  if (opt.n_heads)
    cfg.n_heads = *opt.n_heads;
  if (opt.dropout_p)
    cfg.dropout_p = *opt.dropout_p;
  Model model(cfg);

  const std::vector<double> y_train = detail::pick(y, train_idx), y_val = detail::pick(y, val_idx);
  std::optional<ad::WeightedSampler> sampler;
  if (task == Task::classify) {
    std::vector<int> cls(y_train.begin(), y_train.end());
    sampler.emplace(cls, 2, opt.seed ^ 0x5a17u);
  } else {
    double mean = 0.0;
    for (double v: y_train)
      mean += v;
    model.parameter("head.b").value.setConstant(mean / static_cast<double>(y_train.size()));
  }
  const auto val_batches = make_batches(graphs, val_idx, ck.scaler, opt.batch_size);

  auto evaluate = [&](const Model &m) {
    double loss = 0.0;
    std::vector<double> scores;
    std::size_t at = 0;
    for (const auto &b: val_batches) {
      ad::Tape t(false);
      auto tr = m.forward(t, b);
      const std::vector<double> yb(y_val.begin() + static_cast<std::ptrdiff_t>(at),
                                   y_val.begin() + static_cast<std::ptrdiff_t>(at + static_cast<std::size_t>(b.n_graphs())));
      loss += task_loss(cfg, tr.output, yb, opt).scalar() * b.n_graphs();
      for (double s: output_scores(cfg, tr.output.value()))
        scores.push_back(s);
      at += static_cast<std::size_t>(b.n_graphs());
    }
    return std::pair{loss / static_cast<double>(y_val.size()), detail::validation_metric(cfg.task, scores, y_val)};
  };

  ad::AdamW optim(opt.optimizer);
  Rng order_rng(opt.seed ^ 0x0bd3u), dropout_rng(opt.seed ^ 0xd20eu);
  auto params = model.parameter_ptrs();
  std::vector<Matrix> best = [&] {
    std::vector<Matrix> v;
    for (auto *p: params)
      v.push_back(p->value);
    return v;
  }();
  double best_loss = std::numeric_limits<double>::infinity();
  int best_epoch = 0, since_best = 0;
  TrainResult result;

  for (int epoch = 1; epoch <= opt.max_epochs; ++epoch) {
    std::vector<std::size_t> order;
    if (sampler) {
      for (auto i: sampler->draw(train_idx.size()))
        order.push_back(i);
    } else {
      for (std::size_t i = 0; i < train_idx.size(); ++i)
        order.push_back(i);
      order_rng.shuffle(order);
    }
    double train_loss = 0.0;
    for (std::size_t s = 0; s < order.size(); s += static_cast<std::size_t>(opt.batch_size)) {
      std::vector<const features::FeaturizedGraph *> part;
      std::vector<double> yb;
      for (std::size_t i = s; i < std::min(order.size(), s + static_cast<std::size_t>(opt.batch_size)); ++i) {
        part.push_back(&graphs[train_idx[order[i]]]);
        yb.push_back(y_train[order[i]]);
      }
      const auto b = make_batch(part, ck.scaler);
      ad::Tape t(true, dropout_rng.next());
      try {
        auto loss = task_loss(cfg, model.forward(t, b).output, yb, opt);
        t.backward(loss);
        train_loss += loss.scalar() * static_cast<double>(yb.size());
      } catch (const Error &e) {
        if (e.code() == "NonFiniteValue")
          throw Error("DivergedLoss", std::string("training diverged: ") + e.what());
        throw;
      }
      optim.step(params);
      for (auto *p: params) {
        if (!p->value.allFinite())
          throw Error("DivergedLoss", "parameter " + p->name + " became non-finite");
        p->zero_grad();
      }
    }
    EpochLog log;
    log.epoch = epoch;
    log.train_loss = train_loss / static_cast<double>(order.size());
    std::tie(log.val_loss, log.val_metric) = evaluate(model);
    result.log.push_back(log);
    ck.meta.train_loss.push_back(log.train_loss);
    ck.meta.val_loss.push_back(log.val_loss);
    ck.meta.val_metric.push_back(std::isnan(log.val_metric) ? 0.0 : log.val_metric);
    if (log.val_loss < best_loss) {
      best_loss = log.val_loss;
      best_epoch = epoch;
      since_best = 0;
      for (std::size_t i = 0; i < params.size(); ++i)
        best[i] = params[i]->value;
    } else if (++since_best >= opt.patience) {
      break;
    }
  }
  for (std::size_t i = 0; i < params.size(); ++i)
    params[i]->value = best[i];
  round_to_f32(model);
  ck.model = std::move(model);
  ck.meta.epochs_run = static_cast<int>(result.log.size());
  ck.meta.best_epoch = best_epoch;
  if (task == Task::classify) {
    std::vector<const features::FeaturizedGraph *> vg;
    for (auto i: val_idx)
      vg.push_back(&graphs[i]);
    std::vector<int> cls(y_val.begin(), y_val.end());
    ck.threshold = calibrate_threshold(predict_scores(ck, vg), cls);
  }
  result.checkpoint = std::move(ck);
  return result;
}

struct CellLineModel {
  std::string cell_line;
  std::size_t n_entries = 0;
  TrainResult result;
};

// One regressor per cell line over the compounds measured on it, each with
// the split's train/validation membership.
inline std::vector<CellLineModel> train_regressors(const std::vector<dataset::ActivityRecord> &records,
                                                   const dataset::DatasetSplit &split,
                                                   const std::map<std::string, features::FeaturizedGraph> &graphs,
                                                   TrainOptions opt = {}) {
  const auto fold_of = split.lookup();
  std::map<std::string, std::vector<const dataset::ActivityRecord *>> by_line;
  for (const auto &r: records)
    by_line[r.cell_line].push_back(&r);
  std::vector<CellLineModel> out;
  for (const auto &[line, recs]: by_line) {
    std::vector<features::FeaturizedGraph> g;
    std::vector<double> y;
    std::vector<std::size_t> tr, va;
    for (const auto *r: recs) {
      auto f = fold_of.find(r->canonical_smiles);
      auto gi = graphs.find(r->canonical_smiles);
      if (f == fold_of.end() || gi == graphs.end() || f->second == dataset::Fold::test)
        continue;
      (f->second == dataset::Fold::train ? tr : va).push_back(g.size());
      g.push_back(gi->second);
      y.push_back(r->pgi50);
    }
    CellLineModel m;
    m.cell_line = line;
    m.n_entries = recs.size();
    opt.n_entries = recs.size();
    opt.target = line;
    m.result = train(Task::regress, g, y, tr, va, opt);
    out.push_back(std::move(m));
  }
  return out;
}

} // namespace onco::model

#endif // ONCOGAT_MODEL_TRAIN_HPP
