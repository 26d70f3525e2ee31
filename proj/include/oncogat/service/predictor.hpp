//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_SERVICE_PREDICTOR_HPP
#define ONCOGAT_SERVICE_PREDICTOR_HPP

#include <algorithm>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "oncogat/chem.hpp"
#include "oncogat/core/csv.hpp"
#include "oncogat/core/hash.hpp"
#include "oncogat/explain.hpp"
#include "oncogat/model.hpp"
#include "oncogat/service/modes.hpp"

namespace onco::service {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Json error_json(const std::string &code, const std::string &message, const Json &detail = nullptr) {
  return {{"code", code}, {"message", message}, {"detail", detail}};
}

inline Json error_json(const Error &e) {
  Json detail = nullptr;
  if (const auto *p = dynamic_cast<const ParseError *>(&e))
    detail = {{"offset", p->offset()}};
  return error_json(e.code(), e.what(), detail);
}

// Checkpoints of one deployment: activity classifiers (averaged) and one
// regressor per cell line, keyed by the line recorded at training time.
class ModelBundle {
public:
  ModelBundle() = default;

  void add(model::Checkpoint c, const std::string &label = {}) {
    digests_.push_back((label.empty() ? std::string() : label + ":") + model::checkpoint_digest(c));
    if (c.model.config().task == model::Task::classify) {
      classifiers_.push_back(std::make_shared<model::Checkpoint>(std::move(c)));
    } else {
      const auto line = c.meta.target;
      if (regressors_.count(line))
        throw ModelError("DuplicateModel", "two regressors for cell line '" + line + "'");
      regressors_.emplace(line, std::make_shared<model::Checkpoint>(std::move(c)));
    }
  }

  // Every *.ckpt file of a directory, in file-name order.
  static ModelBundle load(const std::filesystem::path &dir) {
    if (!std::filesystem::is_directory(dir))
      throw ModelError("MissingModel", "model directory " + dir.string() + " does not exist");
    std::vector<std::filesystem::path> files;
    for (const auto &e: std::filesystem::directory_iterator(dir))
      if (e.is_regular_file() && e.path().extension() == ".ckpt")
        files.push_back(e.path());
    std::sort(files.begin(), files.end());
    ModelBundle b;
    for (const auto &f: files)
      b.add(model::load_checkpoint(f.string()), f.filename().string());
    return b;
  }

  const std::vector<std::shared_ptr<model::Checkpoint>> &classifiers() const { return classifiers_; }
  const std::map<std::string, std::shared_ptr<model::Checkpoint>> &regressors() const { return regressors_; }
  bool empty() const { return classifiers_.empty() && regressors_.empty(); }

  std::string digest() const {
    std::string all;
    for (const auto &d: digests_)
      all += d + "\n";
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(stable_hash(all)));
    return buf;
  }

private:
  std::vector<std::shared_ptr<model::Checkpoint>> classifiers_;
  std::map<std::string, std::shared_ptr<model::Checkpoint>> regressors_;
  std::vector<std::string> digests_;
};

// One submitted molecule: the text as given, and either a molecule or the
// error that stopped parsing it.
struct ParsedInput {
  std::string input;
  std::optional<chem::Molecule> mol;
  std::optional<Json> error;
  std::vector<std::string> warnings;
};

inline void check_batch(std::size_t n, std::size_t limit) {
  if (n > limit)
    throw ParseError("BatchLimitExceeded",
                     "batch holds " + std::to_string(n) + " molecules; the limit is " + std::to_string(limit), 0);
}

// SMILES are parsed one by one; a bad entry becomes an error row.
inline std::vector<ParsedInput> parse_smiles_inputs(const std::vector<std::string> &smiles, std::size_t limit,
                                                    bool keep_largest_fragment = false) {
  check_batch(smiles.size(), limit);
  std::vector<ParsedInput> out;
  out.reserve(smiles.size());
  for (const auto &s: smiles) {
    ParsedInput p;
    p.input = s;
    try {
      p.mol = chem::parse_smiles(s, {.keep_largest_fragment = keep_largest_fragment});
      if (keep_largest_fragment && s.find('.') != std::string::npos)
        p.warnings.emplace_back("smaller fragments were removed");
    } catch (const Error &e) {
      p.error = error_json(e);
    }
    out.push_back(std::move(p));
  }
  return out;
}

// An SDF is parsed as a whole; its first error fails the request.
inline std::vector<ParsedInput> parse_sdf_inputs(std::string_view sdf, std::size_t limit) {
  std::vector<ParsedInput> out;
  for (auto &m: chem::parse_sdf(sdf, limit)) {
    ParsedInput p;
    p.input = m.source.empty() ? chem::canonical_smiles(m) : m.source;
    p.mol = std::move(m);
    out.push_back(std::move(p));
  }
  return out;
}

// SMILES file: one molecule per line, first whitespace-separated token;
// blank lines and '#' comments are skipped.
inline std::vector<std::string> read_smiles_lines(std::string_view text) {
  std::vector<std::string> out;
  for (auto line: chem::detail::split_lines(text)) {
    line = chem::detail::trim(line);
    if (line.empty() || line.front() == '#')
      continue;
    out.emplace_back(line.substr(0, line.find_first_of(" \t")));
  }
  return out;
}

struct PredictorOptions {
  std::size_t max_batch = chem::kMaxBatch;
  explain::ExplainOptions explain;
};

// Stateless inference over a fixed bundle; safe to share across threads.
class Predictor {
public:
  explicit Predictor(ModelBundle bundle, PredictorOptions opt = {}) : bundle_(std::move(bundle)), opt_(opt) { }

  const ModelBundle &bundle() const { return bundle_; }
  const PredictorOptions &options() const { return opt_; }

  // Cell lines a mode set selects among the loaded regressors.
  std::vector<std::string> cell_lines(const ModeSet &modes) const {
    std::vector<std::string> out;
    for (const auto &[line, _]: bundle_.regressors())
      if (modes.selects(line))
        out.push_back(line);
    return out;
  }

  Json predict(const std::vector<ParsedInput> &inputs, const ModeSet &modes) const {
    check_batch(inputs.size(), opt_.max_batch);
    if (modes.activity && bundle_.classifiers().empty())
      throw ModelError("MissingModel", "activity was requested but no classifier is loaded");
    const auto lines = cell_lines(modes);
    Json warnings = Json::array();
    for (const auto &t: modes.tissues)
      if (std::none_of(lines.begin(), lines.end(), [&](const std::string &l) { return tissue_of(l) == t; }))
        warnings.push_back("no cell-line model is loaded for tissue '" + t + "'");

    std::vector<std::size_t> ok;
    for (std::size_t i = 0; i < inputs.size(); ++i)
      if (inputs[i].mol)
        ok.push_back(i);
    std::map<bool, std::vector<features::FeaturizedGraph>> graphs;
    auto graphs_for = [&](bool explicit_h) -> const std::vector<features::FeaturizedGraph> & {
      auto it = graphs.find(explicit_h);
      if (it == graphs.end()) {
        std::vector<features::FeaturizedGraph> g;
        g.reserve(ok.size());
        for (auto i: ok)
          g.push_back(features::featurize(*inputs[i].mol, {explicit_h}));
        it = graphs.emplace(explicit_h, std::move(g)).first;
      }
      return it->second;
    };
    auto ptrs = [](const std::vector<features::FeaturizedGraph> &g) {
      std::vector<const features::FeaturizedGraph *> p;
      for (const auto &x: g)
        p.push_back(&x);
      return p;
    };

    std::vector<double> prob(ok.size(), 0.0), thr(ok.size(), 0.0);
    if (modes.activity && !ok.empty()) {
      for (const auto &c: bundle_.classifiers()) {
        const auto s = model::predict_scores(*c, ptrs(graphs_for(c->explicit_h)));
        const double t = c->threshold ? c->threshold->threshold : 0.5;
        for (std::size_t k = 0; k < ok.size(); ++k) {
          prob[k] += s[k];
          thr[k] += t;
        }
      }
      for (std::size_t k = 0; k < ok.size(); ++k) {
        prob[k] /= static_cast<double>(bundle_.classifiers().size());
        thr[k] /= static_cast<double>(bundle_.classifiers().size());
      }
    }
    std::vector<std::vector<double>> pgi(lines.size());
    for (std::size_t l = 0; l < lines.size() && !ok.empty(); ++l) {
      const auto &c = *bundle_.regressors().at(lines[l]);
      const auto out = model::predict_outputs(c, ptrs(graphs_for(c.explicit_h)));
      for (std::size_t k = 0; k < ok.size(); ++k)
        pgi[l].push_back(out(static_cast<Eigen::Index>(k), 0));
    }

    Json mols = Json::array();
    std::size_t k = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const auto &in = inputs[i];
      Json m = {{"index", i}, {"input", in.input}};
      if (!in.mol) {
        m["canonical_smiles"] = nullptr;
        m["activity"] = nullptr;
        m["pgi50"] = nullptr;
        m["warnings"] = in.warnings;
        m["error"] = *in.error;
        mols.push_back(std::move(m));
        continue;
      }
      m["canonical_smiles"] = chem::canonical_smiles(*in.mol);
      if (modes.activity)
        m["activity"] = {{"label", prob[k] >= thr[k] ? "active" : "inactive"},
                         {"probability", prob[k]},
                         {"threshold", thr[k]}};
      else
        m["activity"] = nullptr;
      Json p = Json::object();
      for (std::size_t l = 0; l < lines.size(); ++l)
        p[lines[l]] = pgi[l][k];
      m["pgi50"] = std::move(p);
      m["warnings"] = in.warnings;
      m["error"] = nullptr;
      mols.push_back(std::move(m));
      ++k;
    }
    return {{"schema_version", kSchemaVersion},
            {"kind", "predict"},
            {"layout_version", features::kLayoutVersion},
            {"model_digest", bundle_.digest()},
            {"modes", modes.names()},
            {"cell_lines", lines},
            {"warnings", warnings},
            {"molecules", mols}};
  }

  // Attribution for the activity classifiers ("activity") or one cell
  // line's regressor.
  Json explain(const std::vector<ParsedInput> &inputs, const std::string &target = "activity") const {
    check_batch(inputs.size(), opt_.max_batch);
    std::vector<const model::Checkpoint *> members;
    if (target == kActivityMode) {
      for (const auto &c: bundle_.classifiers())
        members.push_back(c.get());
    } else if (auto it = bundle_.regressors().find(target); it != bundle_.regressors().end()) {
      members.push_back(it->second.get());
    }
    if (members.empty())
      throw ModelError("MissingModel", "no model is loaded for explanation target '" + target + "'");
    const explain::EnsembleScorer scorer(members);
    Json mols = Json::array();
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const auto &in = inputs[i];
      Json m = {{"index", i}, {"input", in.input}};
      if (!in.mol) {
        m["canonical_smiles"] = nullptr;
        m["explanation"] = nullptr;
        m["warnings"] = in.warnings;
        m["error"] = *in.error;
      } else {
        m["canonical_smiles"] = chem::canonical_smiles(*in.mol);
        m["explanation"] = explain::to_json(explain::explain_molecule(scorer, *in.mol, opt_.explain));
        m["warnings"] = in.warnings;
        m["error"] = nullptr;
      }
      mols.push_back(std::move(m));
    }
    return {{"schema_version", kSchemaVersion},
            {"kind", "explain"},
            {"layout_version", features::kLayoutVersion},
            {"model_digest", bundle_.digest()},
            {"target", target},
            {"ensemble_size", members.size()},
            {"molecules", mols}};
  }

private:
  ModelBundle bundle_;
  PredictorOptions opt_;
};

inline std::string json_number_text(const Json &v) { return v.is_null() ? std::string() : csv::number(v.get<double>()); }

// RFC 4180 rendering of a prediction payload.
inline std::string prediction_csv(const Json &payload) {
  require(payload.value("kind", "") == "predict", "NotAcceptable", "only prediction results have a CSV form");
  const bool activity = std::find(payload["modes"].begin(), payload["modes"].end(), kActivityMode) !=
                            payload["modes"].end() ||
                        std::find(payload["modes"].begin(), payload["modes"].end(), kAllMode) != payload["modes"].end();
  csv::Row header = {"index", "input", "canonical_smiles"};
  if (activity)
    for (const char *h: {"activity_label", "activity_probability", "activity_threshold"})
      header.emplace_back(h);
  for (const auto &l: payload["cell_lines"])
    header.push_back("pgi50:" + l.get<std::string>());
  header.emplace_back("warnings");
  header.emplace_back("error");
  std::string out = csv::join(header) + "\r\n";
  for (const auto &m: payload["molecules"]) {
    csv::Row row = {std::to_string(m["index"].get<std::size_t>()), m["input"].get<std::string>(),
                    m["canonical_smiles"].is_null() ? std::string() : m["canonical_smiles"].get<std::string>()};
    if (activity) {
      const auto &a = m["activity"];
      row.push_back(a.is_null() ? std::string() : a["label"].get<std::string>());
      row.push_back(a.is_null() ? std::string() : json_number_text(a["probability"]));
      row.push_back(a.is_null() ? std::string() : json_number_text(a["threshold"]));
    }
    for (const auto &l: payload["cell_lines"])
      row.push_back(m["pgi50"].is_null() ? std::string() : json_number_text(m["pgi50"][l.get<std::string>()]));
    std::string w;
    for (const auto &x: m["warnings"])
      w += (w.empty() ? "" : "; ") + x.get<std::string>();
    row.push_back(w);
    row.push_back(m["error"].is_null() ? std::string()
                                       : m["error"]["code"].get<std::string>() + ": " +
                                             m["error"]["message"].get<std::string>());
    out += csv::join(row) + "\r\n";
  }
  return out;
}

} // namespace onco::service

#endif // ONCOGAT_SERVICE_PREDICTOR_HPP
