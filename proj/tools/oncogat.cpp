//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <csignal>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oncogat/chem.hpp"
#include "oncogat/dataset.hpp"
#include "oncogat/explain.hpp"
#include "oncogat/features.hpp"
#include "oncogat/model.hpp"
#include "oncogat/service.hpp"

namespace fs = std::filesystem;
using namespace onco;
using service::Json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInput = 2, kModel = 3, kInternal = 4 };

std::string read_text(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw Error("IoError", "cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path &p, const std::string &text) {
  if (p.has_parent_path())
    fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out)
    throw Error("IoError", "cannot write " + p.string());
}

// stdout when the path is empty or "-".
void emit(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-")
    std::cout << text << std::flush;
  else
    write_text(path, text);
}

std::string file_slug(const std::string &name) {
  std::string s;
  for (char c: name)
    s += std::isalnum(static_cast<unsigned char>(c)) ? static_cast<char>(std::tolower(static_cast<unsigned char>(c)))
                                                     : '_';
  return s;
}

dataset::Ratios parse_ratios(const std::string &text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ','))
    v.push_back(std::stod(part));
  if (v.size() != 3)
    throw Error("BadConfig", "ratios need three comma-separated values");
  return {v[0], v[1], v[2]};
}

struct DataOptions {
  std::string input;
  std::string smiles_col = "smiles";
  std::string cell_line_col = "cell_line";
  std::string value_col = "value";
  std::string value_kind = "gi50_molar";

  void add_to(CLI::App *app) {
    app->add_option("--input", input, "GI50 table (CSV)");
    app->add_option("--smiles-col", smiles_col, "SMILES column")->capture_default_str();
    app->add_option("--cell-line-col", cell_line_col, "cell-line column")->capture_default_str();
    app->add_option("--value-col", value_col, "value column")->capture_default_str();
    app->add_option("--value-kind", value_kind, "gi50_molar or neg_log_gi50")
        ->check(CLI::IsMember({"gi50_molar", "neg_log_gi50"}))
        ->capture_default_str();
  }

  dataset::IngestResult ingest() const {
    if (input.empty())
      throw Error("BadConfig", "--input is required");
    dataset::ColumnMap map;
    map.smiles = smiles_col;
    map.cell_line = cell_line_col;
    map.value = value_col;
    map.kind = value_kind == "neg_log_gi50" ? dataset::ValueKind::neg_log_gi50 : dataset::ValueKind::gi50_molar;
    return dataset::ingest_gi50(read_text(input), map);
  }
};

struct InputOptions {
  std::vector<std::string> smiles;
  std::string smiles_file;
  std::string sdf;
  bool keep_largest_fragment = false;

  void add_to(CLI::App *app) {
    auto *a = app->add_option("--smiles", smiles, "SMILES string (repeatable)");
    auto *b = app->add_option("--smiles-file", smiles_file, "file with one SMILES per line");
    auto *c = app->add_option("--sdf", sdf, "SD file");
    a->excludes(b)->excludes(c);
    b->excludes(c);
    app->add_flag("--keep-largest-fragment", keep_largest_fragment,
                  "keep the largest fragment of dot-disconnected SMILES");
  }

  // The request document the job API would store for the same input.
  Json request(const std::string &kind) const {
    Json r = {{"kind", kind}};
    if (!sdf.empty())
      r["sdf_base64"] = httplib::detail::base64_encode(read_text(sdf));
    else if (!smiles_file.empty())
      r["smiles_list"] = service::read_smiles_lines(read_text(smiles_file));
    else if (!smiles.empty())
      r["smiles_list"] = smiles;
    else
      throw Error("BadConfig", "give --smiles, --smiles-file or --sdf");
    return r;
  }
};

int exit_for_payload(const Json &payload) {
  for (const auto &m: payload["molecules"])
    if (!m["error"].is_null())
      return kInput;
  return kOk;
}

// --- split -----------------------------------------------------------------

struct SplitCommand {
  DataOptions data;
  std::string smiles_file;
  std::string method = "density";
  std::uint64_t seed = 0;
  std::string ratios = "0.7,0.15,0.15";
  double exclusion_threshold = 0.95;
  double butina_threshold = 0.6;
  int min_cluster_size = 5;
  std::string out_dir = "split";

  void add(CLI::App &root) {
    auto *app = root.add_subcommand("split", "exclude near duplicates and assign folds");
    app->add_option("--input", data.input, "GI50 table (CSV)");
    app->add_option("--smiles-col", data.smiles_col)->capture_default_str();
    app->add_option("--cell-line-col", data.cell_line_col)->capture_default_str();
    app->add_option("--value-col", data.value_col)->capture_default_str();
    app->add_option("--value-kind", data.value_kind)
        ->check(CLI::IsMember({"gi50_molar", "neg_log_gi50"}))
        ->capture_default_str();
    app->add_option("--smiles-file", smiles_file, "plain compound list instead of a GI50 table")
        ->excludes(app->get_option("--input"));
    app->add_option("--method", method)->check(CLI::IsMember({"density", "butina", "random"}))->capture_default_str();
    app->add_option("--seed", seed)->capture_default_str();
    app->add_option("--ratios", ratios, "train,validation,test")->capture_default_str();
    app->add_option("--exclusion-threshold", exclusion_threshold)->capture_default_str();
    app->add_option("--butina-threshold", butina_threshold)->capture_default_str();
    app->add_option("--min-cluster-size", min_cluster_size)->capture_default_str();
    app->add_option("--out-dir", out_dir)->capture_default_str();
    app->callback([this] { run(); });
  }

  void run() {
    std::vector<std::string> compounds;
    if (!smiles_file.empty()) {
      std::set<std::string> uniq;
      for (const auto &s: service::read_smiles_lines(read_text(smiles_file)))
        uniq.insert(chem::canonical_smiles(chem::parse_smiles(s)));
      compounds.assign(uniq.begin(), uniq.end());
    } else if (!data.input.empty()) {
      const auto ing = data.ingest();
      write_text(fs::path(out_dir) / "rejected.csv", dataset::rejection_csv(ing.rejected));
      for (const auto &c: dataset::classify_compounds(dataset::aggregate_replicates(ing.records)))
        compounds.push_back(c.canonical_smiles);
    } else {
      throw Error("BadConfig", "give --input or --smiles-file");
    }
    std::vector<features::Fingerprint> fps;
    for (const auto &c: compounds)
      fps.push_back(features::ecfp(chem::parse_smiles(c)));
    dataset::SplitOptions opt;
    opt.method = dataset::parse_method(method);
    opt.seed = seed;
    opt.ratios = parse_ratios(ratios);
    opt.exclusion_threshold = exclusion_threshold;
    opt.butina_threshold = butina_threshold;
    opt.min_cluster_size = min_cluster_size;
    const auto r = dataset::split_compounds(compounds, fps, opt);
    write_text(fs::path(out_dir) / "manifest.csv", dataset::manifest_csv(r.split));
    std::string excluded = csv::join({"canonical_smiles", "representative", "similarity"}) + "\n";
    for (const auto &d: r.exclusion.dropped)
      excluded += csv::join({compounds[static_cast<std::size_t>(d.dropped)],
                             compounds[static_cast<std::size_t>(d.representative)], csv::number(d.similarity)}) +
                  "\n";
    write_text(fs::path(out_dir) / "excluded.csv", excluded);
    std::cerr << "split: " << compounds.size() << " compounds, " << r.exclusion.dropped.size()
              << " excluded, train/validation/test = " << r.split.members(dataset::Fold::train).size() << "/"
              << r.split.members(dataset::Fold::val).size() << "/"
              << r.split.members(dataset::Fold::test).size() << "\n";
    for (const auto &w: r.split.warnings)
      std::cerr << "warning: " << w << "\n";
  }
};

// --- train -----------------------------------------------------------------

struct TrainCommand {
  DataOptions data;
  std::string manifest;
  std::string task = "both";
  std::string out_dir = "models";
  std::uint64_t seed = 0;
  int ensemble = 1;
  int epochs = 100;
  int patience = 10;
  int batch_size = 64;
  int min_compounds = 600;
  bool explicit_h = false;
  std::string size_class;
  int hidden_dim = 0;
  std::vector<std::string> cell_lines;

  void add(CLI::App &root) {
    auto *app = root.add_subcommand("train", "train the activity classifier and per-cell-line regressors");
    data.add_to(app);
    app->add_option("--manifest", manifest, "split manifest");
    app->add_option("--task", task)->check(CLI::IsMember({"classify", "regress", "both"}))->capture_default_str();
    app->add_option("--out-dir", out_dir)->capture_default_str();
    app->add_option("--seed", seed)->capture_default_str();
    app->add_option("--ensemble", ensemble, "classifier checkpoints, seeds seed..seed+n-1")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--epochs", epochs)->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--patience", patience)->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--batch-size", batch_size)->check(CLI::PositiveNumber)->capture_default_str();
    app->add_option("--min-compounds", min_compounds, "drop cell lines with fewer compounds")->capture_default_str();
    app->add_flag("--explicit-h", explicit_h, "hydrogens as graph nodes");
    app->add_option("--size-class", size_class, "force small or full")->check(CLI::IsMember({"small", "full"}));
    app->add_option("--hidden-dim", hidden_dim, "override the hidden width");
    app->add_option("--cell-line", cell_lines, "restrict regression to these lines")->delimiter(',');
    app->callback([this] { run(); });
  }

  model::TrainOptions options() const {
    model::TrainOptions o;
    o.seed = seed;
    o.max_epochs = epochs;
    o.patience = patience;
    o.batch_size = batch_size;
    if (!size_class.empty())
      o.size_class = model::parse_size_class(size_class);
    if (hidden_dim > 0)
      o.hidden_dim = hidden_dim;
    return o;
  }

  void run() {
    if (manifest.empty())
      throw Error("BadConfig", "--manifest is required");
    const auto ing = data.ingest();
    const auto records = dataset::aggregate_replicates(ing.records);
    const auto split = dataset::parse_manifest(read_text(manifest));
    const auto fold_of = split.lookup();
    std::map<std::string, features::FeaturizedGraph> graphs;
    for (const auto &c: split.compounds)
      graphs.emplace(c, features::featurize(chem::parse_smiles(c), {explicit_h}));
    fs::create_directories(out_dir);
    Json metrics = {{"seed", seed}, {"classifiers", Json::array()}, {"regressors", Json::array()}};

    if (task != "regress") {
      std::vector<features::FeaturizedGraph> g;
      std::vector<double> y;
      std::vector<std::size_t> tr, va, te;
      for (const auto &c: dataset::classify_compounds(records)) {
        auto f = fold_of.find(c.canonical_smiles);
        if (f == fold_of.end())
          continue;
        auto &idx = f->second == dataset::Fold::train ? tr : f->second == dataset::Fold::val ? va : te;
        idx.push_back(g.size());
        g.push_back(graphs.at(c.canonical_smiles));
        y.push_back(c.label == dataset::Activity::active ? 1.0 : 0.0);
      }
      for (int m = 0; m < ensemble; ++m) {
        auto o = options();
        o.seed = seed + static_cast<std::uint64_t>(m);
        o.n_entries = g.size();
        const auto r = model::train(model::Task::classify, g, y, tr, va, o);
        const auto name = "activity-" + std::to_string(m);
        model::save_checkpoint(r.checkpoint, (fs::path(out_dir) / (name + ".ckpt")).string());
        write_text(fs::path(out_dir) / (name + "-log.csv"), model::training_log_csv(r.log));
        Json entry = {{"checkpoint", name + ".ckpt"},
                      {"digest", model::checkpoint_digest(r.checkpoint)},
                      {"epochs_run", r.checkpoint.meta.epochs_run},
                      {"threshold", r.checkpoint.threshold ? r.checkpoint.threshold->threshold : 0.5}};
        if (!te.empty()) {
          std::vector<const features::FeaturizedGraph *> tg;
          std::vector<int> labels;
          for (auto i: te) {
            tg.push_back(&g[i]);
            labels.push_back(static_cast<int>(y[i]));
          }
          try {
            const auto cm = model::compute_classification_metrics(model::predict_scores(r.checkpoint, tg), labels,
                                                                  entry["threshold"].get<double>());
            entry["test"] = {{"n", te.size()},       {"accuracy", cm.accuracy}, {"auc", cm.auc},
                             {"precision", cm.precision}, {"recall", cm.recall},     {"mcc", cm.mcc}};
          } catch (const Error &e) {
            entry["test"] = service::error_json(e);
          }
        }
        metrics["classifiers"].push_back(entry);
        std::cerr << "train: " << name << " done after " << r.checkpoint.meta.epochs_run << " epochs\n";
      }
    }

    if (task != "classify") {
      auto filtered = dataset::filter_cell_lines(records, min_compounds);
      if (!cell_lines.empty()) {
        std::vector<dataset::ActivityRecord> keep;
        for (const auto &r: filtered.records)
          if (std::find(cell_lines.begin(), cell_lines.end(), r.cell_line) != cell_lines.end())
            keep.push_back(r);
        filtered.records = std::move(keep);
      }
      for (const auto &[line, n]: filtered.removed)
        std::cerr << "train: cell line " << line << " has " << n << " compounds, below " << min_compounds << "\n";
      auto o = options();
      for (auto &m: model::train_regressors(filtered.records, split, graphs, o)) {
        const auto name = "pgi50-" + file_slug(m.cell_line);
        model::save_checkpoint(m.result.checkpoint, (fs::path(out_dir) / (name + ".ckpt")).string());
        write_text(fs::path(out_dir) / (name + "-log.csv"), model::training_log_csv(m.result.log));
        Json entry = {{"cell_line", m.cell_line},
                      {"checkpoint", name + ".ckpt"},
                      {"digest", model::checkpoint_digest(m.result.checkpoint)},
                      {"n_entries", m.n_entries},
                      {"size_class", model::size_class_name(m.result.checkpoint.model.config().size_class)}};
        std::vector<const features::FeaturizedGraph *> tg;
        std::vector<double> target;
        for (const auto &r: filtered.records) {
          auto f = fold_of.find(r.canonical_smiles);
          if (r.cell_line == m.cell_line && f != fold_of.end() && f->second == dataset::Fold::test) {
            tg.push_back(&graphs.at(r.canonical_smiles));
            target.push_back(r.pgi50);
          }
        }
        try {
          const auto out = model::predict_outputs(m.result.checkpoint, tg);
          std::vector<double> pred(out.data(), out.data() + out.rows());
          const auto rm = model::compute_regression_metrics(pred, target);
          entry["test"] = {{"n", tg.size()}, {"pearson_r", rm.pearson_r}, {"rmse", rm.rmse}};
        } catch (const Error &e) {
          entry["test"] = service::error_json(e);
        }
        metrics["regressors"].push_back(entry);
        std::cerr << "train: " << name << " done\n";
      }
    }
    write_text(fs::path(out_dir) / "metrics.json", metrics.dump(2) + "\n");
  }
};

// --- predict / explain -----------------------------------------------------

struct PredictCommand {
  InputOptions input;
  std::vector<std::string> modes;
  std::string model_dir = "models";
  std::string format = "csv";
  std::string out;
  int status = kOk;

  void add(CLI::App &root) {
    auto *app = root.add_subcommand("predict", "predict activity and pGI50");
    input.add_to(app);
    app->add_option("--mode", modes, "activity, a tissue group, or all (repeatable)")->delimiter(',');
    app->add_option("--model-dir", model_dir)->capture_default_str();
    app->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app->add_option("--out", out, "output file (default stdout)");
    app->callback([this] { run(); });
  }

  void run() {
    const service::RequestLimits lim{chem::kMaxBatch, input.keep_largest_fragment};
    auto req = input.request("predict");
    req["modes"] = modes;
    const auto normal = service::normalise_request(req, lim);
    const service::Predictor p(service::ModelBundle::load(model_dir));
    const auto payload = service::execute_request(p, normal, lim);
    emit(out, format == "json" ? payload.dump(2) + "\n" : service::prediction_csv(payload));
    status = exit_for_payload(payload);
  }
};

struct ExplainCommand {
  InputOptions input;
  std::string target = "activity";
  std::string model_dir = "models";
  std::string out;
  std::string svg_dir;
  double fraction = explain::kDisplayFraction;
  int repeats = explain::kDefaultRepeats;
  std::uint64_t seed = 0;
  int ig_steps = explain::kDefaultIgSteps;
  int status = kOk;

  void add(CLI::App &root) {
    auto *app = root.add_subcommand("explain", "atom attributions, faithfulness and depictions");
    input.add_to(app);
    app->add_option("--target", target, "activity or a cell line")->capture_default_str();
    app->add_option("--model-dir", model_dir)->capture_default_str();
    app->add_option("--out", out, "JSON report (default stdout)");
    app->add_option("--svg-dir", svg_dir, "also write one SVG per molecule");
    app->add_option("--fraction", fraction, "share of heavy atoms highlighted")->capture_default_str();
    app->add_option("--repeats", repeats, "random masks per fraction")->capture_default_str();
    app->add_option("--seed", seed)->capture_default_str();
    app->add_option("--ig-steps", ig_steps, "integrated-gradient steps, 0 to skip")->capture_default_str();
    app->callback([this] { run(); });
  }

  void run() {
    const service::RequestLimits lim{chem::kMaxBatch, input.keep_largest_fragment};
    auto req = input.request("explain");
    req["target"] = target;
    const auto normal = service::normalise_request(req, lim);
    service::PredictorOptions po;
    po.explain.display_fraction = fraction;
    po.explain.repeats = repeats;
    po.explain.seed = seed;
    po.explain.ig_steps = ig_steps;
    const service::Predictor p(service::ModelBundle::load(model_dir), po);
    const auto payload = service::execute_request(p, normal, lim);
    if (!svg_dir.empty())
      for (const auto &m: payload["molecules"])
        if (!m["explanation"].is_null())
          write_text(fs::path(svg_dir) / ("molecule-" + std::to_string(m["index"].get<int>()) + ".svg"),
                     m["explanation"]["svg"].get<std::string>());
    emit(out, payload.dump(2) + "\n");
    status = exit_for_payload(payload);
  }
};

// --- audit -----------------------------------------------------------------

struct AuditCommand {
  std::string manifest;
  std::string out_dir = "audit";
  bool baseline = false;

  void add(CLI::App &root) {
    auto *app = root.add_subcommand("audit", "nearest-train similarity of every test compound");
    app->add_option("--manifest", manifest);
    app->add_option("--out-dir", out_dir)->capture_default_str();
    app->add_flag("--baseline", baseline, "also audit a random split of the same compounds");
    app->callback([this] { run(); });
  }

  void run() {
    if (manifest.empty())
      throw Error("BadConfig", "--manifest is required");
    const auto split = dataset::parse_manifest(read_text(manifest));
    std::vector<features::Fingerprint> fps;
    for (const auto &c: split.compounds)
      fps.push_back(features::ecfp(chem::parse_smiles(c)));
    const auto a = dataset::audit_split(split, fps);
    write_text(fs::path(out_dir) / "audit.csv", dataset::audit_csv(split, a));
    write_text(fs::path(out_dir) / "audit_summary.csv", dataset::audit_summary_csv(a));
    std::cout << "median_max_similarity," << csv::number(a.median()) << "\n";
    std::cout << "max_cross_fold_similarity," << csv::number(dataset::max_cross_fold_similarity(split, fps)) << "\n";
    if (baseline) {
      auto r = dataset::random_split(split.compounds.size(), split.ratios, split.seed);
      r.compounds = split.compounds;
      const auto b = dataset::audit_split(r, fps);
      write_text(fs::path(out_dir) / "baseline_summary.csv", dataset::audit_summary_csv(b));
      std::cout << "baseline_median_max_similarity," << csv::number(b.median()) << "\n";
    }
  }
};

// --- serve -----------------------------------------------------------------

service::ApiServer *g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server)
    std::thread([] { g_server->stop(); }).detach();
}

struct ServeCommand {
  std::string host, model_dir, data_dir;
  int port = -1, workers = 0, queue_capacity = 0;
  service::Config *config = nullptr;

  void add(CLI::App &root, service::Config &c) {
    config = &c;
    auto *app = root.add_subcommand("serve", "run the JSON job API");
    app->add_option("--host", host);
    app->add_option("--port", port, "0 picks a free port");
    app->add_option("--model-dir", model_dir);
    app->add_option("--data-dir", data_dir);
    app->add_option("--workers", workers);
    app->add_option("--queue-capacity", queue_capacity);
    app->callback([this] { run(); });
  }

  void run() {
    auto c = *config;
    if (!host.empty())
      c.set("host", host);
    if (port >= 0)
      c.set("port", std::to_string(port));
    if (!model_dir.empty())
      c.set("model_dir", model_dir);
    if (!data_dir.empty())
      c.set("data_dir", data_dir);
    if (workers > 0)
      c.set("workers", std::to_string(workers));
    if (queue_capacity > 0)
      c.set("queue_capacity", std::to_string(queue_capacity));
    const auto s = service::ServiceSettings::from(c);
    service::PredictorOptions po;
    po.max_batch = s.max_batch;
    po.explain.repeats = s.explain_repeats;
    po.explain.ig_steps = s.ig_steps;
    po.explain.seed = s.seed;
    auto predictor = std::make_shared<service::Predictor>(service::ModelBundle::load(s.model_dir), po);
    service::ApiServer server(s, predictor);
    const int bound = server.bind();
    std::cerr << "serving on http://" << s.host << ":" << bound << " (data in " << s.data_dir.string() << ")\n";
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    server.serve();
    g_server = nullptr;
  }
};

// Config values fill options the command line left unset. Keys are the
// long option names with '-' replaced by '_'.
void apply_config(CLI::App *app, const service::Config &c) {
  for (auto *opt: app->get_options()) {
    if (opt->count() != 0 || opt->get_lnames().empty())
      continue;
    auto key = opt->get_lnames().front();
    std::replace(key.begin(), key.end(), '-', '_');
    if (!c.has(key))
      continue;
    opt->add_result(c.get(key, ""));
    opt->run_callback();
  }
}

std::string config_path(int argc, char **argv) {
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc)
      return argv[i + 1];
    if (std::strncmp(argv[i], "--config=", 9) == 0)
      return argv[i] + 9;
  }
  return {};
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"oncogat: anti-cancer activity and pGI50 prediction from molecular graphs"};
  app.require_subcommand(1);
  std::string config_file;
  app.add_option("--config", config_file, "key = value settings; flags override them");

  service::Config config;
  try {
    if (const auto p = config_path(argc, argv); !p.empty())
      config = service::Config::load(p);
  } catch (const Error &e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    return kUsage;
  }

  SplitCommand split;
  TrainCommand train;
  PredictCommand predict;
  ExplainCommand explain_cmd;
  AuditCommand audit;
  ServeCommand serve;
  split.add(app);
  train.add(app);
  predict.add(app);
  explain_cmd.add(app);
  audit.add(app);
  serve.add(app, config);

  // Config defaults are applied between parsing and the command callbacks.
  app.parse_complete_callback([&] {
    for (auto *sub: app.get_subcommands())
      if (sub->get_name() != "serve")
        apply_config(sub, config);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const ParseError &e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    return kInput;
  } catch (const ModelError &e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    return kModel;
  } catch (const Error &e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    const auto &c = e.code();
    if (c == "BadConfig" || c == "UnknownMode" || c == "InvalidArgument" || c == "FractionOutOfRange" ||
        c == "RatiosDontSumToOne")
      return kUsage;
    return kInput;
  } catch (const std::exception &e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return kInternal;
  }
  if (app.got_subcommand("predict"))
    return predict.status;
  if (app.got_subcommand("explain"))
    return explain_cmd.status;
  return kOk;
}
