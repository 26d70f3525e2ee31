//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <set>
#include <thread>

#include "oncogat/service.hpp"
#include "support/service_fixtures.hpp"

namespace onco::service {
namespace {

using testing::TempDir;

std::string throws_code(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.code();
  }
  return "";
}

TEST(Config, ParsesKeyValueLines) {
  const auto c = Config::parse("# header\nport = 9000\n\nhost=0.0.0.0  # trailing\nport = 9001\nflag = yes\n");
  EXPECT_EQ(c.get_int("port", 0), 9001);
  EXPECT_EQ(c.get("host", ""), "0.0.0.0");
  EXPECT_TRUE(c.get_bool("flag", false));
  EXPECT_EQ(c.get("missing", "x"), "x");
  EXPECT_EQ(throws_code([] { Config::parse("novalue\n"); }), "BadConfig");
  EXPECT_EQ(throws_code([] { Config::parse(" = 3\n"); }), "BadConfig");
  EXPECT_EQ(throws_code([&] { Config::parse("port = 80x").get_int("port", 0); }), "BadConfig");
  EXPECT_EQ(throws_code([&] { Config::parse("f = maybe").get_bool("f", false); }), "BadConfig");
  EXPECT_EQ(throws_code([] { Config::load("/nonexistent/oncogat.conf"); }), "IoError");
}

TEST(Config, SettingsValidationAndEnvironmentOverride) {
  ::unsetenv(kDataDirEnv);
  auto s = ServiceSettings::from(Config::parse("data_dir = /tmp/a\nworkers = 3\nmax_batch = 100\n"));
  EXPECT_EQ(s.data_dir, "/tmp/a");
  EXPECT_EQ(s.workers, 3);
  EXPECT_EQ(s.max_batch, 100u);
  ::setenv(kDataDirEnv, "/tmp/b", 1);
  s = ServiceSettings::from(Config::parse("data_dir = /tmp/a\n"));
  EXPECT_EQ(s.data_dir, "/tmp/b");
  ::unsetenv(kDataDirEnv);
  EXPECT_EQ(throws_code([] { ServiceSettings::from(Config::parse("workers = 0")); }), "BadConfig");
  EXPECT_EQ(throws_code([] { ServiceSettings::from(Config::parse("max_batch = 2001")); }), "BadConfig");
}

TEST(Modes, ParsingAndSelection) {
  const auto def = parse_modes({});
  EXPECT_TRUE(def.activity);
  EXPECT_TRUE(def.tissues.empty());
  EXPECT_EQ(def.names(), std::vector<std::string>{"activity"});

  const auto m = parse_modes({"lung", "breast", "lung"});
  EXPECT_FALSE(m.activity);
  EXPECT_EQ(m.tissues, (std::vector<std::string>{"breast", "lung"}));
  EXPECT_TRUE(m.selects("MCF7"));
  EXPECT_TRUE(m.selects("a549/atcc"));
  EXPECT_FALSE(m.selects("PC-3"));
  EXPECT_FALSE(m.selects("CUSTOM-1"));

  const auto all = parse_modes({"all"});
  EXPECT_TRUE(all.activity);
  EXPECT_EQ(all.tissues.size(), kTissues.size());
  EXPECT_TRUE(all.selects("CUSTOM-1"));
  EXPECT_EQ(all.names(), std::vector<std::string>{"all"});

  EXPECT_EQ(throws_code([] { parse_modes({"pancreas"}); }), "UnknownMode");
}

TEST(Modes, EveryTissueHasCellLines) {
  std::map<std::string, int> per;
  for (const auto &[line, t]: tissue_table())
    ++per[t];
  for (auto t: kTissues)
    EXPECT_GT(per[std::string(t)], 0) << t;
  EXPECT_EQ(per.size(), kTissues.size());
  EXPECT_EQ(tissue_of("NCI-H460"), "lung");
  EXPECT_EQ(tissue_of("HL-60(TB)"), "leukaemia");
  EXPECT_EQ(tissue_of("786-0"), "kidney");
  EXPECT_EQ(tissue_of("nowhere"), "");
}

TEST(Base64, KnownVectors) {
  EXPECT_EQ(base64_decode(""), "");
  EXPECT_EQ(base64_decode("Zg=="), "f");
  EXPECT_EQ(base64_decode("Zm8="), "fo");
  EXPECT_EQ(base64_decode("Zm9v"), "foo");
  EXPECT_EQ(base64_decode("Zm9vYmFy"), "foobar");
  EXPECT_EQ(base64_decode("Zm9v\nYmE="), "fooba");
  EXPECT_EQ(throws_code([] { base64_decode("Zm9v!"); }), "BadBase64");
  EXPECT_EQ(throws_code([] { base64_decode("Z"); }), "BadBase64");
  const std::string bytes = "line one\nline two\r\n\x01\xff";
  EXPECT_EQ(base64_decode(httplib::detail::base64_encode(bytes)), bytes);
}

class PredictorTest : public ::testing::Test {
protected:
  static void SetUpTestSuite() {
    dir_ = new TempDir("models");
    testing::write_model_dir(dir_->path());
  }
  static void TearDownTestSuite() { delete dir_; }

  static ModelBundle bundle() { return ModelBundle::load(dir_->path()); }

  static TempDir *dir_;
};

TempDir *PredictorTest::dir_ = nullptr;

TEST_F(PredictorTest, BundleLoadsAndDigests) {
  const auto b = bundle();
  EXPECT_EQ(b.classifiers().size(), 2u);
  EXPECT_EQ(b.regressors().size(), 3u);
  EXPECT_EQ(b.digest(), bundle().digest());
  EXPECT_EQ(b.digest().size(), 16u);

  ModelBundle partial;
  partial.add(*b.classifiers()[0], "activity-0.ckpt");
  EXPECT_NE(partial.digest(), b.digest());
  EXPECT_EQ(throws_code([&] {
              partial.add(*b.regressors().at("MCF7"));
              partial.add(*b.regressors().at("MCF7"));
            }),
            "DuplicateModel");
  EXPECT_EQ(throws_code([] { ModelBundle::load("/nonexistent/models"); }), "MissingModel");
}

TEST_F(PredictorTest, PredictionPayload) {
  const Predictor p(bundle());
  const auto inputs = parse_smiles_inputs({"CCO", "C1CC", "c1ccccc1O"}, 2000);
  const auto out = p.predict(inputs, parse_modes({"activity", "breast", "lung"}));
  EXPECT_EQ(out["schema_version"], kSchemaVersion);
  EXPECT_EQ(out["kind"], "predict");
  EXPECT_EQ(out["layout_version"], features::kLayoutVersion);
  EXPECT_EQ(out["model_digest"], p.bundle().digest());
  EXPECT_EQ(out["cell_lines"], Json::array({"A549/ATCC", "MCF7"}));
  ASSERT_EQ(out["molecules"].size(), 3u);

  const auto &ok = out["molecules"][0];
  EXPECT_EQ(ok["canonical_smiles"], "CCO");
  const double prob = ok["activity"]["probability"];
  const double thr = ok["activity"]["threshold"];
  EXPECT_GE(prob, 0.0);
  EXPECT_LE(prob, 1.0);
  EXPECT_EQ(ok["activity"]["label"], prob >= thr ? "active" : "inactive");
  EXPECT_NEAR(thr, (0.4 + 0.05 * (11 % 3) + 0.4 + 0.05 * (12 % 3)) / 2.0, 1e-12);
  EXPECT_EQ(ok["pgi50"].size(), 2u);
  EXPECT_TRUE(ok["error"].is_null());

  const auto &bad = out["molecules"][1];
  EXPECT_TRUE(bad["canonical_smiles"].is_null());
  EXPECT_EQ(bad["error"]["code"], "UnclosedRing");
  EXPECT_TRUE(bad["error"]["detail"].contains("offset"));

  // Per-molecule results do not depend on batch neighbours beyond rounding.
  const auto single = p.predict(parse_smiles_inputs({"c1ccccc1O"}, 2000), parse_modes({"activity", "breast", "lung"}));
  EXPECT_NEAR(single["molecules"][0]["activity"]["probability"].get<double>(),
              out["molecules"][2]["activity"]["probability"].get<double>(), 1e-12);
}

TEST_F(PredictorTest, ModesSelectCellLines) {
  const Predictor p(bundle());
  const auto in = parse_smiles_inputs({"CCO"}, 2000);
  const auto lung = p.predict(in, parse_modes({"lung"}));
  EXPECT_TRUE(lung["molecules"][0]["activity"].is_null());
  EXPECT_EQ(lung["cell_lines"], Json::array({"A549/ATCC"}));
  const auto all = p.predict(in, parse_modes({"all"}));
  EXPECT_EQ(all["cell_lines"].size(), 3u);
  const auto prostate = p.predict(in, parse_modes({"prostate"}));
  EXPECT_EQ(prostate["cell_lines"].size(), 0u);
  EXPECT_EQ(prostate["warnings"].size(), 1u);

  ModelBundle regress_only;
  regress_only.add(*bundle().regressors().at("MCF7"));
  EXPECT_EQ(throws_code([&] { Predictor(regress_only).predict(in, parse_modes({})); }), "MissingModel");
}

TEST_F(PredictorTest, FragmentsAndBatchLimit) {
  const auto strict = parse_smiles_inputs({"CCO.Cl"}, 10);
  EXPECT_EQ(strict[0].error->at("code"), "DisconnectedInput");
  const auto kept = parse_smiles_inputs({"CCO.Cl"}, 10, true);
  ASSERT_TRUE(kept[0].mol);
  EXPECT_EQ(kept[0].warnings.size(), 1u);
  EXPECT_EQ(throws_code([] { parse_smiles_inputs(std::vector<std::string>(11, "C"), 10); }), "BatchLimitExceeded");
  EXPECT_NO_THROW(parse_smiles_inputs(std::vector<std::string>(10, "C"), 10));
}

TEST_F(PredictorTest, CsvRendering) {
  const Predictor p(bundle());
  const auto out = p.predict(parse_smiles_inputs({"CCO", "C(", "CC(=O)O"}, 2000), parse_modes({"activity", "breast"}));
  const auto text = prediction_csv(out);
  const auto rows = csv::parse(text);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], (csv::Row{"index", "input", "canonical_smiles", "activity_label", "activity_probability",
                               "activity_threshold", "pgi50:MCF7", "warnings", "error"}));
  EXPECT_EQ(rows[1][2], "CCO");
  EXPECT_EQ(std::stod(rows[1][4]), out["molecules"][0]["activity"]["probability"].get<double>());
  EXPECT_EQ(std::stod(rows[1][6]), out["molecules"][0]["pgi50"]["MCF7"].get<double>());
  EXPECT_TRUE(rows[2][2].empty());
  EXPECT_FALSE(rows[2][8].empty());
  EXPECT_NE(text.find("\r\n"), std::string::npos);
  EXPECT_EQ(throws_code([&] { prediction_csv(Json{{"kind", "explain"}}); }), "NotAcceptable");
}

TEST_F(PredictorTest, ExplainPayload) {
  PredictorOptions opt;
  opt.explain.repeats = 10;
  opt.explain.ig_steps = 8;
  const Predictor p(bundle(), opt);
  const auto out = p.explain(parse_smiles_inputs({"CC(=O)Oc1ccccc1C(=O)O", "C1CC"}, 2000));
  EXPECT_EQ(out["kind"], "explain");
  EXPECT_EQ(out["ensemble_size"], 2);
  const auto &e = out["molecules"][0]["explanation"];
  EXPECT_EQ(e["attribution"]["atoms"].size(), 13u);
  EXPECT_EQ(e["faithfulness"]["fractions"].size(), 4u);
  EXPECT_NE(e["svg"].get<std::string>().find("<svg"), std::string::npos);
  EXPECT_FALSE(out["molecules"][1]["error"].is_null());
  EXPECT_EQ(p.explain(parse_smiles_inputs({"CCO"}, 10), "MCF7")["ensemble_size"], 1);
  EXPECT_EQ(throws_code([&] { p.explain(parse_smiles_inputs({"CCO"}, 10), "PC-3"); }), "MissingModel");
}

TEST(Requests, Normalisation) {
  const RequestLimits lim{5, false};
  auto r = normalise_request(Json{{"smiles", "CCO"}}, lim);
  EXPECT_EQ(r["kind"], "predict");
  EXPECT_EQ(r["smiles_list"], Json::array({"CCO"}));
  EXPECT_EQ(r["modes"], Json::array({"activity"}));
  r = normalise_request(Json{{"kind", "explain"}, {"smiles_list", {"CCO", "C"}}, {"target", "MCF7"}}, lim);
  EXPECT_EQ(r["target"], "MCF7");
  const std::string sdf = "ethanol\n  test\n\n  3  2  0  0  0  0  0  0  0  0999 V2000\n"
                          "    0.0000    0.0000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
                          "    1.0000    0.0000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0\n"
                          "    2.0000    0.0000    0.0000 O   0  0  0  0  0  0  0  0  0  0  0  0\n"
                          "  1  2  1  0\n  2  3  1  0\nM  END\n$$$$\n";
  r = normalise_request(Json{{"sdf_base64", httplib::detail::base64_encode(sdf)}, {"modes", "lung"}}, lim);
  EXPECT_EQ(r["modes"], Json::array({"lung"}));
  const auto inputs = request_inputs(r, lim);
  ASSERT_EQ(inputs.size(), 1u);
  EXPECT_EQ(chem::canonical_smiles(*inputs[0].mol), "CCO");

  EXPECT_EQ(throws_code([&] { normalise_request(Json::array(), lim); }), "BadRequest");
  EXPECT_EQ(throws_code([&] { normalise_request(Json{{"kind", "train"}, {"smiles", "C"}}, lim); }), "BadRequest");
  EXPECT_EQ(throws_code([&] { normalise_request(Json{{"smiles", "C"}, {"smiles_list", {"C"}}}, lim); }),
            "BadRequest");
  EXPECT_EQ(throws_code([&] { normalise_request(Json{{"smiles_list", Json::array()}}, lim); }), "BadRequest");
  EXPECT_EQ(throws_code([&] { normalise_request(Json{{"smiles_list", {1, 2}}}, lim); }), "BadRequest");
  EXPECT_EQ(throws_code([&] { normalise_request(Json{{"smiles_list", std::vector<std::string>(6, "C")}}, lim); }),
            "BatchLimitExceeded");
  EXPECT_EQ(throws_code([&] { normalise_request(Json{{"smiles", "C"}, {"modes", {"pancreas"}}}, lim); }),
            "UnknownMode");
  EXPECT_EQ(throws_code([&] { normalise_request(Json{{"sdf_base64", "@@"}}, lim); }), "BadBase64");
}

TEST(Requests, ValidateSmiles) {
  const auto ok = validate_smiles("OCC");
  EXPECT_TRUE(ok["ok"]);
  EXPECT_EQ(ok["canonical_smiles"], "CCO");
  EXPECT_EQ(ok["heavy_atoms"], 3);
  const auto bad = validate_smiles("C1CC");
  EXPECT_FALSE(bad["ok"]);
  EXPECT_EQ(bad["error"]["code"], "UnclosedRing");
  EXPECT_TRUE(bad["error"]["detail"]["offset"].is_number());
}

// Handler that echoes the request, optionally failing or blocking.
struct EchoHandler {
  std::shared_ptr<std::atomic<bool>> gate = std::make_shared<std::atomic<bool>>(true);
  std::shared_ptr<std::vector<std::string>> order = std::make_shared<std::vector<std::string>>();
  std::shared_ptr<std::mutex> mu = std::make_shared<std::mutex>();

  Json operator()(const std::string &kind, const Json &req) const {
    while (!gate->load())
      std::this_thread::sleep_for(std::chrono::milliseconds(1));
    if (req.value("fail", false))
      throw Error("Boom", "requested failure");
    {
      std::lock_guard lock(*mu);
      order->push_back(req.value("tag", ""));
    }
    return {{"kind", kind}, {"echo", req}};
  }
};

TEST(JobStore, LifecycleAndRestart) {
  TempDir dir("jobs");
  std::string done_id, failed_id;
  {
    JobStore store(dir.path(), EchoHandler{});
    const auto a = store.submit("predict", {{"tag", "a"}});
    const auto b = store.submit("predict", {{"tag", "b"}, {"fail", true}});
    EXPECT_NE(a.job_id, b.job_id);
    EXPECT_EQ(a.status, JobStatus::queued);
    store.wait_idle();
    const auto ra = store.get(a.job_id);
    ASSERT_TRUE(ra);
    EXPECT_EQ(ra->status, JobStatus::done);
    EXPECT_FALSE(ra->started_at.empty());
    EXPECT_FALSE(ra->finished_at.empty());
    EXPECT_EQ(ra->input_digest.size(), 16u);
    EXPECT_EQ(store.get(b.job_id)->status, JobStatus::failed);
    EXPECT_EQ(store.get(b.job_id)->error["code"], "Boom");
    EXPECT_FALSE(store.result(b.job_id));
    EXPECT_FALSE(store.get("nope"));
    done_id = a.job_id;
    failed_id = b.job_id;
  }
  JobStore reopened(dir.path(), EchoHandler{});
  const auto r = reopened.get(done_id);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, JobStatus::done);
  const auto bytes = reopened.result(done_id);
  ASSERT_TRUE(bytes);
  EXPECT_EQ(Json::parse(*bytes)["echo"]["tag"], "a");
  EXPECT_EQ(reopened.get(failed_id)->status, JobStatus::failed);
}

TEST(JobStore, RecoveryFailsRunningAndResumesQueued) {
  TempDir dir("recover");
  std::filesystem::create_directories(dir.path() / "jobs");
  std::filesystem::create_directories(dir.path() / "requests");
  auto write_job = [&](const std::string &id, JobStatus st, std::uint64_t seq) {
    JobRecord r;
    r.job_id = id;
    r.status = st;
    r.kind = "predict";
    r.sequence = seq;
    r.submitted_at = utc_now();
    detail::write_atomic(dir.path() / "jobs" / (id + ".json"), r.to_json().dump());
    detail::write_atomic(dir.path() / "requests" / (id + ".json"), Json{{"tag", id}}.dump());
  };
  write_job("aa01", JobStatus::running, 1);
  write_job("aa03", JobStatus::queued, 3);
  write_job("aa02", JobStatus::queued, 2);
  EchoHandler h;
  JobStore store(dir.path(), h);
  store.wait_idle();
  EXPECT_EQ(store.get("aa01")->status, JobStatus::failed);
  EXPECT_EQ(store.get("aa01")->error["code"], "Interrupted");
  EXPECT_EQ(store.get("aa02")->status, JobStatus::done);
  EXPECT_EQ(store.get("aa03")->status, JobStatus::done);
  EXPECT_EQ(*h.order, (std::vector<std::string>{"aa02", "aa03"}));
  const auto on_disk = Json::parse(detail::read_file(dir.path() / "jobs" / "aa01.json"));
  EXPECT_EQ(on_disk["status"], "failed");
  // New ids continue the recovered sequence.
  EXPECT_EQ(store.submit("predict", {{"tag", "x"}}).sequence, 4u);
}

TEST(JobStore, FifoBackpressureAndUniqueIds) {
  TempDir dir("fifo");
  EchoHandler h;
  h.gate->store(false);
  JobStore store(dir.path(), h, {1, 3});
  std::set<std::string> ids;
  ids.insert(store.submit("predict", {{"tag", "0"}}).job_id);
  while (store.queued() != 0) // the single worker has taken job 0
    std::this_thread::sleep_for(std::chrono::milliseconds(1));
  for (int i = 1; i <= 3; ++i)
    ids.insert(store.submit("predict", {{"tag", std::to_string(i)}}).job_id);
  EXPECT_EQ(throws_code([&] { store.submit("predict", {{"tag", "overflow"}}); }), "QueueFull");
  h.gate->store(true);
  store.wait_idle();
  EXPECT_EQ(ids.size(), 4u);
  EXPECT_EQ(*h.order, (std::vector<std::string>{"0", "1", "2", "3"}));
}

TEST(JobStore, ConcurrentSubmissionsGetDistinctIds) {
  TempDir dir("concurrent");
  JobStore store(dir.path(), EchoHandler{}, {2, 1000});
  std::vector<std::string> ids(200);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&, t] {
      for (int i = 0; i < 50; ++i)
        ids[static_cast<std::size_t>(t * 50 + i)] = store.submit("predict", {{"tag", "c"}}).job_id;
    });
  for (auto &th: threads)
    th.join();
  store.wait_idle();
  EXPECT_EQ(std::set<std::string>(ids.begin(), ids.end()).size(), ids.size());
}

TEST(JobStore, DiskFailureBecomesFailedJob) {
  TempDir dir("diskfull");
  JobStore store(dir.path(), EchoHandler{});
  std::filesystem::remove_all(dir.path() / "results");
  std::ofstream(dir.path() / "results") << "not a directory";
  const auto r = store.submit("predict", {{"tag", "a"}});
  store.wait_idle();
  const auto got = store.get(r.job_id);
  EXPECT_EQ(got->status, JobStatus::failed);
  EXPECT_EQ(got->error["code"], "DiskFull");
}

TEST(JobStore, TransitionRules) {
  EXPECT_TRUE(valid_transition(JobStatus::queued, JobStatus::running));
  EXPECT_TRUE(valid_transition(JobStatus::running, JobStatus::done));
  EXPECT_TRUE(valid_transition(JobStatus::running, JobStatus::failed));
  EXPECT_FALSE(valid_transition(JobStatus::done, JobStatus::running));
  EXPECT_FALSE(valid_transition(JobStatus::failed, JobStatus::done));
  EXPECT_FALSE(valid_transition(JobStatus::queued, JobStatus::done));
  EXPECT_FALSE(valid_transition(JobStatus::running, JobStatus::queued));
}

class HttpTest : public PredictorTest {
protected:
  void SetUp() override {
    data_ = std::make_unique<TempDir>("http");
    settings_.data_dir = data_->path();
    settings_.port = 0;
    settings_.max_body_bytes = 1u << 20;
    predictor_ = std::make_shared<Predictor>(bundle());
    server_ = std::make_unique<ApiServer>(settings_, predictor_);
    server_->start();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", server_->port());
  }
  void TearDown() override {
    client_.reset();
    server_.reset();
    data_.reset();
  }

  httplib::Result post(const Json &body) { return client_->Post("/api/jobs", body.dump(), "application/json"); }

  Json poll(const std::string &id) {
    for (int i = 0; i < 2000; ++i) {
      auto r = client_->Get("/api/jobs/" + id);
      const auto j = Json::parse(r->body);
      if (j["status"] == "done" || j["status"] == "failed")
        return j;
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
    return {};
  }

  ServiceSettings settings_;
  std::unique_ptr<TempDir> data_;
  std::shared_ptr<Predictor> predictor_;
  std::unique_ptr<ApiServer> server_;
  std::unique_ptr<httplib::Client> client_;
};

TEST_F(HttpTest, HealthAndUnknownJob) {
  auto h = client_->Get("/api/health");
  ASSERT_TRUE(h);
  EXPECT_EQ(h->status, 200);
  EXPECT_EQ(Json::parse(h->body)["model_digest"], predictor_->bundle().digest());
  for (const char *path: {"/api/jobs/deadbeef", "/api/jobs/deadbeef/result", "/api/jobs/not-hex"}) {
    auto r = client_->Get(path);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 404) << path;
    const auto body = Json::parse(r->body);
    EXPECT_EQ(body["code"], "UnknownJob");
    EXPECT_TRUE(body.contains("message"));
    EXPECT_TRUE(body.contains("detail"));
  }
}

TEST_F(HttpTest, SubmitPollAndMatchDirectExecution) {
  const Json body = {{"kind", "predict"}, {"smiles_list", {"CCO", "c1ccccc1", "C1CC"}}, {"modes", {"activity", "lung"}}};
  auto r = post(body);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 202);
  const auto id = Json::parse(r->body)["job_id"].get<std::string>();
  EXPECT_EQ(poll(id)["status"], "done");

  auto res = client_->Get("/api/jobs/" + id + "/result");
  ASSERT_EQ(res->status, 200);
  const auto payload = Json::parse(res->body);
  const auto direct = execute_request(*predictor_, normalise_request(body, {}), {});
  EXPECT_EQ(payload, direct);

  auto again = client_->Get("/api/jobs/" + id + "/result");
  EXPECT_EQ(again->body, res->body);

  auto csv_res = client_->Get("/api/jobs/" + id + "/result", {{"Accept", "text/csv"}});
  ASSERT_EQ(csv_res->status, 200);
  EXPECT_NE(csv_res->get_header_value("Content-Type").find("text/csv"), std::string::npos);
  EXPECT_EQ(csv_res->body, prediction_csv(direct));
  EXPECT_EQ(client_->Get("/api/jobs/" + id + "/result", {{"Accept", "text/csv"}})->body, csv_res->body);
}

TEST_F(HttpTest, BatchLimitAndMalformedBodies) {
  auto ok = post({{"smiles_list", std::vector<std::string>(2000, "C")}, {"modes", {"lung"}}});
  EXPECT_EQ(ok->status, 202);
  auto over = post({{"smiles_list", std::vector<std::string>(2001, "C")}});
  EXPECT_EQ(over->status, 400);
  EXPECT_EQ(Json::parse(over->body)["code"], "BatchLimitExceeded");

  auto bad = client_->Post("/api/jobs", "{not json", "application/json");
  EXPECT_EQ(bad->status, 400);
  EXPECT_EQ(Json::parse(bad->body)["code"], "BadJson");
  EXPECT_EQ(post({{"kind", "predict"}})->status, 400);
  EXPECT_EQ(post({{"smiles", "C"}, {"modes", {"pancreas"}}})->status, 400);
  auto big = client_->Post("/api/jobs", std::string(settings_.max_body_bytes + 1, ' '), "application/json");
  EXPECT_EQ(big->status, 400);
  EXPECT_EQ(Json::parse(big->body)["code"], "PayloadTooLarge");
}

TEST_F(HttpTest, FailedJobAndExplainResult) {
  auto r = post({{"kind", "explain"}, {"smiles", "CCO"}, {"target", "PC-3"}});
  const auto id = Json::parse(r->body)["job_id"].get<std::string>();
  const auto rec = poll(id);
  EXPECT_EQ(rec["status"], "failed");
  EXPECT_EQ(rec["error"]["code"], "MissingModel");
  auto res = client_->Get("/api/jobs/" + id + "/result");
  EXPECT_EQ(res->status, 409);
  EXPECT_EQ(Json::parse(res->body)["detail"]["code"], "MissingModel");

  r = post({{"kind", "explain"}, {"smiles", "CCO"}, {"target", "MCF7"}});
  const auto ok = Json::parse(r->body)["job_id"].get<std::string>();
  EXPECT_EQ(poll(ok)["status"], "done");
  EXPECT_EQ(client_->Get("/api/jobs/" + ok + "/result")->status, 200);
  EXPECT_EQ(client_->Get("/api/jobs/" + ok + "/result", {{"Accept", "text/csv"}})->status, 406);
}

TEST_F(HttpTest, ValidateEndpoint) {
  auto g = client_->Get("/api/validate?smiles=OCC");
  ASSERT_EQ(g->status, 200);
  EXPECT_EQ(Json::parse(g->body)["canonical_smiles"], "CCO");
  auto p = client_->Post("/api/validate", Json{{"smiles", "C1CC"}}.dump(), "application/json");
  ASSERT_EQ(p->status, 200);
  const auto j = Json::parse(p->body);
  EXPECT_FALSE(j["ok"]);
  EXPECT_EQ(j["error"]["code"], "UnclosedRing");
  EXPECT_EQ(client_->Get("/api/validate")->status, 400);
}

} // namespace
} // namespace onco::service
