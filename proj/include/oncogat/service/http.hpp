//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_SERVICE_HTTP_HPP
#define ONCOGAT_SERVICE_HTTP_HPP

#include <memory>
#include <string>
#include <thread>

#include "oncogat/service/config.hpp"
#include "oncogat/service/jobs.hpp"
#include "oncogat/service/request.hpp"

// After Eigen: resolv.h defines `_res`, which Eigen uses as a parameter name.
#include <httplib.h>

namespace onco::service {

// JSON job API over a shared predictor and a persistent job store.
//   POST /api/jobs              submit {kind, smiles | smiles_list | sdf_base64, modes, target}
//   GET  /api/jobs/{id}         job record
//   GET  /api/jobs/{id}/result  payload; CSV when Accept names text/csv
//   GET  /api/health
//   GET|POST /api/validate      single-SMILES check
class ApiServer {
public:
  ApiServer(const ServiceSettings &s, std::shared_ptr<const Predictor> predictor)
      : settings_(s), predictor_(std::move(predictor)),
        limits_{s.max_batch, s.keep_largest_fragment},
        store_(s.data_dir,
               [p = predictor_, lim = limits_](const std::string &, const Json &req) {
                 return execute_request(*p, req, lim);
               },
               {s.workers, static_cast<std::size_t>(s.queue_capacity)}) {
    routes();
  }

  ~ApiServer() { stop(); }

  JobStore &store() { return store_; }

  // Binds the configured address; port 0 picks a free port. Returns the port.
  int bind() {
    if (settings_.port == 0)
      port_ = server_.bind_to_any_port(settings_.host);
    else
      port_ = server_.bind_to_port(settings_.host, settings_.port) ? settings_.port : -1;
    if (port_ < 0)
      throw Error("IoError", "cannot bind " + settings_.host + ":" + std::to_string(settings_.port));
    return port_;
  }

  int port() const { return port_; }

  // Serves until stop(); blocking.
  void serve() { server_.listen_after_bind(); }

  void start() {
    if (port_ < 0)
      bind();
    thread_ = std::thread([this] { serve(); });
    server_.wait_until_ready();
  }

  void stop() {
    server_.stop();
    if (thread_.joinable())
      thread_.join();
  }

private:
  static void send(httplib::Response &res, int status, const Json &body) {
    res.status = status;
    res.set_content(body.dump(2) + "\n", "application/json");
  }

  static void send_error(httplib::Response &res, int status, const std::string &code, const std::string &msg,
                         const Json &detail = nullptr) {
    send(res, status, error_json(code, msg, detail));
  }

  static void send_error(httplib::Response &res, int status, const Error &e) {
    send(res, status, error_json(e));
  }

  void routes() {
    server_.set_exception_handler([](const httplib::Request &, httplib::Response &res, std::exception_ptr ep) {
      try {
        std::rethrow_exception(ep);
      } catch (const Error &e) {
        send_error(res, 500, e);
      } catch (const std::exception &e) {
        send_error(res, 500, "Internal", e.what());
      } catch (...) {
        send_error(res, 500, "Internal", "unknown failure");
      }
    });

    server_.Get("/api/health", [this](const httplib::Request &, httplib::Response &res) {
      Json lines = Json::array();
      for (const auto &[l, _]: predictor_->bundle().regressors())
        lines.push_back(l);
      send(res, 200,
           {{"status", "ok"},
            {"schema_version", kSchemaVersion},
            {"layout_version", features::kLayoutVersion},
            {"model_digest", predictor_->bundle().digest()},
            {"classifiers", predictor_->bundle().classifiers().size()},
            {"cell_lines", lines},
            {"max_batch", settings_.max_batch},
            {"queued", store_.queued()}});
    });

    server_.Post("/api/jobs", [this](const httplib::Request &req, httplib::Response &res) {
      if (req.body.size() > settings_.max_body_bytes) {
        send_error(res, 400, "PayloadTooLarge",
                   "request body exceeds " + std::to_string(settings_.max_body_bytes) + " bytes");
        return;
      }
      Json body;
      try {
        body = Json::parse(req.body);
      } catch (const Json::parse_error &e) {
        send_error(res, 400, "BadJson", "request body is not valid JSON", {{"offset", e.byte}});
        return;
      }
      Json normal;
      try {
        normal = normalise_request(body, limits_);
      } catch (const Error &e) {
        send_error(res, 400, e);
        return;
      }
      try {
        const auto r = store_.submit(normal["kind"].get<std::string>(), normal);
        send(res, 202, {{"job_id", r.job_id}, {"status", status_name(r.status)}});
      } catch (const Error &e) {
        if (e.code() == "QueueFull") {
          res.set_header("Retry-After", "1");
          send_error(res, 429, e.code(), e.what(), {{"retry_after_seconds", 1}});
        } else {
          send_error(res, 500, e);
        }
      }
    });

    server_.Get(R"(/api/jobs/([^/]+))", [this](const httplib::Request &req, httplib::Response &res) {
      const auto r = store_.get(req.matches[1]);
      if (!r) {
        send_error(res, 404, "UnknownJob", "no job with id '" + std::string(req.matches[1]) + "'");
        return;
      }
      send(res, 200, r->to_json());
    });

    server_.Get(R"(/api/jobs/([^/]+)/result)", [this](const httplib::Request &req, httplib::Response &res) {
      const std::string id = req.matches[1];
      const auto r = store_.get(id);
      if (!r) {
        send_error(res, 404, "UnknownJob", "no job with id '" + id + "'");
        return;
      }
      if (r->status == JobStatus::failed) {
        send_error(res, 409, "JobFailed", "the job failed", r->error);
        return;
      }
      if (r->status != JobStatus::done) {
        send_error(res, 409, "NotReady", std::string("the job is ") + status_name(r->status),
                   {{"status", status_name(r->status)}});
        return;
      }
      const auto bytes = store_.result(id);
      if (!bytes) {
        send_error(res, 409, "NotReady", "the result is not available");
        return;
      }
      if (wants_csv(req)) {
        if (r->kind != kPredictKind) {
          send_error(res, 406, "NotAcceptable", "only prediction results have a CSV form");
          return;
        }
        res.status = 200;
        res.set_header("Content-Disposition", "attachment; filename=\"" + id + ".csv\"");
        res.set_content(prediction_csv(Json::parse(*bytes)), "text/csv; charset=utf-8");
        return;
      }
      res.status = 200;
      res.set_content(*bytes, "application/json");
    });

    auto validate = [this](const std::string &smiles, httplib::Response &res) {
      send(res, 200, validate_smiles(smiles, settings_.keep_largest_fragment));
    };
    server_.Get("/api/validate", [validate](const httplib::Request &req, httplib::Response &res) {
      if (!req.has_param("smiles")) {
        send_error(res, 400, "BadRequest", "missing 'smiles' parameter");
        return;
      }
      validate(req.get_param_value("smiles"), res);
    });
    server_.Post("/api/validate", [this, validate](const httplib::Request &req, httplib::Response &res) {
      if (req.body.size() > settings_.max_body_bytes) {
        send_error(res, 400, "PayloadTooLarge", "request body too large");
        return;
      }
      Json body;
      try {
        body = Json::parse(req.body);
      } catch (const Json::parse_error &e) {
        send_error(res, 400, "BadJson", "request body is not valid JSON", {{"offset", e.byte}});
        return;
      }
      if (!body.is_object() || !body.contains("smiles") || !body["smiles"].is_string()) {
        send_error(res, 400, "BadRequest", "body must be {\"smiles\": string}");
        return;
      }
      validate(body["smiles"].get<std::string>(), res);
    });
  }

  static bool wants_csv(const httplib::Request &req) {
    return req.get_header_value("Accept").find("text/csv") != std::string::npos;
  }

  ServiceSettings settings_;
  std::shared_ptr<const Predictor> predictor_;
  RequestLimits limits_;
  JobStore store_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = -1;
};

} // namespace onco::service

#endif // ONCOGAT_SERVICE_HTTP_HPP
