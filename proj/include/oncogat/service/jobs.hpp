//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_SERVICE_JOBS_HPP
#define ONCOGAT_SERVICE_JOBS_HPP

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <ctime>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "oncogat/core/error.hpp"
#include "oncogat/core/hash.hpp"
#include "oncogat/service/predictor.hpp"

namespace onco::service {

enum class JobStatus { queued, running, done, failed };

inline const char *status_name(JobStatus s) {
  switch (s) {
  case JobStatus::queued: return "queued";
  case JobStatus::running: return "running";
  case JobStatus::done: return "done";
  case JobStatus::failed: return "failed";
  }
  return "failed";
}

inline JobStatus parse_status(const std::string &s) {
  for (auto st: {JobStatus::queued, JobStatus::running, JobStatus::done, JobStatus::failed})
    if (s == status_name(st))
      return st;
  throw Error("SchemaMismatch", "unknown job status '" + s + "'");
}

// Only queued -> running -> {done, failed}, plus queued -> failed when a
// job cannot be started.
inline bool valid_transition(JobStatus from, JobStatus to) {
  if (from == JobStatus::queued)
    return to == JobStatus::running || to == JobStatus::failed;
  if (from == JobStatus::running)
    return to == JobStatus::done || to == JobStatus::failed;
  return false;
}

inline std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const auto t = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
  return out;
}

struct JobRecord {
  std::string job_id;
  JobStatus status = JobStatus::queued;
  std::string kind;
  std::uint64_t sequence = 0; // submission order within the store
  std::string submitted_at;
  std::string started_at;
  std::string finished_at;
  std::string input_digest;
  std::string result_path;
  Json error = nullptr;

  Json to_json() const {
    return {{"job_id", job_id},
            {"status", status_name(status)},
            {"kind", kind},
            {"sequence", sequence},
            {"submitted_at", submitted_at},
            {"started_at", started_at.empty() ? Json(nullptr) : Json(started_at)},
            {"finished_at", finished_at.empty() ? Json(nullptr) : Json(finished_at)},
            {"input_digest", input_digest},
            {"result_path", result_path.empty() ? Json(nullptr) : Json(result_path)},
            {"error", error}};
  }

  static JobRecord from_json(const Json &j) {
    auto str = [&](const char *k) { return j.contains(k) && j[k].is_string() ? j[k].get<std::string>() : std::string(); };
    JobRecord r;
    r.job_id = j.at("job_id").get<std::string>();
    r.status = parse_status(j.at("status").get<std::string>());
    r.kind = j.at("kind").get<std::string>();
    r.sequence = j.value("sequence", std::uint64_t{0});
    r.submitted_at = str("submitted_at");
    r.started_at = str("started_at");
    r.finished_at = str("finished_at");
    r.input_digest = str("input_digest");
    r.result_path = str("result_path");
    r.error = j.contains("error") ? j["error"] : Json(nullptr);
    return r;
  }
};

namespace detail {

inline std::string read_file(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw Error("IoError", "cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Write to a sibling temporary and rename, so readers see the old or the
// new document and never a partial one.
inline void write_atomic(const std::filesystem::path &p, const std::string &bytes) {
  auto tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw Error("DiskFull", "cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out)
      throw Error("DiskFull", "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, p, ec);
  if (ec)
    throw Error("DiskFull", "cannot move " + tmp.string() + " into place: " + ec.message());
}

inline std::string random_id() {
  static std::mutex m;
  static std::random_device rd;
  static std::mt19937_64 gen((static_cast<std::uint64_t>(rd()) << 32) ^ rd() ^
                             static_cast<std::uint64_t>(std::chrono::steady_clock::now().time_since_epoch().count()));
  std::lock_guard lock(m);
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(gen()),
                static_cast<unsigned long long>(gen()));
  return buf;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

} // namespace detail

// Runs one job: request document in, result payload out.
using JobHandler = std::function<Json(const std::string &kind, const Json &request)>;

struct JobStoreOptions {
  int workers = 1;
  std::size_t queue_capacity = 64;
};

// Persistent FIFO job store. Layout under the data directory:
//   jobs/<id>.json      record, rewritten on every transition
//   requests/<id>.json  request as submitted
//   results/<id>.json   result payload, written once
// The record of a job is only ever written by the thread holding the lock.
class JobStore {
public:
  JobStore(std::filesystem::path dir, JobHandler handler, JobStoreOptions opt = {})
      : dir_(std::move(dir)), handler_(std::move(handler)), opt_(opt) {
    require(opt_.workers >= 1, "InvalidArgument", "job store needs at least one worker");
    for (const char *sub: {"jobs", "requests", "results"}) {
      std::error_code ec;
      std::filesystem::create_directories(dir_ / sub, ec);
      if (ec)
        throw Error("IoError", "cannot create " + (dir_ / sub).string() + ": " + ec.message());
    }
    recover();
    for (int i = 0; i < opt_.workers; ++i)
      workers_.emplace_back([this] { work(); });
  }

  JobStore(const JobStore &) = delete;
  JobStore &operator=(const JobStore &) = delete;

  ~JobStore() {
    {
      std::lock_guard lock(mu_);
      stop_ = true;
    }
    cv_.notify_all();
    for (auto &w: workers_)
      w.join();
  }

  const std::filesystem::path &dir() const { return dir_; }

  // Throws QueueFull when the waiting queue is at capacity.
  JobRecord submit(const std::string &kind, const Json &request) {
    const auto body = request.dump();
    std::unique_lock lock(mu_);
    if (queue_.size() >= opt_.queue_capacity)
      throw Error("QueueFull", "job queue holds " + std::to_string(queue_.size()) + " waiting jobs");
    JobRecord r;
    do {
      r.job_id = detail::random_id();
    } while (jobs_.count(r.job_id));
    r.kind = kind;
    r.sequence = ++sequence_;
    r.submitted_at = utc_now();
    r.input_digest = detail::hex64(stable_hash(body));
    detail::write_atomic(request_path(r.job_id), body);
    persist(r);
    jobs_.emplace(r.job_id, r);
    queue_.push_back(r.job_id);
    lock.unlock();
    cv_.notify_one();
    return r;
  }

  std::optional<JobRecord> get(const std::string &id) const {
    std::lock_guard lock(mu_);
    auto it = jobs_.find(id);
    if (it == jobs_.end())
      return std::nullopt;
    return it->second;
  }

  // Stored result bytes of a done job.
  std::optional<std::string> result(const std::string &id) const {
    std::string path;
    {
      std::lock_guard lock(mu_);
      auto it = jobs_.find(id);
      if (it == jobs_.end() || it->second.status != JobStatus::done)
        return std::nullopt;
      path = it->second.result_path;
    }
    return detail::read_file(dir_ / path);
  }

  std::size_t queued() const {
    std::lock_guard lock(mu_);
    return queue_.size();
  }

  // Blocks until no job is waiting or running.
  void wait_idle() {
    std::unique_lock lock(mu_);
    idle_cv_.wait(lock, [&] { return queue_.empty() && active_ == 0; });
  }

private:
  std::filesystem::path record_path(const std::string &id) const { return dir_ / "jobs" / (id + ".json"); }
  std::filesystem::path request_path(const std::string &id) const { return dir_ / "requests" / (id + ".json"); }

  void persist(const JobRecord &r) const { detail::write_atomic(record_path(r.job_id), r.to_json().dump(2) + "\n"); }

  // Caller holds the lock. Disk failures leave the in-memory record updated.
  void transition(JobRecord &r, JobStatus to) {
    if (!valid_transition(r.status, to))
      throw Error("InvalidTransition",
                  std::string("job cannot move from ") + status_name(r.status) + " to " + status_name(to));
    r.status = to;
    if (to == JobStatus::running)
      r.started_at = utc_now();
    else
      r.finished_at = utc_now();
    try {
      persist(r);
    } catch (const Error &e) {
      if (to != JobStatus::failed) {
        r.status = JobStatus::failed;
        r.error = error_json(e);
        try {
          persist(r);
        } catch (const Error &) {
        }
      }
    }
  }

  void recover() {
    std::vector<JobRecord> records;
    for (const auto &e: std::filesystem::directory_iterator(dir_ / "jobs")) {
      if (!e.is_regular_file() || e.path().extension() != ".json")
        continue;
      try {
        records.push_back(JobRecord::from_json(Json::parse(detail::read_file(e.path()))));
      } catch (const std::exception &) {
        // An unreadable record names no recoverable job.
      }
    }
    std::sort(records.begin(), records.end(),
              [](const JobRecord &a, const JobRecord &b) { return a.sequence < b.sequence; });
    for (auto &r: records) {
      sequence_ = std::max(sequence_, r.sequence);
      if (r.status == JobStatus::running) {
        r.error = error_json("Interrupted", "the service stopped while this job was running");
        transition(r, JobStatus::failed);
      }
      if (r.status == JobStatus::queued)
        queue_.push_back(r.job_id);
      jobs_.emplace(r.job_id, std::move(r));
    }
  }

  void work() {
    for (;;) {
      std::string id;
      {
        std::unique_lock lock(mu_);
        cv_.wait(lock, [&] { return stop_ || !queue_.empty(); });
        if (stop_)
          return;
        id = queue_.front();
        queue_.pop_front();
        ++active_;
        transition(jobs_.at(id), JobStatus::running);
      }
      run(id);
      {
        std::lock_guard lock(mu_);
        --active_;
      }
      idle_cv_.notify_all();
    }
  }

  void run(const std::string &id) {
    std::string kind;
    {
      std::lock_guard lock(mu_);
      const auto &r = jobs_.at(id);
      if (r.status != JobStatus::running)
        return;
      kind = r.kind;
    }
    Json error = nullptr;
    std::string result_rel;
    try {
      const auto request = Json::parse(detail::read_file(request_path(id)));
      const auto payload = handler_(kind, request);
      result_rel = "results/" + id + ".json";
      detail::write_atomic(dir_ / result_rel, payload.dump(2) + "\n");
    } catch (const Error &e) {
      error = error_json(e);
    } catch (const std::exception &e) {
      error = error_json("Internal", e.what());
    }
    std::lock_guard lock(mu_);
    auto &r = jobs_.at(id);
    if (error.is_null()) {
      r.result_path = result_rel;
      transition(r, JobStatus::done);
    } else {
      r.error = error;
      transition(r, JobStatus::failed);
    }
  }

  std::filesystem::path dir_;
  JobHandler handler_;
  JobStoreOptions opt_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::condition_variable idle_cv_;
  std::map<std::string, JobRecord> jobs_;
  std::deque<std::string> queue_;
  std::vector<std::thread> workers_;
  std::uint64_t sequence_ = 0;
  int active_ = 0;
  bool stop_ = false;
};

} // namespace onco::service

#endif // ONCOGAT_SERVICE_JOBS_HPP
