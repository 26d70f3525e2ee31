//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_SERVICE_CONFIG_HPP
#define ONCOGAT_SERVICE_CONFIG_HPP

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "oncogat/chem/sdf.hpp"
#include "oncogat/core/error.hpp"

namespace onco::service {

// Line-oriented `key = value` settings. '#' starts a comment; later lines
// override earlier ones.
class Config {
public:
  Config() = default;

  static Config parse(std::string_view text) {
    Config c;
    std::size_t line_no = 0;
    for (const auto raw: chem::detail::split_lines(text)) {
      ++line_no;
      auto line = std::string(raw.substr(0, raw.find('#')));
      const auto t = chem::detail::trim(line);
      if (t.empty())
        continue;
      const auto eq = t.find('=');
      if (eq == std::string_view::npos)
        throw Error("BadConfig", "config line " + std::to_string(line_no) + " has no '='");
      const auto key = chem::detail::trim(t.substr(0, eq));
      if (key.empty())
        throw Error("BadConfig", "config line " + std::to_string(line_no) + " has an empty key");
      c.values_[std::string(key)] = std::string(chem::detail::trim(t.substr(eq + 1)));
    }
    return c;
  }

  static Config load(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    if (!in)
      throw Error("IoError", "cannot read config " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }

  bool has(const std::string &key) const { return values_.count(key) != 0; }
  void set(const std::string &key, const std::string &value) { values_[key] = value; }
  const std::map<std::string, std::string> &values() const { return values_; }

  std::string get(const std::string &key, const std::string &fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  long long get_int(const std::string &key, long long fallback) const {
    auto it = values_.find(key);
    if (it == values_.end())
      return fallback;
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(it->second, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used == 0 || used != it->second.size())
      throw Error("BadConfig", "config key '" + key + "' expects an integer, got '" + it->second + "'");
    return v;
  }

  double get_double(const std::string &key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end())
      return fallback;
    char *end = nullptr;
    const double v = std::strtod(it->second.c_str(), &end);
    if (it->second.empty() || end != it->second.c_str() + it->second.size())
      throw Error("BadConfig", "config key '" + key + "' expects a number, got '" + it->second + "'");
    return v;
  }

  bool get_bool(const std::string &key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end())
      return fallback;
    const auto &v = it->second;
    if (v == "true" || v == "1" || v == "yes" || v == "on")
      return true;
    if (v == "false" || v == "0" || v == "no" || v == "off")
      return false;
    throw Error("BadConfig", "config key '" + key + "' expects a boolean, got '" + v + "'");
  }

private:
  std::map<std::string, std::string> values_;
};

inline constexpr const char *kDataDirEnv = "ONCOGAT_DATA_DIR";

// Settings of the prediction service and its job store.
struct ServiceSettings {
  std::filesystem::path data_dir = "oncogat-data";
  std::filesystem::path model_dir = "models";
  std::string host = "127.0.0.1";
  int port = 8080;
  int workers = 1;
  int queue_capacity = 64;
  std::size_t max_body_bytes = 8u << 20;
  std::size_t max_batch = chem::kMaxBatch;
  bool keep_largest_fragment = false;
  int explain_repeats = 20;
  int ig_steps = 128;
  std::uint64_t seed = 0;

  static ServiceSettings from(const Config &c) {
    ServiceSettings s;
    s.data_dir = c.get("data_dir", s.data_dir.string());
    if (const char *env = std::getenv(kDataDirEnv); env && *env)
      s.data_dir = env;
    s.model_dir = c.get("model_dir", s.model_dir.string());
    s.host = c.get("host", s.host);
    s.port = static_cast<int>(c.get_int("port", s.port));
    s.workers = static_cast<int>(c.get_int("workers", s.workers));
    s.queue_capacity = static_cast<int>(c.get_int("queue_capacity", s.queue_capacity));
    s.max_body_bytes = static_cast<std::size_t>(c.get_int("max_body_bytes", static_cast<long long>(s.max_body_bytes)));
    s.max_batch = static_cast<std::size_t>(c.get_int("max_batch", static_cast<long long>(s.max_batch)));
    s.keep_largest_fragment = c.get_bool("keep_largest_fragment", s.keep_largest_fragment);
    s.explain_repeats = static_cast<int>(c.get_int("explain_repeats", s.explain_repeats));
    s.ig_steps = static_cast<int>(c.get_int("ig_steps", s.ig_steps));
    s.seed = static_cast<std::uint64_t>(c.get_int("seed", static_cast<long long>(s.seed)));
    require(s.workers >= 1, "BadConfig", "workers must be at least 1");
    require(s.queue_capacity >= 1, "BadConfig", "queue_capacity must be at least 1");
    require(s.port >= 0 && s.port <= 65535, "BadConfig", "port out of range");
    require(s.max_batch >= 1 && s.max_batch <= chem::kMaxBatch, "BadConfig",
            "max_batch must lie in [1, " + std::to_string(chem::kMaxBatch) + "]");
    return s;
  }
};

} // namespace onco::service

#endif // ONCOGAT_SERVICE_CONFIG_HPP
