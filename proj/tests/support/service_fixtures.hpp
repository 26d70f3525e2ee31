//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_TESTS_SUPPORT_SERVICE_FIXTURES_HPP
#define ONCOGAT_TESTS_SUPPORT_SERVICE_FIXTURES_HPP

#include <atomic>
#include <filesystem>
#include <string>

#include "oncogat/model.hpp"
#include "support/model_fixtures.hpp"

namespace onco::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
  explicit TempDir(const std::string &tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("oncogat-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  const std::filesystem::path &path() const { return path_; }

private:
  std::filesystem::path path_;
};

inline model::Checkpoint random_checkpoint(const features::FeatureScaler &scaler, model::Task task,
                                           std::uint64_t seed, const std::string &target) {
  model::Checkpoint c;
  c.model = model::Model(tiny_config(scaler.n_output(), task, seed));
  Rng rng(seed + 100);
  jitter_parameters(c.model, rng, 0.2);
  c.scaler = scaler;
  c.meta.target = target;
  if (task == model::Task::classify) {
    model::CalibratedThreshold t;
    t.threshold = 0.4 + 0.05 * static_cast<double>(seed % 3);
    c.threshold = t;
  }
  return c;
}

// Two activity classifiers and three cell-line regressors: one breast,
// one lung and one outside the panel table.
inline void write_model_dir(const std::filesystem::path &dir) {
  std::filesystem::create_directories(dir);
  const auto scaler = corpus_scaler(corpus_graphs());
  model::save_checkpoint(random_checkpoint(scaler, model::Task::classify, 11, "activity"),
                         (dir / "activity-0.ckpt").string());
  model::save_checkpoint(random_checkpoint(scaler, model::Task::classify, 12, "activity"),
                         (dir / "activity-1.ckpt").string());
  model::save_checkpoint(random_checkpoint(scaler, model::Task::regress, 21, "MCF7"), (dir / "mcf7.ckpt").string());
  model::save_checkpoint(random_checkpoint(scaler, model::Task::regress, 22, "A549/ATCC"),
                         (dir / "a549.ckpt").string());
  model::save_checkpoint(random_checkpoint(scaler, model::Task::regress, 23, "CUSTOM-1"),
                         (dir / "custom.ckpt").string());
}

} // namespace onco::testing

#endif // ONCOGAT_TESTS_SUPPORT_SERVICE_FIXTURES_HPP
