//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_MODEL_CHECKPOINT_HPP
#define ONCOGAT_MODEL_CHECKPOINT_HPP

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <zlib.h>

#include "oncogat/core/csv.hpp"
#include "oncogat/core/error.hpp"
#include "oncogat/core/hash.hpp"
#include "oncogat/features/scaler.hpp"
#include "oncogat/model/metrics.hpp"
#include "oncogat/model/network.hpp"

namespace onco::model {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

constexpr std::uint32_t kCheckpointVersion = 1;
constexpr char kCheckpointMagic[8] = {'O', 'N', 'C', 'O', 'G', 'A', 'T', '\0'};

struct TrainingMeta {
  std::string target = "activity";
  int epochs_run = 0;
  int best_epoch = 0;
  std::vector<double> train_loss;
  std::vector<double> val_loss;
  std::vector<double> val_metric;

  bool operator==(const TrainingMeta &) const = default;
};

// Everything needed to run inference: no external state.
struct Checkpoint {
  Model model;
  features::FeatureScaler scaler;
  bool explicit_h = false;
  int layout_version = features::kLayoutVersion;
  std::optional<CalibratedThreshold> threshold;
  TrainingMeta meta;
};

// Parameters are stored as 32-bit floats; rounding in memory first makes
// a saved and reloaded checkpoint compute bit-identical outputs.
inline void round_to_f32(Model &m) {
  for (auto &p: m.parameters())
    p.value = p.value.cast<float>().cast<double>();
}

namespace detail {

class Writer {
public:
  void bytes(const void *p, std::size_t n) { out_.append(static_cast<const char *>(p), n); }
  void u8(std::uint8_t v) { bytes(&v, 1); }
  void u16(std::uint16_t v) { bytes(&v, 2); }
  void u32(std::uint32_t v) { bytes(&v, 4); }
  void str16(const std::string &s) {
    u16(static_cast<std::uint16_t>(s.size()));
    bytes(s.data(), s.size());
  }
  std::string &buffer() { return out_; }

private:
  std::string out_;
};

class Reader {
public:
  explicit Reader(std::string_view data) : data_(data) { }

  void bytes(void *p, std::size_t n) {
    if (n > data_.size() - pos_)
      throw ModelError("CorruptFile", "checkpoint truncated");
    std::memcpy(p, data_.data() + pos_, n);
    pos_ += n;
  }
  std::uint8_t u8() { std::uint8_t v; bytes(&v, 1); return v; }
  std::uint16_t u16() { std::uint16_t v; bytes(&v, 2); return v; }
  std::uint32_t u32() { std::uint32_t v; bytes(&v, 4); return v; }
  std::string str(std::size_t n) {
    std::string s(n, '\0');
    bytes(s.data(), n);
    return s;
  }
  std::size_t remaining() const { return data_.size() - pos_; }

private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

enum class DType : std::uint8_t { f32 = 0, f64 = 1 };

struct Section {
  DType dtype = DType::f64;
  Matrix value;
};

inline void write_section(Writer &w, const std::string &name, const Matrix &m, DType dt) {
  w.str16(name);
  w.u8(static_cast<std::uint8_t>(dt));
  w.u32(static_cast<std::uint32_t>(m.rows()));
  w.u32(static_cast<std::uint32_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    if (dt == DType::f32) {
      const float f = static_cast<float>(m.data()[i]);
      w.bytes(&f, 4);
    } else {
      w.bytes(&m.data()[i], 8);
    }
  }
}

inline Matrix row_matrix(const std::vector<double> &v) {
  Matrix m(1, static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    m(0, static_cast<Eigen::Index>(i)) = v[i];
  return m;
}

inline std::vector<double> row_vector(const Matrix &m) { return {m.data(), m.data() + m.size()}; }

inline std::uint32_t crc32_of(std::string_view bytes) {
  return static_cast<std::uint32_t>(
      ::crc32(::crc32(0L, Z_NULL, 0), reinterpret_cast<const Bytef *>(bytes.data()), static_cast<uInt>(bytes.size())));
}

using TextConfig = std::map<std::string, std::string>;

inline const std::string &field(const TextConfig &c, const std::string &key) {
  auto it = c.find(key);
  if (it == c.end())
    throw ModelError("CorruptFile", "checkpoint lacks config key " + key);
  return it->second;
}

inline double num(const TextConfig &c, const std::string &key) {
  const auto &s = field(c, key);
  char *end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw ModelError("CorruptFile", "bad number for config key " + key);
  return v;
}

inline int integer(const TextConfig &c, const std::string &key) { return static_cast<int>(num(c, key)); }

} // namespace detail

inline std::string serialize_checkpoint(const Checkpoint &c) {
  const auto &cfg = c.model.config();
  std::ostringstream text;
  text << "task=" << task_name(cfg.task) << '\n'
       << "size_class=" << size_class_name(cfg.size_class) << '\n'
       << "hidden_dim=" << cfg.hidden_dim << '\n'
       << "n_blocks=" << cfg.n_blocks << '\n'
       << "n_heads=" << cfg.n_heads << '\n'
       << "ffn_mult=" << cfg.ffn_mult << '\n'
       << "dropout_p=" << csv::number(cfg.dropout_p) << '\n'
       << "pool_seeds=" << cfg.pool_seeds << '\n'
       << "seed=" << cfg.seed << '\n'
       << "node_dim=" << cfg.node_dim << '\n'
       << "edge_dim=" << cfg.edge_dim << '\n'
       << "global_dim=" << cfg.global_dim << '\n'
       << "explicit_h=" << (c.explicit_h ? 1 : 0) << '\n'
       << "scaler.n_input=" << c.scaler.n_input << '\n'
       << "target=" << c.meta.target << '\n'
       << "epochs_run=" << c.meta.epochs_run << '\n'
       << "best_epoch=" << c.meta.best_epoch << '\n';
  if (c.threshold)
    text << "threshold=" << csv::number(c.threshold->threshold) << '\n'
         << "threshold.objective=" << csv::number(c.threshold->objective) << '\n'
         << "threshold.objective_name=" << c.threshold->objective_name << '\n'
         << "threshold.degenerate=" << (c.threshold->degenerate ? 1 : 0) << '\n';

  detail::Writer w;
  w.bytes(kCheckpointMagic, 8);
  w.u32(kCheckpointVersion);
  w.u32(static_cast<std::uint32_t>(c.layout_version));
  const std::string t = text.str();
  w.u32(static_cast<std::uint32_t>(t.size()));
  w.bytes(t.data(), t.size());

  const auto &params = c.model.parameters();
  std::vector<double> kept(c.scaler.kept_columns.begin(), c.scaler.kept_columns.end());
  w.u32(static_cast<std::uint32_t>(params.size() + 6));
  for (const auto &p: params)
    detail::write_section(w, "param." + p.name, p.value, detail::DType::f32);
  detail::write_section(w, "scaler.kept", detail::row_matrix(kept), detail::DType::f64);
  detail::write_section(w, "scaler.mean", detail::row_matrix(c.scaler.mean), detail::DType::f64);
  detail::write_section(w, "scaler.std", detail::row_matrix(c.scaler.std), detail::DType::f64);
  detail::write_section(w, "meta.train_loss", detail::row_matrix(c.meta.train_loss), detail::DType::f64);
  detail::write_section(w, "meta.val_loss", detail::row_matrix(c.meta.val_loss), detail::DType::f64);
  detail::write_section(w, "meta.val_metric", detail::row_matrix(c.meta.val_metric), detail::DType::f64);
  w.u32(detail::crc32_of(w.buffer()));
  return std::move(w.buffer());
}

inline Checkpoint deserialize_checkpoint(std::string_view data) {
  if (data.size() < 16 || std::memcmp(data.data(), kCheckpointMagic, 8) != 0)
    throw ModelError("CorruptFile", "not a checkpoint (bad magic)");
  std::uint32_t version;
  std::memcpy(&version, data.data() + 8, 4);
  if (version != kCheckpointVersion)
    throw ModelError("VersionMismatch", "checkpoint format version " + std::to_string(version) +
                                           ", expected " + std::to_string(kCheckpointVersion));
  std::uint32_t stored_crc;
  std::memcpy(&stored_crc, data.data() + data.size() - 4, 4);
  if (detail::crc32_of(data.substr(0, data.size() - 4)) != stored_crc)
    throw ModelError("CorruptFile", "checkpoint checksum mismatch");

  detail::Reader r(data.substr(0, data.size() - 4));
  r.str(12);
  const int layout = static_cast<int>(r.u32());
  if (layout != features::kLayoutVersion)
    throw ModelError("LayoutVersionMismatch", "checkpoint feature layout " + std::to_string(layout) +
                                                  ", this build uses " + std::to_string(features::kLayoutVersion));
  detail::TextConfig text;
  {
    std::istringstream in(r.str(r.u32()));
    std::string line;
    while (std::getline(in, line)) {
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ModelError("CorruptFile", "malformed config line in checkpoint");
      text[line.substr(0, eq)] = line.substr(eq + 1);
    }
  }
  std::map<std::string, detail::Section> sections;
  const std::uint32_t n_sections = r.u32();
  for (std::uint32_t s = 0; s < n_sections; ++s) {
    const std::string name = r.str(r.u16());
    detail::Section sec;
    sec.dtype = static_cast<detail::DType>(r.u8());
    const std::uint32_t rows = r.u32(), cols = r.u32();
    const std::size_t width = sec.dtype == detail::DType::f32 ? 4 : 8;
    if (sec.dtype != detail::DType::f32 && sec.dtype != detail::DType::f64)
      throw ModelError("CorruptFile", "unknown section type in " + name);
    if (static_cast<std::uint64_t>(rows) * cols * width > r.remaining())
      throw ModelError("CorruptFile", "section " + name + " overruns the file");
    sec.value.resize(rows, cols);
    for (Eigen::Index i = 0; i < sec.value.size(); ++i) {
      if (sec.dtype == detail::DType::f32) {
        float f;
        r.bytes(&f, 4);
        sec.value.data()[i] = f;
      } else {
        r.bytes(&sec.value.data()[i], 8);
      }
    }
    sections[name] = std::move(sec);
  }
  if (r.remaining() != 0)
    throw ModelError("CorruptFile", "trailing bytes in checkpoint");
  auto section = [&](const std::string &name) -> const Matrix & {
    auto it = sections.find(name);
    if (it == sections.end())
      throw ModelError("CorruptFile", "checkpoint lacks section " + name);
    return it->second.value;
  };

  Checkpoint c;
  try {
    ModelConfig cfg;
    cfg.task = parse_task(detail::field(text, "task"));
    cfg.size_class = parse_size_class(detail::field(text, "size_class"));
    cfg.hidden_dim = detail::integer(text, "hidden_dim");
    cfg.n_blocks = detail::integer(text, "n_blocks");
    cfg.n_heads = detail::integer(text, "n_heads");
    cfg.ffn_mult = detail::integer(text, "ffn_mult");
    cfg.dropout_p = detail::num(text, "dropout_p");
    cfg.pool_seeds = detail::integer(text, "pool_seeds");
    cfg.seed = std::stoull(detail::field(text, "seed"));
    cfg.node_dim = detail::integer(text, "node_dim");
    cfg.edge_dim = detail::integer(text, "edge_dim");
    cfg.global_dim = detail::integer(text, "global_dim");
    c.model = Model(cfg);
  } catch (const ModelError &) {
    throw;
  } catch (const std::exception &e) {
    throw ModelError("CorruptFile", std::string("invalid model config in checkpoint: ") + e.what());
  }
  for (const auto &p: c.model.parameters())
    c.model.set_parameter(p.name, section("param." + p.name));
  c.explicit_h = detail::integer(text, "explicit_h") != 0;
  c.layout_version = layout;
  c.scaler.n_input = detail::integer(text, "scaler.n_input");
  for (double v: detail::row_vector(section("scaler.kept")))
    c.scaler.kept_columns.push_back(static_cast<int>(v));
  c.scaler.mean = detail::row_vector(section("scaler.mean"));
  c.scaler.std = detail::row_vector(section("scaler.std"));
  if (c.scaler.n_output() != c.model.config().global_dim)
    throw ModelError("CorruptFile", "scaler width disagrees with the model");
  if (text.count("threshold")) {
    CalibratedThreshold th;
    th.threshold = detail::num(text, "threshold");
    th.objective = detail::num(text, "threshold.objective");
    th.objective_name = detail::field(text, "threshold.objective_name");
    th.degenerate = detail::integer(text, "threshold.degenerate") != 0;
    c.threshold = th;
  }
  c.meta.target = detail::field(text, "target");
  c.meta.epochs_run = detail::integer(text, "epochs_run");
  c.meta.best_epoch = detail::integer(text, "best_epoch");
  c.meta.train_loss = detail::row_vector(section("meta.train_loss"));
  c.meta.val_loss = detail::row_vector(section("meta.val_loss"));
  c.meta.val_metric = detail::row_vector(section("meta.val_metric"));
  return c;
}

inline void save_checkpoint(const Checkpoint &c, const std::string &path) {
  const std::string bytes = serialize_checkpoint(c);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error("IoError", "cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out)
    throw Error("IoError", "short write to " + path);
}

inline Checkpoint load_checkpoint(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("IoError", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize_checkpoint(ss.str());
}

// Content digest of the serialised checkpoint, 16 hex digits.
inline std::string checkpoint_digest(const Checkpoint &c) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(stable_hash(std::string_view(serialize_checkpoint(c)))));
  return buf;
}

} // namespace onco::model

#endif // ONCOGAT_MODEL_CHECKPOINT_HPP
