//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_SERVICE_REQUEST_HPP
#define ONCOGAT_SERVICE_REQUEST_HPP

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "oncogat/service/modes.hpp"
#include "oncogat/service/predictor.hpp"

namespace onco::service {

// RFC 4648 base64 with optional padding; whitespace is ignored.
inline std::string base64_decode(std::string_view in) {
  static const auto table = [] {
    std::array<int, 256> t{};
    t.fill(-1);
    const std::string_view alphabet = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      t[static_cast<unsigned char>(alphabet[i])] = static_cast<int>(i);
    return t;
  }();
  std::string out;
  out.reserve(in.size() / 4 * 3);
  unsigned acc = 0;
  int bits = 0;
  std::size_t pad = 0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    const auto c = static_cast<unsigned char>(in[i]);
    if (c == ' ' || c == '\n' || c == '\r' || c == '\t')
      continue;
    if (c == '=') {
      ++pad;
      continue;
    }
    if (pad || table[c] < 0)
      throw ParseError("BadBase64", "invalid base64 character", i);
    acc = (acc << 6) | static_cast<unsigned>(table[c]);
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<char>((acc >> bits) & 0xFF));
    }
  }
  if (bits >= 6 || pad > 2)
    throw ParseError("BadBase64", "truncated base64 input", in.size());
  return out;
}

inline constexpr std::string_view kPredictKind = "predict";
inline constexpr std::string_view kExplainKind = "explain";

struct RequestLimits {
  std::size_t max_batch = chem::kMaxBatch;
  bool keep_largest_fragment = false;
};

namespace detail {

inline std::vector<std::string> string_list(const Json &v, const char *field) {
  if (v.is_string())
    return {v.get<std::string>()};
  if (!v.is_array())
    throw Error("BadRequest", std::string("'") + field + "' must be a string or an array of strings");
  std::vector<std::string> out;
  for (const auto &x: v) {
    if (!x.is_string())
      throw Error("BadRequest", std::string("'") + field + "' must hold only strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

} // namespace detail

// Checks a job request and returns it in canonical form. Whole-request
// problems (shape, batch size, SDF syntax, modes) throw; per-molecule SMILES
// errors are left for the result.
inline Json normalise_request(const Json &body, const RequestLimits &lim) {
  if (!body.is_object())
    throw Error("BadRequest", "request body must be a JSON object");
  const auto kind = body.value("kind", std::string(kPredictKind));
  if (kind != kPredictKind && kind != kExplainKind)
    throw Error("BadRequest", "kind must be 'predict' or 'explain'");
  int sources = 0;
  for (const char *k: {"smiles", "smiles_list", "sdf_base64"})
    sources += body.contains(k) ? 1 : 0;
  if (sources != 1)
    throw Error("BadRequest", "give exactly one of 'smiles', 'smiles_list' or 'sdf_base64'");

  Json out = {{"kind", kind}};
  if (body.contains("smiles")) {
    if (!body["smiles"].is_string())
      throw Error("BadRequest", "'smiles' must be a string");
    out["smiles_list"] = Json::array({body["smiles"]});
  } else if (body.contains("smiles_list")) {
    const auto list = detail::string_list(body["smiles_list"], "smiles_list");
    check_batch(list.size(), lim.max_batch);
    if (list.empty())
      throw Error("BadRequest", "'smiles_list' is empty");
    out["smiles_list"] = list;
  } else {
    if (!body["sdf_base64"].is_string())
      throw Error("BadRequest", "'sdf_base64' must be a string");
    const auto sdf = base64_decode(body["sdf_base64"].get<std::string>());
    const auto n = parse_sdf_inputs(sdf, lim.max_batch).size();
    if (n == 0)
      throw Error("BadRequest", "the SD file holds no molecules");
    out["sdf_base64"] = body["sdf_base64"];
  }
  if (kind == kPredictKind) {
    const auto modes = body.contains("modes") ? detail::string_list(body["modes"], "modes") : std::vector<std::string>{};
    out["modes"] = parse_modes(modes).names();
  } else {
    const auto target = body.value("target", std::string(kActivityMode));
    out["target"] = target;
  }
  return out;
}

inline std::vector<ParsedInput> request_inputs(const Json &req, const RequestLimits &lim) {
  if (req.contains("smiles_list"))
    return parse_smiles_inputs(req["smiles_list"].get<std::vector<std::string>>(), lim.max_batch,
                               lim.keep_largest_fragment);
  return parse_sdf_inputs(base64_decode(req["sdf_base64"].get<std::string>()), lim.max_batch);
}

// The payload of a normalised request; shared by the job workers and the CLI.
inline Json execute_request(const Predictor &p, const Json &req, const RequestLimits &lim) {
  const auto inputs = request_inputs(req, lim);
  if (req["kind"] == kExplainKind)
    return p.explain(inputs, req["target"].get<std::string>());
  return p.predict(inputs, parse_modes(req["modes"].get<std::vector<std::string>>()));
}

// Lightweight single-SMILES check for interactive editors.
inline Json validate_smiles(const std::string &smiles, bool keep_largest_fragment = false) {
  try {
    const auto mol = chem::parse_smiles(smiles, {.keep_largest_fragment = keep_largest_fragment});
    return {{"ok", true},
            {"canonical_smiles", chem::canonical_smiles(mol)},
            {"heavy_atoms", mol.heavy_atom_count()},
            {"error", nullptr}};
  } catch (const Error &e) {
    return {{"ok", false}, {"canonical_smiles", nullptr}, {"heavy_atoms", nullptr}, {"error", error_json(e)}};
  }
}

} // namespace onco::service

#endif // ONCOGAT_SERVICE_REQUEST_HPP
