//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_SERVICE_MODES_HPP
#define ONCOGAT_SERVICE_MODES_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "oncogat/core/error.hpp"

namespace onco::service {

// Tissue groups of the screening panel. Each one is a prediction mode that
// reports the pGI50 of every loaded cell-line model in the group.
inline constexpr std::array<std::string_view, 9> kTissues = {
    "breast", "cns", "colon", "kidney", "leukaemia", "lung", "melanoma", "ovarian", "prostate"};

inline constexpr std::string_view kActivityMode = "activity";
inline constexpr std::string_view kAllMode = "all";

// Cell-line names compared without case, spaces or punctuation.
inline std::string cell_line_key(std::string_view name) {
  std::string k;
  for (char c: name)
    if (std::isalnum(static_cast<unsigned char>(c)))
      k += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return k;
}

inline const std::map<std::string, std::string> &tissue_table() {
  static const std::map<std::string, std::string> table = [] {
    const std::vector<std::pair<const char *, std::vector<const char *>>> groups = {
        {"breast", {"MCF7", "T-47D", "BT-549", "HS 578T", "MDA-MB-231/ATCC", "MDA-MB-468"}},
        {"cns", {"SNB-19", "SNB-75", "SNB-78", "U251", "XF 498", "SF-268", "SF-295", "SF-539", "U-87-H-FINE"}},
        {"colon",
         {"COLO 205", "DLD-1", "HCC-2998", "HCT-116", "HCT-15", "HT29", "KM12", "KM20L2", "SW-620"}},
        {"leukaemia", {"CCRF-CEM", "HL-60(TB)", "K-562", "MOLT-4", "SR", "RPMI-8226"}},
        {"lung",
         {"NCI-H23", "NCI-H226", "A549/ATCC", "EKVX", "HOP-18", "HOP-62", "HOP-92", "LXFL 529", "NCI-H322M",
          "NCI-H460", "NCI-H522", "DMS 114", "DMS 273"}},
        {"ovarian", {"IGROV1", "NCI/ADR-RES", "OVCAR-3", "OVCAR-4", "OVCAR-5", "OVCAR-8", "SK-OV-3"}},
        {"prostate", {"DU-145", "PC-3"}},
        {"kidney",
         {"786-0", "A498", "ACHN", "CAKI-1", "RXF 393", "RXF-631", "SN12C", "SN12K1", "TK-10", "UO-31"}},
        {"melanoma",
         {"LOX IMVI", "M14", "M19-MEL", "MALME-3M", "MDA-N", "SK-MEL-2", "SK-MEL-5", "SK-MEL-28", "UACC-62",
          "UACC-257", "MDA-MB-435"}},
    };
    std::map<std::string, std::string> t;
    for (const auto &[tissue, lines]: groups)
      for (const char *l: lines)
        t.emplace(cell_line_key(l), tissue);
    return t;
  }();
  return table;
}

// Tissue of a cell line, or "" when the name is not in the panel table.
inline std::string tissue_of(std::string_view cell_line) {
  const auto &t = tissue_table();
  auto it = t.find(cell_line_key(cell_line));
  return it == t.end() ? std::string() : it->second;
}

inline bool is_tissue(std::string_view m) {
  return std::find(kTissues.begin(), kTissues.end(), m) != kTissues.end();
}

struct ModeSet {
  bool activity = false;
  bool all = false; // also selects cell lines outside the panel table
  std::vector<std::string> tissues;

  // Canonical mode names, as echoed in results.
  std::vector<std::string> names() const {
    if (all)
      return {std::string(kAllMode)};
    std::vector<std::string> out;
    if (activity)
      out.emplace_back(kActivityMode);
    out.insert(out.end(), tissues.begin(), tissues.end());
    return out;
  }

  bool selects(std::string_view cell_line) const {
    if (all)
      return true;
    const auto t = tissue_of(cell_line);
    return std::find(tissues.begin(), tissues.end(), t) != tissues.end();
  }
};

// Validated, de-duplicated modes in canonical order. An empty request
// means activity only.
inline ModeSet parse_modes(const std::vector<std::string> &requested) {
  ModeSet m;
  m.activity = requested.empty();
  std::vector<bool> tissue(kTissues.size(), false);
  for (const auto &r: requested) {
    if (r == kAllMode) {
      m.all = true;
    } else if (r == kActivityMode) {
      m.activity = true;
    } else if (is_tissue(r)) {
      tissue[static_cast<std::size_t>(std::find(kTissues.begin(), kTissues.end(), r) - kTissues.begin())] = true;
    } else {
      throw Error("UnknownMode", "unknown prediction mode '" + r + "'");
    }
  }
  if (m.all)
    m.activity = true;
  for (std::size_t i = 0; i < kTissues.size(); ++i)
    if (m.all || tissue[i])
      m.tissues.emplace_back(kTissues[i]);
  return m;
}

} // namespace onco::service

#endif // ONCOGAT_SERVICE_MODES_HPP
