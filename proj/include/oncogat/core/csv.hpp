//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_CORE_CSV_HPP
#define ONCOGAT_CORE_CSV_HPP

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "oncogat/core/error.hpp"

namespace onco::csv {

using Row = std::vector<std::string>;

// RFC 4180 reader. Lines starting with '#' outside quotes are comments.
inline std::vector<Row> parse(std::string_view text, char sep = ',') {
  std::vector<Row> rows;
  Row row;
  std::string field;
  bool quoted = false, at_line_start = true, field_started = false;
  std::size_t line = 1;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    if (!(row.size() == 1 && row[0].empty()))
      rows.push_back(std::move(row));
    row.clear();
    at_line_start = true;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n')
          ++line;
        field += c;
      }
      continue;
    }
    if (at_line_start && c == '#') {
      while (i < text.size() && text[i] != '\n')
        ++i;
      ++line;
      continue;
    }
    at_line_start = false;
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == sep) {
      end_field();
    } else if (c == '\r') {
      continue;
    } else if (c == '\n') {
      end_row();
      ++line;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted)
    throw ParseError("UnterminatedQuote", "csv: unterminated quoted field",
                     line);
  if (!field.empty() || !row.empty())
    end_row();
  return rows;
}

inline std::string escape(std::string_view value) {
  if (value.find_first_of(",\"\n\r") == std::string_view::npos)
    return std::string(value);
  std::string out = "\"";
  for (char c: value) {
    if (c == '"')
      out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string join(const Row &row) {
  std::string out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i)
      out += ',';
    out += escape(row[i]);
  }
  return out;
}

// Shortest decimal text that round-trips a double.
inline std::string number(double v) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v)
      break;
  }
  return buf;
}

// Column lookup by header name; throws MissingColumn.
inline std::size_t column(const Row &header, std::string_view name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name)
      return i;
  throw Error("MissingColumn", "csv: missing column '" + std::string(name) +
                                   "'");
}

} // namespace onco::csv

#endif // ONCOGAT_CORE_CSV_HPP
