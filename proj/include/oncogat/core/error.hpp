//
// Project oncogat - Copyright 2026 The oncogat Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef ONCOGAT_CORE_ERROR_HPP
#define ONCOGAT_CORE_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace onco {

// Every recoverable failure in the library derives from Error and carries a
// stable machine-readable code (e.g. "UnclosedRing", "SchemaMismatch").
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string &message)
      : std::runtime_error(message), code_(std::move(code)) { }

  const std::string &code() const noexcept { return code_; }

private:
  std::string code_;
};

// Input could not be parsed. Offset is the byte position in the source text
// (or the 1-based line for line-oriented formats).
class ParseError : public Error {
public:
  ParseError(std::string code, const std::string &message, std::size_t offset)
      : Error(std::move(code),
              message + " (at offset " + std::to_string(offset) + ")"),
        offset_(offset) { }

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

// Model/checkpoint incompatibility or corruption.
class ModelError : public Error {
public:
  using Error::Error;
};

inline void require(bool cond, std::string_view code, const std::string &msg) {
  if (!cond)
    throw Error(std::string(code), msg);
}

} // namespace onco

#endif // ONCOGAT_CORE_ERROR_HPP
