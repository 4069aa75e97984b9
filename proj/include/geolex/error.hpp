#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace geolex {

enum class ErrorCode {
  invalid_argument,
  format,
  not_found,
  duplicate_user,
  duplicate_blog,
  overlapping_users,
  insufficient_data,
  undefined_correlation,
  no_data,
  corrupt_index,
  unsupported_version,
  io,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Lexicon and corpus parse failures; line is 1-based, 0 when unknown.
class FormatError : public Error {
 public:
  FormatError(const std::string& message, std::size_t line = 0)
      : Error(ErrorCode::format,
              line ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace geolex
