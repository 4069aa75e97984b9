#include "geolex/error.hpp"

namespace geolex {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::format: return "format_error";
    case ErrorCode::not_found: return "not_found";
    case ErrorCode::duplicate_user: return "duplicate_user";
    case ErrorCode::duplicate_blog: return "duplicate_blog";
    case ErrorCode::overlapping_users: return "overlapping_users";
    case ErrorCode::insufficient_data: return "insufficient_data";
    case ErrorCode::undefined_correlation: return "undefined_correlation";
    case ErrorCode::no_data: return "no_data";
    case ErrorCode::corrupt_index: return "corrupt_index";
    case ErrorCode::unsupported_version: return "unsupported_version";
    case ErrorCode::io: return "io_error";
  }
  return "unknown";
}

}  // namespace geolex
