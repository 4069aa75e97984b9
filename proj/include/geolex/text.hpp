#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace geolex {

/// Lowercases every code point (Unicode simple mapping) and maps the
/// typographic apostrophe U+2019 to '\''. Invalid UTF-8 bytes pass through.
std::string normalize_word(std::string_view word);

/// ASCII-lowercased copy.
std::string ascii_lower(std::string_view s);

std::string_view trim(std::string_view s);

/// Trims and collapses internal runs of ASCII whitespace to one space.
std::string collapse_spaces(std::string_view s);

/// "  new york " -> "New York". Words split on spaces and hyphens.
std::string title_case(std::string_view s);

/// Number of UTF-8 code points (invalid bytes count as one each).
std::size_t utf8_length(std::string_view s);

/// Prefix holding at most `max_chars` code points.
std::string_view truncate_chars(std::string_view s, std::size_t max_chars);

}  // namespace geolex
