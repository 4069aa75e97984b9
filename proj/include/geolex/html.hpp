#pragma once

#include <map>
#include <string>
#include <string_view>

namespace geolex {

struct HtmlOptions {
  /// Named entities beyond amp/lt/gt/quot/apos, e.g. {"nbsp", " "}.
  std::map<std::string, std::string, std::less<>> extra_entities;
};

/// Removes tags, comments, and script/style contents; decodes the core
/// named entities plus numeric ones; collapses whitespace. Block-level tags
/// become word breaks, inline tags (b, i, span, ...) do not. Malformed markup
/// is handled best-effort: an unclosed tag or comment drops the remainder.
/// The result is a fixed point: strip_html(strip_html(x)) == strip_html(x).
std::string strip_html(std::string_view html, const HtmlOptions& options = {});

}  // namespace geolex
