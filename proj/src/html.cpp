#include "geolex/html.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

#include <unicode/utf8.h>

namespace geolex {
namespace {

constexpr std::array<std::string_view, 17> kInlineTags = {
    "a",    "abbr", "b",     "big",    "code", "em",  "font", "i",  "s",
    "small", "span", "strike", "strong", "sub", "sup", "u",   "wbr"};

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_alnum(char c) { return is_alpha(c) || (c >= '0' && c <= '9'); }

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c | 0x20) : c; }

std::size_t find_ci(std::string_view hay, std::string_view needle, std::size_t from) {
  if (needle.size() > hay.size()) return std::string_view::npos;
  for (std::size_t i = from; i + needle.size() <= hay.size(); ++i) {
    bool ok = true;
    for (std::size_t k = 0; k < needle.size(); ++k) {
      if (lower(hay[i + k]) != needle[k]) {
        ok = false;
        break;
      }
    }
    if (ok) return i;
  }
  return std::string_view::npos;
}

// Position of the '>' closing the tag opened at `from`, honouring quoted
// attribute values. Unbalanced quotes fall back to the first '>'.
std::size_t find_tag_end(std::string_view s, std::size_t from) {
  char quote = 0;
  for (std::size_t i = from; i < s.size(); ++i) {
    char c = s[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '>') {
      return i;
    }
  }
  return s.find('>', from);
}

bool append_codepoint(std::string& out, std::uint32_t cp) {
  if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(reinterpret_cast<uint8_t*>(buf), len, U8_MAX_LENGTH,
            static_cast<UChar32>(cp), error);
  if (error) return false;
  out.append(buf, static_cast<std::size_t>(len));
  return true;
}

// Decodes the entity starting at s[i] == '&'. Returns bytes consumed, 0 if
// the text is not a recognised entity.
std::size_t decode_entity(std::string_view s, std::size_t i, std::string& out,
                          const HtmlOptions& options) {
  constexpr std::size_t kMaxEntity = 32;
  auto semi = s.find(';', i + 1);
  if (semi == std::string_view::npos || semi - i > kMaxEntity || semi == i + 1) {
    return 0;
  }
  std::string_view body = s.substr(i + 1, semi - i - 1);
  std::size_t consumed = semi - i + 1;

  if (body[0] == '#') {
    std::string_view digits = body.substr(1);
    int base = 10;
    if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
      base = 16;
      digits.remove_prefix(1);
    }
    if (digits.empty() || digits.size() > 8) return 0;
    std::uint32_t cp = 0;
    for (char c : digits) {
      int d;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (base == 16 && c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else if (base == 16 && c >= 'A' && c <= 'F') d = c - 'A' + 10;
      else return 0;
      cp = cp * static_cast<std::uint32_t>(base) + static_cast<std::uint32_t>(d);
    }
    return append_codepoint(out, cp) ? consumed : 0;
  }

  if (body == "amp") out.push_back('&');
  else if (body == "lt") out.push_back('<');
  else if (body == "gt") out.push_back('>');
  else if (body == "quot") out.push_back('"');
  else if (body == "apos") out.push_back('\'');
  else if (auto it = options.extra_entities.find(body); it != options.extra_entities.end())
    out.append(it->second);
  else return 0;
  return consumed;
}

bool is_inline(std::string_view name) {
  return std::find(kInlineTags.begin(), kInlineTags.end(), name) != kInlineTags.end();
}

std::string strip_once(std::string_view s, const HtmlOptions& options) {
  std::string raw;
  raw.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == '<') {
      if (s.substr(i, 4) == "<!--") {
        auto end = s.find("-->", i + 4);
        raw.push_back(' ');
        if (end == std::string_view::npos) break;
        i = end + 3;
        continue;
      }
      char next = i + 1 < s.size() ? s[i + 1] : '\0';
      if (is_alpha(next) || next == '/' || next == '!' || next == '?') {
        std::size_t j = i + 1 + (next == '/' ? 1 : 0);
        std::string name;
        while (j < s.size() && is_alnum(s[j])) name.push_back(lower(s[j++]));
        auto end = find_tag_end(s, j);
        if (end == std::string_view::npos) break;
        i = end + 1;
        if (next != '/' && (name == "script" || name == "style")) {
          auto close = find_ci(s, "</" + name, i);
          if (close == std::string_view::npos) break;
          auto close_end = s.find('>', close);
          if (close_end == std::string_view::npos) break;
          i = close_end + 1;
        }
        if (!is_inline(name)) raw.push_back(' ');
        continue;
      }
    } else if (c == '&') {
      if (auto n = decode_entity(s, i, raw, options)) {
        i += n;
        continue;
      }
    }
    raw.push_back(c);
    ++i;
  }

  // Collapse ASCII whitespace and U+00A0 into single spaces.
  std::string out;
  out.reserve(raw.size());
  bool pending = false;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    char ch = raw[k];
    bool space = ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' ||
                 ch == '\f' || ch == '\v';
    if (!space && static_cast<unsigned char>(ch) == 0xC2 && k + 1 < raw.size() &&
        static_cast<unsigned char>(raw[k + 1]) == 0xA0) {
      space = true;
      ++k;
    }
    if (space) {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(ch);
  }
  return out;
}

}  // namespace

std::string strip_html(std::string_view html, const HtmlOptions& options) {
  // Decoded entities can form new markup ("&lt;b&gt;"); iterate to a fixed
  // point. Each changing pass shortens the text or only rewrites whitespace.
  // The pass cap only matters for self-referential extra entities.
  constexpr int kMaxPasses = 64;
  std::string current = strip_once(html, options);
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    std::string next = strip_once(current, options);
    if (next == current) return current;
    current = std::move(next);
  }
  return current;
}

}  // namespace geolex
