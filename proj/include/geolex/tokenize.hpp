#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace geolex {

/// Tokens are cut to this many code points; the rest of the run is dropped.
inline constexpr std::size_t kMaxTokenChars = 64;

struct TokenizeStats {
  std::uint64_t tokens = 0;
  std::uint64_t truncated = 0;

  TokenizeStats& operator+=(const TokenizeStats& o) {
    tokens += o.tokens;
    truncated += o.truncated;
    return *this;
  }
};

namespace detail {

enum class CharClass : std::uint8_t { other, word, mark, apostrophe };

struct DecodedChar {
  CharClass cls;
  std::uint32_t folded;
  std::size_t next;
};

DecodedChar decode_non_ascii(std::string_view text, std::size_t pos);
void append_utf8(std::string& out, std::uint32_t cp);

inline CharClass ascii_class(unsigned char b) {
  if ((b >= 'a' && b <= 'z') || (b >= 'A' && b <= 'Z') || (b >= '0' && b <= '9')) {
    return CharClass::word;
  }
  return b == '\'' ? CharClass::apostrophe : CharClass::other;
}

}  // namespace detail

/// Splits plain text into maximal runs of letters and digits (plus combining
/// marks), keeping a single apostrophe between two word characters
/// ("don't"). U+2019 counts as an apostrophe and is emitted as '\''. Every
/// token is lowercased. Reuses one buffer; `emit` receives a view that is
/// valid only during the call.
class Tokenizer {
 public:
  template <class Emit>
  void run(std::string_view text, Emit&& emit) {
    buf_.clear();
    std::size_t chars = 0;
    bool truncated = false;
    bool pending_apostrophe = false;

    auto flush = [&] {
      if (!buf_.empty()) {
        ++stats_.tokens;
        if (truncated) ++stats_.truncated;
        emit(std::string_view(buf_));
        buf_.clear();
      }
      chars = 0;
      truncated = false;
      pending_apostrophe = false;
    };
    auto push = [&](std::uint32_t cp) {
      if (chars >= kMaxTokenChars) {
        truncated = true;
        return;
      }
      ++chars;
      if (cp < 0x80) buf_.push_back(static_cast<char>(cp));
      else detail::append_utf8(buf_, cp);
    };

    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
      auto b = static_cast<unsigned char>(text[i]);
      detail::CharClass cls;
      std::uint32_t cp;
      if (b < 0x80) {
        cls = detail::ascii_class(b);
        cp = (b >= 'A' && b <= 'Z') ? (b | 0x20u) : b;
        ++i;
      } else {
        auto d = detail::decode_non_ascii(text, i);
        cls = d.cls;
        cp = d.folded;
        i = d.next;
      }
      switch (cls) {
        case detail::CharClass::word:
          if (pending_apostrophe) {
            push('\'');
            pending_apostrophe = false;
          }
          push(cp);
          if (b < 0x80) {
            // Copy the rest of an ASCII letter/digit run in one go.
            std::size_t j = i;
            while (j < n && detail::ascii_class(static_cast<unsigned char>(text[j])) ==
                                detail::CharClass::word)
              ++j;
            std::size_t take = std::min(j - i, kMaxTokenChars - std::min(chars, kMaxTokenChars));
            if (take < j - i) truncated = true;
            std::size_t old = buf_.size();
            buf_.resize(old + take);
            for (std::size_t k = 0; k < take; ++k) {
              auto c = static_cast<unsigned char>(text[i + k]);
              buf_[old + k] = static_cast<char>((c >= 'A' && c <= 'Z') ? (c | 0x20u) : c);
            }
            chars += take;
            i = j;
          }
          break;
        case detail::CharClass::mark:
          if (pending_apostrophe) flush();
          else if (!buf_.empty()) push(cp);
          break;
        case detail::CharClass::apostrophe:
          if (!buf_.empty() && !pending_apostrophe) pending_apostrophe = true;
          else flush();
          break;
        case detail::CharClass::other:
          flush();
          break;
      }
    }
    flush();
  }

  const TokenizeStats& stats() const noexcept { return stats_; }
  void reset_stats() noexcept { stats_ = {}; }

 private:
  std::string buf_;
  TokenizeStats stats_;
};

std::vector<std::string> tokenize(std::string_view text);
std::vector<std::string> tokenize(std::string_view text, TokenizeStats& stats);

}  // namespace geolex
