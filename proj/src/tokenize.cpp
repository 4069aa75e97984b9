#include "geolex/tokenize.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

namespace geolex {
namespace detail {

DecodedChar decode_non_ascii(std::string_view text, std::size_t pos) {
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  auto i = static_cast<int32_t>(pos);
  const auto length = static_cast<int32_t>(text.size());
  UChar32 cp;
  U8_NEXT(bytes, i, length, cp);
  auto next = static_cast<std::size_t>(i);
  if (cp < 0) return {CharClass::other, 0, next};
  if (cp == 0x2019) return {CharClass::apostrophe, '\'', next};
  if (u_isalnum(cp)) {
    return {CharClass::word, static_cast<std::uint32_t>(u_tolower(cp)), next};
  }
  auto mask = U_GET_GC_MASK(cp);
  if (mask & (U_GC_MN_MASK | U_GC_MC_MASK | U_GC_ME_MASK)) {
    return {CharClass::mark, static_cast<std::uint32_t>(cp), next};
  }
  return {CharClass::other, 0, next};
}

void append_utf8(std::string& out, std::uint32_t cp) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(reinterpret_cast<uint8_t*>(buf), len, U8_MAX_LENGTH,
            static_cast<UChar32>(cp), error);
  if (!error) out.append(buf, static_cast<std::size_t>(len));
}

}  // namespace detail

std::vector<std::string> tokenize(std::string_view text, TokenizeStats& stats) {
  std::vector<std::string> out;
  Tokenizer tok;
  tok.run(text, [&](std::string_view t) { out.emplace_back(t); });
  stats += tok.stats();
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  TokenizeStats ignored;
  return tokenize(text, ignored);
}

}  // namespace geolex
