#include <random>
#include <sstream>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <gtest/gtest.h>

#include "geolex/text.hpp"
#include "geolex/tokenize.hpp"
#include "test_support.hpp"

namespace geolex {
namespace {

using Tokens = std::vector<std::string>;

TEST(Tokenize, Examples) {
  EXPECT_EQ(tokenize("Happy days in Maui!"), (Tokens{"happy", "days", "in", "maui"}));
  EXPECT_EQ(tokenize(""), Tokens{});
  EXPECT_EQ(tokenize("don't"), Tokens{"don't"});
  EXPECT_EQ(tokenize("!!! ... ---"), Tokens{});
}

TEST(Tokenize, GoldenParagraph) {
  auto text = testing::read_text(testing::fixture_path("tok01.txt"));
  std::istringstream expected_in(testing::read_text(testing::fixture_path("tok01.tokens")));
  Tokens expected;
  for (std::string line; std::getline(expected_in, line);) expected.push_back(line);
  EXPECT_EQ(tokenize(text), expected);
}

TEST(Tokenize, ApostropheRules) {
  EXPECT_EQ(tokenize("'quoted' words'"), (Tokens{"quoted", "words"}));
  EXPECT_EQ(tokenize("a''b"), (Tokens{"a", "b"}));
  EXPECT_EQ(tokenize("it’s"), Tokens{"it's"});
  EXPECT_EQ(tokenize("rock'n'roll"), Tokens{"rock'n'roll"});
}

TEST(Tokenize, DigitsAndUnicode) {
  EXPECT_EQ(tokenize("Route 66, 1999"), (Tokens{"route", "66", "1999"}));
  EXPECT_EQ(tokenize("ÉCOLE Straße ΣΟΦΙΑ"), (Tokens{"école", "straße", "σοφια"}));
  // Decomposed e + combining acute stays one token.
  EXPECT_EQ(tokenize("cafe\xCC\x81 ok"), (Tokens{"cafe\xCC\x81", "ok"}));
  // Invalid UTF-8 splits tokens.
  EXPECT_EQ(tokenize("ab\xFF" "cd"), (Tokens{"ab", "cd"}));
}

TEST(Tokenize, LongTokensTruncated) {
  std::string longword(100, 'x');
  TokenizeStats stats;
  auto tokens = tokenize(longword + " short", stats);
  ASSERT_EQ(tokens.size(), 2u);
  EXPECT_EQ(tokens[0], std::string(kMaxTokenChars, 'x'));
  EXPECT_EQ(stats.truncated, 1u);
  EXPECT_EQ(stats.tokens, 2u);

  std::string wide;
  for (int i = 0; i < 70; ++i) wide += "é";
  auto t = tokenize(wide);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(utf8_length(t[0]), kMaxTokenChars);
}

bool has_uppercase(std::string_view s) {
  const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
  int32_t i = 0;
  const auto n = static_cast<int32_t>(s.size());
  while (i < n) {
    UChar32 cp;
    U8_NEXT(bytes, i, n, cp);
    if (cp >= 0 && u_isUUppercase(cp)) return true;
  }
  return false;
}

TEST(Tokenize, PropertiesOnRandomText) {
  const std::vector<std::string> pieces = {
      "A", "b", "Z", "9", " ", "\t", "\n", "'", "’", "-", ".", "!", "É", "ß", "Σ", "ǅ",
      "日本", "\xCC\x81", "\xFF", "x", "Q'", "DON'T"};
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5000; ++trial) {
    std::string text;
    int n = static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) text += pieces[rng() % pieces.size()];
    auto tokens = tokenize(text);
    for (const auto& t : tokens) {
      ASSERT_FALSE(t.empty());
      ASSERT_EQ(t.find_first_of(" \t\n\r"), std::string::npos) << t;
      ASSERT_FALSE(has_uppercase(t)) << t;
      ASSERT_NE(t.front(), '\'');
      ASSERT_NE(t.back(), '\'');
    }
    // Deterministic and order-preserving: tokenizing the joined output
    // reproduces it.
    std::string joined;
    for (const auto& t : tokens) joined += t + " ";
    ASSERT_EQ(tokenize(joined), tokens) << text;
    ASSERT_EQ(tokenize(text), tokens);
  }
}

}  // namespace
}  // namespace geolex
