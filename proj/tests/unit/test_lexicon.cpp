#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "geolex/error.hpp"
#include "geolex/lexicon.hpp"
#include "test_support.hpp"

namespace geolex {
namespace {

using Ids = std::vector<CategoryId>;

constexpr std::string_view kSmallDic =
    "%\n"
    "1\tMoney\n"
    "2\tWork\n"
    "%\n"
    "dollar\t1\n"
    "work\t2\n"
    "work*\t2\n"
    "pay*\t1\t2\n";

// Oracle: test every pattern of every category.
Ids naive_match(const Lexicon& lex, std::string_view token) {
  Ids out;
  for (const auto& c : lex.categories)
    for (const auto& p : c.patterns)
      if (p.matches(token)) {
        out.push_back(c.id);
        break;
      }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(ParseDic, SmallDictionary) {
  auto lex = parse_dic(kSmallDic, "small");
  EXPECT_EQ(lex.name, "small");
  ASSERT_EQ(lex.categories.size(), 2u);
  EXPECT_EQ(lex.categories[0].name, "Money");
  EXPECT_EQ(lex.find("Work")->id, 2u);
  EXPECT_EQ(lex.find(1)->patterns.size(), 2u);
  EXPECT_EQ(lex.find(2)->patterns.size(), 3u);
  EXPECT_EQ(lex.find("Nope"), nullptr);
}

TEST(ParseDic, SpaceSeparatedAndCaseFolded) {
  auto lex = parse_dic("%\n1 Money\n%\nDollar  1\nCASH 1\n");
  const auto& pats = lex.find(1)->patterns;
  EXPECT_TRUE(pats.contains(Pattern{Pattern::Kind::exact, "dollar"}));
  EXPECT_TRUE(pats.contains(Pattern{Pattern::Kind::exact, "cash"}));
}

void expect_line_error(std::string_view text, std::size_t line) {
  try {
    parse_dic(text);
    FAIL() << "no error for:\n" << text;
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
  }
}

TEST(ParseDic, ErrorsCarryLineNumbers) {
  expect_line_error("%\n1\tA\n%\nx\t9\n", 4);          // unknown id
  expect_line_error("%\n1\tA\n1\tB\n%\nx\t1\n", 3);    // duplicate id
  expect_line_error("%\n1\tA\n2\tA\n%\nx\t1\n", 3);    // duplicate name
  expect_line_error("%\n1\tA\n%\nx\tone\n", 4);        // bad id
  expect_line_error("%\n1\tA\n%\nx\n", 4);             // no ids
  expect_line_error("%\n1\tA\n%\nw*x\t1\n", 4);        // infix wildcard
  expect_line_error("%\n1\tA\n", 1);                   // unclosed header
  EXPECT_THROW(parse_dic(""), FormatError);
  EXPECT_THROW(parse_dic("%\n1\tA\n2\tB\n%\nx\t1\n"), FormatError);  // B empty
}

TEST(Pattern, Parse) {
  EXPECT_EQ(Pattern::parse("remunerat*"), (Pattern{Pattern::Kind::prefix, "remunerat"}));
  EXPECT_EQ(Pattern::parse("Dollar"), (Pattern{Pattern::Kind::exact, "dollar"}));
  EXPECT_THROW(Pattern::parse("*"), FormatError);
  EXPECT_THROW(Pattern::parse(""), FormatError);
  EXPECT_THROW(Pattern::parse("two words"), FormatError);
}

TEST(ThemeList, ParsesWithComments) {
  auto c = parse_theme_list("# values\nGod\n\nbible  # inline\nchurch\n", "Religion", 4);
  EXPECT_EQ(c.id, 4u);
  EXPECT_EQ(c.name, "Religion");
  EXPECT_EQ(c.patterns.size(), 3u);
  EXPECT_TRUE(c.patterns.contains(Pattern{Pattern::Kind::exact, "bible"}));
  EXPECT_THROW(parse_theme_list("# nothing\n", "Empty"), FormatError);
}

TEST(LoadLexicon, FixtureFiles) {
  auto liwc = load_lexicon(testing::fixture_path("lexicons/mini.dic"));
  EXPECT_EQ(liwc.name, "mini");
  EXPECT_EQ(liwc.categories.size(), 3u);

  auto values = load_lexicon(testing::fixture_path("lexicons/values"));
  EXPECT_EQ(values.name, "values");
  ASSERT_EQ(values.categories.size(), 2u);
  EXPECT_EQ(values.categories[0].name, "hard_work");
  EXPECT_EQ(values.categories[1].name, "religion");

  auto all = load_lexicon_dir(testing::fixture_path("lexicons"));
  EXPECT_EQ(all.size(), 2u);
  EXPECT_TRUE(all.contains("mini"));
  EXPECT_TRUE(all.contains("values"));
  EXPECT_THROW(load_lexicon(testing::fixture_path("lexicons/missing.dic")), Error);
}

TEST(Matcher, ExactVersusPrefix) {
  Matcher m(parse_dic(kSmallDic));
  EXPECT_EQ(m.match("dollar"), Ids{1});
  EXPECT_EQ(m.match("dollars"), Ids{});
  EXPECT_EQ(m.match("work"), Ids{2});      // work and work* both hit; one id
  EXPECT_EQ(m.match("workers"), Ids{2});
  EXPECT_EQ(m.match("wor"), Ids{});
  EXPECT_EQ(m.match("payment"), (Ids{1, 2}));
  EXPECT_EQ(m.match("pay"), (Ids{1, 2}));
  EXPECT_EQ(m.match(""), Ids{});
  EXPECT_EQ(m.find("Money"), 1u);
  EXPECT_EQ(m.name_of(2), "Work");
  EXPECT_THROW(m.name_of(9), Error);
}

TEST(Matcher, MiniFixture) {
  Matcher m(load_lexicon(testing::fixture_path("lexicons/mini.dic")));
  auto money = *m.find("Money");
  auto outdoors = *m.find("Outdoors");
  EXPECT_EQ(m.match("remuneration"), Ids{money});
  EXPECT_EQ(m.match("fishing"), Ids{outdoors});
  EXPECT_EQ(m.match("lakes"), Ids{});
}

TEST(Matcher, FingerprintTracksContent) {
  auto a = parse_dic(kSmallDic, "x");
  auto b = parse_dic(serialize_dic(a), "x");
  EXPECT_EQ(Matcher(a).fingerprint(), Matcher(b).fingerprint());
  b.categories[0].patterns.insert(Pattern{Pattern::Kind::exact, "cash"});
  EXPECT_NE(Matcher(a).fingerprint(), Matcher(b).fingerprint());
}

Lexicon random_lexicon(std::mt19937_64& rng, std::size_t patterns, std::string_view alphabet,
                       std::size_t max_len, std::size_t categories) {
  Lexicon lex{"random", {}};
  for (std::size_t c = 0; c < categories; ++c)
    lex.categories.push_back({static_cast<CategoryId>(c + 1), "c" + std::to_string(c), {}});
  for (std::size_t i = 0; i < patterns; ++i) {
    std::string stem;
    std::size_t len = 1 + rng() % max_len;
    for (std::size_t k = 0; k < len; ++k) stem += alphabet[rng() % alphabet.size()];
    auto kind = rng() % 3 == 0 ? Pattern::Kind::prefix : Pattern::Kind::exact;
    lex.categories[rng() % categories].patterns.insert({kind, stem});
  }
  std::erase_if(lex.categories, [](const Category& c) { return c.patterns.empty(); });
  return lex;
}

TEST(Matcher, AgreesWithNaiveScanOnRandomTokens) {
  std::mt19937_64 rng(1234);
  for (int round = 0; round < 5; ++round) {
    auto lex = random_lexicon(rng, 200, "abcdefgh", 5, 12);
    Matcher m(lex);
    for (int t = 0; t < 10000; ++t) {
      std::string token;
      std::size_t len = 1 + rng() % 7;
      for (std::size_t k = 0; k < len; ++k) token += "abcdefghi"[rng() % 9];
      ASSERT_EQ(m.match(token), naive_match(lex, token)) << token;
    }
  }
}

TEST(Matcher, AgreesWithNaiveScanExhaustively) {
  std::mt19937_64 rng(99);
  std::vector<std::string> all_strings{""};
  for (std::size_t len = 1; len <= 4; ++len) {
    std::vector<std::string> next;
    for (const auto& s : all_strings)
      if (s.size() == len - 1)
        for (char ch : std::string_view("abc")) next.push_back(s + ch);
    all_strings.insert(all_strings.end(), next.begin(), next.end());
  }
  for (int round = 0; round < 20; ++round) {
    auto lex = random_lexicon(rng, 15, "abc", 3, 4);
    Matcher m(lex);
    for (const auto& s : all_strings) ASSERT_EQ(m.match(s), naive_match(lex, s)) << s;
  }
}

TEST(SerializeDic, RoundTrip) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 50; ++round) {
    auto lex = random_lexicon(rng, 60, "abcxyz'", 6, 5);
    lex.name = "r";
    ASSERT_EQ(parse_dic(serialize_dic(lex), "r"), lex);
  }
  auto mini = load_lexicon(testing::fixture_path("lexicons/mini.dic"));
  EXPECT_EQ(parse_dic(serialize_dic(mini), "mini"), mini);
}

}  // namespace
}  // namespace geolex
