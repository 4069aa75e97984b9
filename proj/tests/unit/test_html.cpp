#include <random>

#include <gtest/gtest.h>

#include "geolex/html.hpp"
#include "test_support.hpp"

namespace geolex {
namespace {

TEST(StripHtml, Examples) {
  EXPECT_EQ(strip_html("<p>hello <b>world</b></p>"), "hello world");
  EXPECT_EQ(strip_html("a &amp; b"), "a & b");
  EXPECT_EQ(strip_html("&lt;&gt;&quot;&apos;"), "<>\"'");
  EXPECT_EQ(strip_html("caf&#233; &#x263A;"), "café ☺");
  EXPECT_EQ(strip_html(""), "");
}

TEST(StripHtml, GoldenFixture) {
  auto html = testing::read_text(testing::fixture_path("blog01.html"));
  auto golden = testing::read_text(testing::fixture_path("blog01.txt"));
  EXPECT_EQ(strip_html(html), golden);
}

TEST(StripHtml, ScriptStyleAndComments) {
  EXPECT_EQ(strip_html("a<script>var x = '<b>';</script>b"), "a b");
  EXPECT_EQ(strip_html("a<STYLE type=x>p{}</STYLE>b"), "a b");
  EXPECT_EQ(strip_html("a<!-- <p>hidden</p> -->b"), "a b");
  EXPECT_EQ(strip_html("x<br/>y<hr>z"), "x y z");
  EXPECT_EQ(strip_html("wor<b>l</b>d"), "world");
}

TEST(StripHtml, MalformedMarkupIsBestEffort) {
  EXPECT_EQ(strip_html("text <p unclosed"), "text");
  EXPECT_EQ(strip_html("text <!-- never closed"), "text");
  EXPECT_EQ(strip_html("a <script>no end"), "a");
  EXPECT_EQ(strip_html("1 < 2 and 3 > 2"), "1 < 2 and 3 > 2");
  EXPECT_EQ(strip_html("AT&T &bogus; &#xZZ; &#0;"), "AT&T &bogus; &#xZZ; &#0;");
  EXPECT_EQ(strip_html("<a title=\"x > y\">link</a>"), "link");
}

TEST(StripHtml, WhitespaceCollapsed) {
  EXPECT_EQ(strip_html("  a\t\tb\n\r\nc  "), "a b c");
  EXPECT_EQ(strip_html("a&#160;b"), "a b");
}

TEST(StripHtml, DoubleEscapedMarkupReachesFixedPoint) {
  auto once = strip_html("&lt;b&gt;bold&lt;/b&gt; &amp;amp;");
  EXPECT_EQ(once, "bold &");
  EXPECT_EQ(strip_html(once), once);
}

TEST(StripHtml, ExtraEntitiesFromConfig) {
  HtmlOptions options;
  options.extra_entities.emplace("nbsp", " ");
  options.extra_entities.emplace("mdash", "—");
  EXPECT_EQ(strip_html("a&nbsp;b&mdash;c", options), "a b—c");
  EXPECT_EQ(strip_html("a&nbsp;b"), "a&nbsp;b");
}

TEST(StripHtml, IdempotentOnRandomMarkup) {
  const std::vector<std::string> pieces = {
      "<p>", "</p>", "<b>", "</b>", "<", ">", "&", "&amp;", "&lt;", "&gt;", "&#65;", "&#x3c;",
      "&amp;lt;", "<!--", "-->", "<script>", "</script>", " ", "\n", "\t", "word", "Ünïcødé",
      "\"", "'", "=", "a", "b", "<a href='x>y'>", ";", "#", "&#160;", "lt;"};
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 5000; ++trial) {
    std::string input;
    int n = static_cast<int>(rng() % 24);
    for (int i = 0; i < n; ++i) input += pieces[rng() % pieces.size()];
    auto once = strip_html(input);
    ASSERT_EQ(strip_html(once), once) << "input: " << input;
  }
}

}  // namespace
}  // namespace geolex
