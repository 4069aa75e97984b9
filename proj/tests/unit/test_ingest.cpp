#include <gtest/gtest.h>

#include "geolex/error.hpp"
#include "geolex/ingest.hpp"
#include "geolex/text.hpp"

namespace geolex {
namespace {

StateId state(std::string_view usps) { return *StateId::from_usps(usps); }

TEST(NormalizeState, Examples) {
  EXPECT_EQ(normalize_state("TX"), state("TX"));
  EXPECT_EQ(normalize_state("portland, oregon"), state("OR"));
  EXPECT_EQ(normalize_state("Springfield"), std::nullopt);
  EXPECT_EQ(normalize_state("AL"), state("AL"));
  EXPECT_EQ(normalize_state("Texas"), state("TX"));
  EXPECT_EQ(normalize_state("Alabama"), state("AL"));
}

TEST(NormalizeState, AllStatesByCodeAndName) {
  for (StateId s : all_states()) {
    std::string name(s.name());
    EXPECT_EQ(normalize_state(s.usps()), s);
    EXPECT_EQ(normalize_state(name), s);
    EXPECT_EQ(normalize_state(ascii_lower(name)), s);
    EXPECT_EQ(normalize_state(ascii_lower(s.usps())), s);
    EXPECT_EQ(normalize_state("Somewhere, " + name), s);
    EXPECT_EQ(normalize_state("  somewhere ,  " + std::string(s.usps()) + "  "), s);
  }
}

TEST(NormalizeState, NeverGuesses) {
  for (auto text : {"", "  ", "Mars", "DC", "Washington, DC", "Puerto Rico", "San Juan, PR",
                    "Texas City", "New York City", "Chicago IL", "U.S.A.", "Tex",
                    "North", "Portland, "}) {
    EXPECT_EQ(normalize_state(text), std::nullopt) << text;
  }
  // "Washington" is a state; the capital district is not.
  EXPECT_EQ(normalize_state("washington"), state("WA"));
  EXPECT_EQ(normalize_state("new  york"), state("NY"));
}

TEST(ExtractCity, Examples) {
  EXPECT_EQ(extract_city("Chicago, IL", state("IL")), "Chicago");
  EXPECT_EQ(extract_city("Texas", state("TX")), std::nullopt);
  EXPECT_EQ(extract_city("  new york , NY", state("NY")), "New York");
  EXPECT_EQ(extract_city("portland, oregon", state("OR")), "Portland");
  EXPECT_EQ(extract_city("WINSTON-SALEM, NC", state("NC")), "Winston-Salem");
  EXPECT_EQ(extract_city(" , TX", state("TX")), std::nullopt);
  EXPECT_EQ(extract_city("Chicago, IL", state("TX")), std::nullopt);
}

TEST(NormalizeFacets, Examples) {
  RawProfileRecord raw{"u1", "Austin, TX", "FEMALE", "Tourism ", {"b1", "b2", "b1"}};
  auto result = normalize_facets(raw);
  ASSERT_TRUE(std::holds_alternative<Profile>(result));
  const auto& p = std::get<Profile>(result);
  EXPECT_EQ(p.state, state("TX"));
  EXPECT_EQ(p.city, "Austin");
  EXPECT_EQ(p.gender, Gender::female);
  EXPECT_EQ(p.industry, "tourism");
  EXPECT_EQ(p.blog_ids, (std::vector<std::string>{"b1", "b2"}));

  auto rejected = normalize_facets({"u2", "Mars", "male", std::nullopt, {}});
  ASSERT_TRUE(std::holds_alternative<Rejection>(rejected));
  EXPECT_EQ(std::get<Rejection>(rejected).reason, Rejection::Reason::unresolved_state);
  EXPECT_EQ(std::get<Rejection>(rejected).location_text, "Mars");
}

TEST(NormalizeFacets, UnknownIndustryKeptWithPrefix) {
  auto p = std::get<Profile>(normalize_facets({"u", "CA", std::nullopt, " Pet  Grooming", {}}));
  EXPECT_EQ(p.industry, "other:pet grooming");
  auto q = std::get<Profile>(normalize_facets({"u", "CA", std::nullopt, "AUTOMOTIVE", {}}));
  EXPECT_EQ(q.industry, "automotive");

  FacetConfig custom{{"pet grooming"}};
  auto r = std::get<Profile>(normalize_facets({"u", "CA", std::nullopt, "Pet Grooming", {}}, custom));
  EXPECT_EQ(r.industry, "pet grooming");
}

TEST(NormalizeFacets, NeverFabricates) {
  for (auto g : {"", "unknown", "m", "Other", "malefemale"}) {
    auto p = std::get<Profile>(normalize_facets({"u", "UT", std::string(g), std::nullopt, {}}));
    EXPECT_FALSE(p.gender) << g;
    EXPECT_FALSE(p.industry);
  }
  auto p = std::get<Profile>(normalize_facets({"u", "UT", std::nullopt, "   ", {}}));
  EXPECT_FALSE(p.gender);
  EXPECT_FALSE(p.industry);
  EXPECT_FALSE(p.city);
  EXPECT_EQ(std::get<Profile>(normalize_facets({"u", "UT", " Male ", std::nullopt, {}})).gender,
            Gender::male);
}

TEST(NormalizeFacets, MissingUserIdRejected) {
  auto r = normalize_facets({"  ", "TX", std::nullopt, std::nullopt, {}});
  ASSERT_TRUE(std::holds_alternative<Rejection>(r));
  EXPECT_EQ(std::get<Rejection>(r).reason, Rejection::Reason::missing_user_id);
}

TEST(JsonLines, ParsesProfileAndPost) {
  auto r = parse_profile_line(
      R"({"user_id":"u1","location":"Austin, TX","gender":null,"blogs":["a","b"]})");
  EXPECT_EQ(r.user_id, "u1");
  EXPECT_EQ(r.location_text, "Austin, TX");
  EXPECT_FALSE(r.gender_text);
  EXPECT_FALSE(r.industry_text);
  EXPECT_EQ(r.blog_ids.size(), 2u);

  auto post = parse_post_line(R"({"blog_id":"a","post_id":"1","html":"<p>x</p>"})");
  EXPECT_EQ(post.blog_id, "a");
  EXPECT_EQ(post.html_body, "<p>x</p>");
}

TEST(JsonLines, MalformedLinesThrow) {
  EXPECT_THROW(parse_profile_line("{not json"), FormatError);
  EXPECT_THROW(parse_profile_line(R"(["array"])"), FormatError);
  EXPECT_THROW(parse_profile_line(R"({"location":"TX"})"), FormatError);
  EXPECT_THROW(parse_profile_line(R"({"user_id":"u","blogs":"b1"})"), FormatError);
  EXPECT_THROW(parse_profile_line(R"({"user_id":7})"), FormatError);
  EXPECT_THROW(parse_post_line(R"({"blog_id":"a"})"), FormatError);
}

}  // namespace
}  // namespace geolex
