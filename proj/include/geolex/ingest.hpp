#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "geolex/states.hpp"

namespace geolex {

enum class Gender { male, female };

std::string_view to_string(Gender g);

struct RawProfileRecord {
  std::string user_id;
  std::string location_text;
  std::optional<std::string> gender_text;
  std::optional<std::string> industry_text;
  std::vector<std::string> blog_ids;
};

struct Profile {
  std::string user_id;
  StateId state;
  std::optional<std::string> city;
  std::optional<Gender> gender;
  std::optional<std::string> industry;
  std::vector<std::string> blog_ids;

  friend bool operator==(const Profile&, const Profile&) = default;
};

struct Rejection {
  enum class Reason { unresolved_state, missing_user_id };
  Reason reason;
  std::string user_id;
  std::string location_text;
};

struct RawPost {
  std::string blog_id;
  std::string post_id;
  std::string html_body;
};

struct TokenizedPost {
  std::string blog_id;
  std::string post_id;
  std::vector<std::string> tokens;
};

/// Resolves a bare state name or USPS code, or the trailing component of a
/// "City, State" string. Case-insensitive. Never guesses.
std::optional<StateId> normalize_state(std::string_view location_text);

/// The leading "City" of a "City, State" string whose trailing part resolves
/// to `state`, trimmed and title-cased.
std::optional<std::string> extract_city(std::string_view location_text,
                                        StateId state);

/// Closed industry vocabulary. Labels outside it are kept as "other:<label>".
struct FacetConfig {
  std::set<std::string, std::less<>> industries;

  static FacetConfig blogger_defaults();
};

std::variant<Profile, Rejection> normalize_facets(
    const RawProfileRecord& raw,
    const FacetConfig& config = FacetConfig::blogger_defaults());

// JSONL records. Throws FormatError on malformed lines.
RawProfileRecord parse_profile_line(std::string_view line);
RawPost parse_post_line(std::string_view line);

}  // namespace geolex
