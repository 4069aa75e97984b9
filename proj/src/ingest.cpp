#include "geolex/ingest.hpp"

#include <algorithm>
#include <unordered_set>

#include <json.hpp>

#include "geolex/error.hpp"
#include "geolex/text.hpp"

namespace geolex {
namespace {

std::optional<StateId> match_state_token(std::string_view text) {
  std::string key = ascii_lower(collapse_spaces(text));
  if (key.empty()) return std::nullopt;
  if (key.size() == 2) return StateId::from_usps(key);
  for (StateId s : all_states()) {
    if (ascii_lower(s.name()) == key) return s;
  }
  return std::nullopt;
}

std::optional<std::string> optional_string(const nlohmann::json& obj,
                                           const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw FormatError(std::string("field '") + key + "' must be a string");
  }
  return it->get<std::string>();
}

std::string required_string(const nlohmann::json& obj, const char* key) {
  auto value = optional_string(obj, key);
  if (!value) throw FormatError(std::string("missing field '") + key + "'");
  return *value;
}

nlohmann::json parse_object(std::string_view line) {
  auto doc = nlohmann::json::parse(line, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw FormatError("expected one JSON object per line");
  }
  return doc;
}

}  // namespace

std::string_view to_string(Gender g) {
  return g == Gender::male ? "male" : "female";
}

std::optional<StateId> normalize_state(std::string_view location_text) {
  if (auto whole = match_state_token(location_text)) return whole;
  auto comma = location_text.rfind(',');
  if (comma == std::string_view::npos) return std::nullopt;
  return match_state_token(location_text.substr(comma + 1));
}

std::optional<std::string> extract_city(std::string_view location_text,
                                        StateId state) {
  auto comma = location_text.rfind(',');
  if (comma == std::string_view::npos) return std::nullopt;
  if (match_state_token(location_text.substr(comma + 1)) != state) {
    return std::nullopt;
  }
  std::string city = title_case(location_text.substr(0, comma));
  if (city.empty()) return std::nullopt;
  return city;
}

FacetConfig FacetConfig::blogger_defaults() {
  return FacetConfig{{
      "accounting", "advertising", "agriculture", "architecture", "arts",
      "automotive", "banking", "biotech", "business services", "chemicals",
      "communications-media", "construction", "consulting", "education",
      "engineering", "environment", "fashion", "government",
      "human resources", "internet", "investment banking", "law",
      "law enforcement-security", "manufacturing", "maritime", "marketing",
      "military", "museums-libraries", "non-profit", "publishing",
      "real estate", "religion", "science", "student", "technology",
      "telecommunications", "tourism", "transportation",
  }};
}

std::variant<Profile, Rejection> normalize_facets(const RawProfileRecord& raw,
                                                  const FacetConfig& config) {
  if (trim(raw.user_id).empty()) {
    return Rejection{Rejection::Reason::missing_user_id, raw.user_id,
                     raw.location_text};
  }
  auto state = normalize_state(raw.location_text);
  if (!state) {
    return Rejection{Rejection::Reason::unresolved_state, raw.user_id,
                     raw.location_text};
  }

  Profile p;
  p.user_id = raw.user_id;
  p.state = *state;
  p.city = extract_city(raw.location_text, *state);

  if (raw.gender_text) {
    std::string g = ascii_lower(trim(*raw.gender_text));
    if (g == "male") p.gender = Gender::male;
    if (g == "female") p.gender = Gender::female;
  }

  if (raw.industry_text) {
    std::string label = normalize_word(collapse_spaces(*raw.industry_text));
    if (!label.empty()) {
      p.industry = config.industries.contains(label) ? label : "other:" + label;
    }
  }

  std::unordered_set<std::string> seen;
  for (const auto& blog : raw.blog_ids) {
    if (seen.insert(blog).second) p.blog_ids.push_back(blog);
  }
  return p;
}

RawProfileRecord parse_profile_line(std::string_view line) {
  auto doc = parse_object(line);
  RawProfileRecord r;
  r.user_id = required_string(doc, "user_id");
  r.location_text = optional_string(doc, "location").value_or("");
  r.gender_text = optional_string(doc, "gender");
  r.industry_text = optional_string(doc, "industry");
  if (auto it = doc.find("blogs"); it != doc.end() && !it->is_null()) {
    if (!it->is_array()) throw FormatError("field 'blogs' must be an array");
    for (const auto& b : *it) {
      if (!b.is_string()) throw FormatError("blog ids must be strings");
      r.blog_ids.push_back(b.get<std::string>());
    }
  }
  return r;
}

RawPost parse_post_line(std::string_view line) {
  auto doc = parse_object(line);
  return RawPost{required_string(doc, "blog_id"),
                 required_string(doc, "post_id"),
                 optional_string(doc, "html").value_or("")};
}

}  // namespace geolex
