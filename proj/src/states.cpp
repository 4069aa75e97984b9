#include "geolex/states.hpp"

#include "geolex/error.hpp"

namespace geolex {
namespace {

struct StateRow {
  std::string_view usps;
  std::string_view name;
};

// Alphabetical by USPS code; the position is the StateId index.
constexpr std::array<StateRow, kStateCount> kStates{{
    {"AK", "Alaska"},         {"AL", "Alabama"},
    {"AR", "Arkansas"},       {"AZ", "Arizona"},
    {"CA", "California"},     {"CO", "Colorado"},
    {"CT", "Connecticut"},    {"DE", "Delaware"},
    {"FL", "Florida"},        {"GA", "Georgia"},
    {"HI", "Hawaii"},         {"IA", "Iowa"},
    {"ID", "Idaho"},          {"IL", "Illinois"},
    {"IN", "Indiana"},        {"KS", "Kansas"},
    {"KY", "Kentucky"},       {"LA", "Louisiana"},
    {"MA", "Massachusetts"},  {"MD", "Maryland"},
    {"ME", "Maine"},          {"MI", "Michigan"},
    {"MN", "Minnesota"},      {"MO", "Missouri"},
    {"MS", "Mississippi"},    {"MT", "Montana"},
    {"NC", "North Carolina"}, {"ND", "North Dakota"},
    {"NE", "Nebraska"},       {"NH", "New Hampshire"},
    {"NJ", "New Jersey"},     {"NM", "New Mexico"},
    {"NV", "Nevada"},         {"NY", "New York"},
    {"OH", "Ohio"},           {"OK", "Oklahoma"},
    {"OR", "Oregon"},         {"PA", "Pennsylvania"},
    {"RI", "Rhode Island"},   {"SC", "South Carolina"},
    {"SD", "South Dakota"},   {"TN", "Tennessee"},
    {"TX", "Texas"},          {"UT", "Utah"},
    {"VA", "Virginia"},       {"VT", "Vermont"},
    {"WA", "Washington"},     {"WI", "Wisconsin"},
    {"WV", "West Virginia"},  {"WY", "Wyoming"},
}};

}  // namespace

StateId StateId::from_index(std::size_t index) {
  if (index >= kStateCount) {
    throw Error(ErrorCode::invalid_argument,
                "state index out of range: " + std::to_string(index));
  }
  return StateId(static_cast<std::uint8_t>(index));
}

std::optional<StateId> StateId::from_usps(std::string_view code) {
  if (code.size() != 2) return std::nullopt;
  char upper[2] = {code[0], code[1]};
  for (char& c : upper) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  std::string_view key(upper, 2);
  for (std::size_t i = 0; i < kStateCount; ++i) {
    if (kStates[i].usps == key) return StateId(static_cast<std::uint8_t>(i));
  }
  return std::nullopt;
}

std::string_view StateId::usps() const noexcept { return kStates[index_].usps; }

std::string_view StateId::name() const noexcept { return kStates[index_].name; }

const std::array<StateId, kStateCount>& all_states() {
  static const auto states = [] {
    std::array<StateId, kStateCount> out{};
    for (std::size_t i = 0; i < kStateCount; ++i) out[i] = StateId::from_index(i);
    return out;
  }();
  return states;
}

std::string state_table_csv() {
  std::string out = "usps,name\n";
  for (const auto& row : kStates) {
    out.append(row.usps).append(",").append(row.name).append("\n");
  }
  return out;
}

}  // namespace geolex
