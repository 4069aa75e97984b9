#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace geolex {

inline constexpr std::size_t kStateCount = 50;

/// One of the 50 U.S. states. Indices follow alphabetical USPS order
/// (AK = 0, ..., WY = 49).
class StateId {
 public:
  constexpr StateId() = default;

  /// Throws geolex::Error(invalid_argument) when index >= 50.
  static StateId from_index(std::size_t index);
  static std::optional<StateId> from_usps(std::string_view code);

  constexpr std::size_t index() const noexcept { return index_; }
  std::string_view usps() const noexcept;
  std::string_view name() const noexcept;

  friend constexpr auto operator<=>(StateId, StateId) = default;

 private:
  constexpr explicit StateId(std::uint8_t index) : index_(index) {}
  std::uint8_t index_ = 0;
};

/// All 50 states in index order.
const std::array<StateId, kStateCount>& all_states();

/// The embedded state table as `usps,name` CSV with a header row.
std::string state_table_csv();

}  // namespace geolex
