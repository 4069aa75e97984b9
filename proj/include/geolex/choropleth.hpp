#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "geolex/analytics.hpp"

namespace geolex {

inline constexpr std::size_t kDefaultBins = 7;

using StateBins = std::array<std::optional<std::size_t>, kStateCount>;

/// A state vector with bin assignments, ready to draw. Bin 0 is the
/// lightest; higher bins are darker and hold higher values.
struct ChoroplethSpec {
  StateValues values{};
  StateBins bins{};
  /// Lower bound of bins 1..B-1, strictly ascending.
  std::vector<double> bin_edges;
  double min = 0.0;
  double max = 0.0;
  /// Bins actually used (bin_edges.size() + 1); may be below the request
  /// when ties collapse quantiles.
  std::size_t bin_count = 0;
  std::size_t requested_bins = 0;
  std::optional<StateCounts> numerators;
  std::optional<StateCounts> denominators;

  friend bool operator==(const ChoroplethSpec&, const ChoroplethSpec&) = default;
};

/// Quantile binning over the non-null values: edge j is the sorted value at
/// position ceil(j * n / B); equal edges and edges at the minimum are
/// dropped, and a value's bin is the number of edges <= it. Equal values
/// therefore always share a bin and bins never decrease with value.
///
/// Throws Error(invalid_argument) if bins < 2 and Error(no_data) if every
/// value is null.
ChoroplethSpec bin_quantile(const StateValues& values, std::size_t bins = kDefaultBins);

ChoroplethSpec make_choropleth(const ProportionVector& map,
                               std::size_t bins = kDefaultBins);
ChoroplethSpec make_choropleth(const StateCounts& counts,
                               std::size_t bins = kDefaultBins);

nlohmann::json to_json(const ChoroplethSpec& spec);
nlohmann::json to_json(const CityDot& dot);

/// `usps,value,bin`, one row per state in StateId order; nulls are empty.
std::string to_csv(const ChoroplethSpec& spec);

/// Fill colour of bin `bin` out of `bin_count`, light to dark.
std::string bin_color(std::size_t bin, std::size_t bin_count);

/// SVG 1.1 tile-grid map. Each state tile carries class `bin-<i>` (or
/// `nodata`) plus data-usps / data-bin attributes; a legend is embedded.
std::string to_svg(const ChoroplethSpec& spec, std::string_view title = {},
                   const std::vector<CityDot>& cities = {});

/// Column and row of each state in the tile grid.
struct TilePosition {
  int col;
  int row;
};
TilePosition tile_position(StateId state);

/// TopoJSON topology "states" with one unit-square polygon per state tile.
nlohmann::json state_tiles_topojson();

/// Shortest round-trip decimal text of `v`.
std::string format_double(double v);

}  // namespace geolex
