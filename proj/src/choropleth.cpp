#include "geolex/choropleth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "geolex/error.hpp"

namespace geolex {
namespace {

constexpr int kTile = 48;
constexpr int kGap = 4;
constexpr int kMargin = 20;
constexpr int kCols = 12;
constexpr int kRows = 8;

// Indexed by StateId (alphabetical USPS order).
constexpr std::array<TilePosition, kStateCount> kTiles{{
    {0, 0},  // AK
    {7, 6},  // AL
    {5, 5},  // AR
    {2, 5},  // AZ
    {1, 4},  // CA
    {3, 4},  // CO
    {10, 3}, // CT
    {10, 4}, // DE
    {9, 7},  // FL
    {8, 6},  // GA
    {0, 7},  // HI
    {5, 3},  // IA
    {2, 2},  // ID
    {6, 2},  // IL
    {6, 3},  // IN
    {4, 5},  // KS
    {6, 4},  // KY
    {5, 6},  // LA
    {11, 2}, // MA
    {9, 4},  // MD
    {11, 0}, // ME
    {8, 2},  // MI
    {5, 2},  // MN
    {5, 4},  // MO
    {6, 6},  // MS
    {3, 2},  // MT
    {7, 5},  // NC
    {4, 2},  // ND
    {4, 4},  // NE
    {11, 1}, // NH
    {9, 3},  // NJ
    {3, 5},  // NM
    {2, 3},  // NV
    {9, 2},  // NY
    {7, 3},  // OH
    {4, 6},  // OK
    {1, 3},  // OR
    {8, 3},  // PA
    {10, 2}, // RI
    {8, 5},  // SC
    {4, 3},  // SD
    {6, 5},  // TN
    {4, 7},  // TX
    {2, 4},  // UT
    {8, 4},  // VA
    {10, 1}, // VT
    {1, 2},  // WA
    {7, 2},  // WI
    {7, 4},  // WV
    {3, 3},  // WY
}};

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

ChoroplethSpec with_counts(ChoroplethSpec spec, const StateCounts& num,
                           const StateCounts& den) {
  spec.numerators = num;
  spec.denominators = den;
  return spec;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

ChoroplethSpec bin_quantile(const StateValues& values, std::size_t bins) {
  if (bins < 2) throw Error(ErrorCode::invalid_argument, "bin count must be >= 2");
  std::vector<double> sorted;
  for (const auto& v : values) {
    if (v) sorted.push_back(*v);
  }
  if (sorted.empty()) throw Error(ErrorCode::no_data, "every state is null; nothing to bin");
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();

  ChoroplethSpec spec;
  spec.values = values;
  spec.requested_bins = bins;
  spec.min = sorted.front();
  spec.max = sorted.back();
  for (std::size_t j = 1; j < bins; ++j) {
    std::size_t pos = (j * n + bins - 1) / bins;  // ceil(j * n / bins)
    if (pos >= n) continue;
    double edge = sorted[pos];
    if (edge <= spec.min) continue;
    if (!spec.bin_edges.empty() && edge <= spec.bin_edges.back()) continue;
    spec.bin_edges.push_back(edge);
  }
  spec.bin_count = spec.bin_edges.size() + 1;
  for (std::size_t s = 0; s < kStateCount; ++s) {
    if (!values[s]) continue;
    spec.bins[s] = static_cast<std::size_t>(
        std::upper_bound(spec.bin_edges.begin(), spec.bin_edges.end(), *values[s]) -
        spec.bin_edges.begin());
  }
  return spec;
}

ChoroplethSpec make_choropleth(const ProportionVector& map, std::size_t bins) {
  return with_counts(bin_quantile(map.values, bins), map.numerators, map.denominators);
}

ChoroplethSpec make_choropleth(const StateCounts& counts, std::size_t bins) {
  return bin_quantile(to_values(counts), bins);
}

nlohmann::json to_json(const ChoroplethSpec& spec) {
  nlohmann::json states = nlohmann::json::array();
  for (StateId s : all_states()) {
    auto i = s.index();
    nlohmann::json row;
    row["usps"] = s.usps();
    row["name"] = s.name();
    row["value"] = spec.values[i] ? nlohmann::json(*spec.values[i]) : nlohmann::json();
    row["bin"] = spec.bins[i] ? nlohmann::json(*spec.bins[i]) : nlohmann::json();
    if (spec.numerators) row["numerator"] = (*spec.numerators)[i];
    if (spec.denominators) row["denominator"] = (*spec.denominators)[i];
    states.push_back(std::move(row));
  }
  nlohmann::json legend;
  legend["min"] = spec.min;
  legend["max"] = spec.max;
  legend["bins"] = spec.bin_count;
  legend["requested_bins"] = spec.requested_bins;
  nlohmann::json colors = nlohmann::json::array();
  for (std::size_t b = 0; b < spec.bin_count; ++b) colors.push_back(bin_color(b, spec.bin_count));
  legend["colors"] = std::move(colors);

  nlohmann::json out;
  out["states"] = std::move(states);
  out["bin_edges"] = spec.bin_edges;
  out["legend"] = std::move(legend);
  return out;
}

nlohmann::json to_json(const CityDot& dot) {
  return {{"city", dot.city}, {"state", dot.state.usps()}, {"count", dot.count}};
}

std::string to_csv(const ChoroplethSpec& spec) {
  std::string out = "usps,value,bin\n";
  for (StateId s : all_states()) {
    auto i = s.index();
    out += s.usps();
    out += ',';
    if (spec.values[i]) out += format_double(*spec.values[i]);
    out += ',';
    if (spec.bins[i]) out += std::to_string(*spec.bins[i]);
    out += '\n';
  }
  return out;
}

std::string bin_color(std::size_t bin, std::size_t bin_count) {
  // Single-hue blue ramp from near-white to navy.
  constexpr double light[3] = {239, 243, 255};
  constexpr double dark[3] = {8, 48, 107};
  double t = bin_count <= 1 ? 0.5
                            : static_cast<double>(bin) / static_cast<double>(bin_count - 1);
  char buf[8];
  int rgb[3];
  for (int c = 0; c < 3; ++c) {
    rgb[c] = static_cast<int>(std::lround(light[c] + (dark[c] - light[c]) * t));
  }
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

TilePosition tile_position(StateId state) { return kTiles[state.index()]; }

std::string to_svg(const ChoroplethSpec& spec, std::string_view title,
                   const std::vector<CityDot>& cities) {
  const int map_w = kCols * (kTile + kGap);
  const int map_h = kRows * (kTile + kGap);
  const int legend_h = 60;
  const int width = map_w + 2 * kMargin;
  const int height = map_h + 2 * kMargin + legend_h + (title.empty() ? 0 : 24);
  const int top = kMargin + (title.empty() ? 0 : 24);

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" viewBox=\"0 0 " + std::to_string(width) + " " + std::to_string(height) +
         "\">\n";
  if (!title.empty()) svg += "<title>" + xml_escape(title) + "</title>\n";
  svg += "<defs>\n<pattern id=\"hatch\" width=\"6\" height=\"6\" "
         "patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">"
         "<rect width=\"6\" height=\"6\" fill=\"#ffffff\"/>"
         "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#999999\" stroke-width=\"2\"/>"
         "</pattern>\n<style type=\"text/css\"><![CDATA[\n";
  for (std::size_t b = 0; b < spec.bin_count; ++b) {
    svg += ".bin-" + std::to_string(b) + "{fill:" + bin_color(b, spec.bin_count) + "}\n";
  }
  svg += ".nodata{fill:url(#hatch)}\n"
         ".state{stroke:#ffffff;stroke-width:1}\n"
         ".label{font:11px sans-serif;text-anchor:middle;pointer-events:none}\n"
         ".city{fill:#d95f02;fill-opacity:0.7;stroke:#ffffff}\n"
         "]]></style>\n</defs>\n";
  if (!title.empty()) {
    svg += "<text x=\"" + std::to_string(kMargin) + "\" y=\"" + std::to_string(kMargin + 4) +
           "\" font-family=\"sans-serif\" font-size=\"16\">" + xml_escape(title) + "</text>\n";
  }

  svg += "<g id=\"states\">\n";
  for (StateId s : all_states()) {
    auto i = s.index();
    auto pos = tile_position(s);
    int x = kMargin + pos.col * (kTile + kGap);
    int y = top + pos.row * (kTile + kGap);
    std::string cls = spec.bins[i] ? "bin-" + std::to_string(*spec.bins[i]) : "nodata";
    std::string bin = spec.bins[i] ? std::to_string(*spec.bins[i]) : "";
    std::string value = spec.values[i] ? format_double(*spec.values[i]) : "no data";
    svg += "<rect class=\"state " + cls + "\" data-usps=\"" + std::string(s.usps()) +
           "\" data-bin=\"" + bin + "\" x=\"" + std::to_string(x) + "\" y=\"" +
           std::to_string(y) + "\" width=\"" + std::to_string(kTile) + "\" height=\"" +
           std::to_string(kTile) + "\"><title>" + xml_escape(s.name()) + ": " + value +
           "</title></rect>\n";
    bool dark = spec.bins[i] && spec.bin_count > 1 && *spec.bins[i] * 2 >= spec.bin_count;
    svg += "<text class=\"label\" x=\"" + std::to_string(x + kTile / 2) + "\" y=\"" +
           std::to_string(y + kTile / 2 + 4) + "\" fill=\"" + (dark ? "#ffffff" : "#222222") +
           "\">" + std::string(s.usps()) + "</text>\n";
  }
  svg += "</g>\n";

  if (!cities.empty()) {
    std::uint64_t biggest = 0;
    for (const auto& c : cities) biggest = std::max(biggest, c.count);
    svg += "<g id=\"cities\">\n";
    std::array<int, kStateCount> placed{};
    for (const auto& c : cities) {
      auto pos = tile_position(c.state);
      int slot = placed[c.state.index()]++;
      double r = 2.0 + 8.0 * std::sqrt(static_cast<double>(c.count) /
                                       static_cast<double>(std::max<std::uint64_t>(biggest, 1)));
      int cx = kMargin + pos.col * (kTile + kGap) + 8 + (slot % 3) * 16;
      int cy = top + pos.row * (kTile + kGap) + 8 + (slot / 3 % 3) * 16;
      svg += "<circle class=\"city\" cx=\"" + std::to_string(cx) + "\" cy=\"" +
             std::to_string(cy) + "\" r=\"" + format_double(std::round(r * 10) / 10) +
             "\"><title>" + xml_escape(c.city) + ", " + std::string(c.state.usps()) + ": " +
             std::to_string(c.count) + "</title></circle>\n";
    }
    svg += "</g>\n";
  }

  svg += "<g id=\"legend\">\n";
  const int ly = top + map_h + 10;
  const int sw = 40;
  for (std::size_t b = 0; b < spec.bin_count; ++b) {
    int lx = kMargin + static_cast<int>(b) * sw;
    svg += "<rect class=\"legend-swatch bin-" + std::to_string(b) + "\" x=\"" +
           std::to_string(lx) + "\" y=\"" + std::to_string(ly) + "\" width=\"" +
           std::to_string(sw) + "\" height=\"14\"/>\n";
  }
  for (std::size_t e = 0; e < spec.bin_edges.size(); ++e) {
    int lx = kMargin + static_cast<int>(e + 1) * sw;
    char label[32];
    std::snprintf(label, sizeof label, "%.3g", spec.bin_edges[e]);
    svg += "<text class=\"legend-edge\" x=\"" + std::to_string(lx) + "\" y=\"" +
           std::to_string(ly + 28) + "\" font-family=\"sans-serif\" font-size=\"9\" "
           "text-anchor=\"middle\">" + label + "</text>\n";
  }
  char range[96];
  std::snprintf(range, sizeof range, "min %.4g, max %.4g", spec.min, spec.max);
  svg += "<text x=\"" + std::to_string(kMargin) + "\" y=\"" + std::to_string(ly + 44) +
         "\" font-family=\"sans-serif\" font-size=\"10\">" + range + "</text>\n";
  int nx = kMargin + static_cast<int>(spec.bin_count) * sw + 20;
  svg += "<rect class=\"legend-swatch nodata\" x=\"" + std::to_string(nx) + "\" y=\"" +
         std::to_string(ly) + "\" width=\"" + std::to_string(sw) + "\" height=\"14\"/>\n";
  svg += "<text x=\"" + std::to_string(nx + sw + 6) + "\" y=\"" + std::to_string(ly + 11) +
         "\" font-family=\"sans-serif\" font-size=\"10\">no data</text>\n";
  svg += "</g>\n</svg>\n";
  return svg;
}

nlohmann::json state_tiles_topojson() {
  nlohmann::json arcs = nlohmann::json::array();
  nlohmann::json geometries = nlohmann::json::array();
  for (StateId s : all_states()) {
    auto pos = tile_position(s);
    int x = pos.col;
    int y = pos.row;
    arcs.push_back({{x, y}, {x + 1, y}, {x + 1, y + 1}, {x, y + 1}, {x, y}});
    auto ring = nlohmann::json::array({static_cast<int>(s.index())});
    geometries.push_back({{"type", "Polygon"},
                          {"id", s.usps()},
                          {"arcs", nlohmann::json::array({ring})},
                          {"properties", {{"name", s.name()}, {"usps", s.usps()}}}});
  }
  return {{"type", "Topology"},
          {"bbox", {0, 0, kCols, kRows}},
          {"objects", {{"states", {{"type", "GeometryCollection"}, {"geometries", geometries}}}}},
          {"arcs", arcs}};
}

}  // namespace geolex
