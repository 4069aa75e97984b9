#include <algorithm>
#include <cmath>
#include <random>
#include <regex>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "geolex/choropleth.hpp"
#include "geolex/error.hpp"

namespace geolex {
namespace {

StateValues full(auto fn) {
  StateValues v{};
  for (std::size_t s = 0; s < kStateCount; ++s) v[s] = fn(s);
  return v;
}

TEST(BinQuantile, AllEqualIsOneBin) {
  auto spec = bin_quantile(full([](std::size_t) { return 0.25; }), 7);
  EXPECT_EQ(spec.bin_count, 1u);
  EXPECT_TRUE(spec.bin_edges.empty());
  for (const auto& b : spec.bins) EXPECT_EQ(b, 0u);
}

TEST(BinQuantile, FiftyIncreasingIntoFive) {
  auto spec = bin_quantile(full([](std::size_t s) { return static_cast<double>(s); }), 5);
  EXPECT_EQ(spec.bin_count, 5u);
  EXPECT_EQ(spec.bin_edges, (std::vector<double>{10, 20, 30, 40}));
  std::array<int, 5> sizes{};
  for (const auto& b : spec.bins) ++sizes[*b];
  EXPECT_EQ(sizes, (std::array<int, 5>{10, 10, 10, 10, 10}));
  EXPECT_EQ(spec.min, 0.0);
  EXPECT_EQ(spec.max, 49.0);
  EXPECT_EQ(spec.requested_bins, 5u);
}

TEST(BinQuantile, NullsAndErrors) {
  StateValues v{};
  v[3] = 1.0;
  v[7] = 2.0;
  auto spec = bin_quantile(v, 2);
  EXPECT_FALSE(spec.bins[0]);
  EXPECT_EQ(spec.bins[3], 0u);
  EXPECT_EQ(spec.bins[7], 1u);
  EXPECT_THROW(bin_quantile(v, 1), Error);
  try {
    bin_quantile(StateValues{}, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::no_data);
  }
}

// Oracle: sort, cut into B slices at ceil(j*n/B), find the lowest slice
// whose start value is <= x from the top, then renumber used bins densely.
std::vector<std::size_t> oracle_bins(const std::vector<double>& values, std::size_t bins) {
  auto sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  std::vector<std::size_t> raw(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t slice = 0;
    for (std::size_t j = 1; j < bins; ++j) {
      std::size_t pos = (j * n + bins - 1) / bins;
      if (pos < n && sorted[pos] <= values[i] && sorted[pos] > sorted[0]) slice = j;
    }
    raw[i] = slice;
  }
  // Distinct starting values define the real bins.
  std::vector<double> starts;
  for (std::size_t j = 1; j < bins; ++j) {
    std::size_t pos = (j * n + bins - 1) / bins;
    if (pos < n && sorted[pos] > sorted[0]) starts.push_back(sorted[pos]);
  }
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = static_cast<std::size_t>(std::upper_bound(starts.begin(), starts.end(), values[i]) -
                                      starts.begin());
  return out;
}

TEST(BinQuantile, MatchesSortOracleAndIsMonotone) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 1000; ++t) {
    std::size_t bins = 2 + rng() % 8;
    StateValues v{};
    for (auto& x : v)
      if (rng() % 6) x = static_cast<double>(rng() % (t % 2 ? 5 : 1000)) / 7.0;
    if (std::none_of(v.begin(), v.end(), [](auto& x) { return x.has_value(); })) continue;
    auto spec = bin_quantile(v, bins);
    std::vector<double> present;
    std::vector<std::size_t> got;
    for (std::size_t s = 0; s < kStateCount; ++s) {
      ASSERT_EQ(spec.bins[s].has_value(), v[s].has_value());
      if (v[s]) {
        present.push_back(*v[s]);
        got.push_back(*spec.bins[s]);
      }
    }
    ASSERT_EQ(got, oracle_bins(present, bins));
    ASSERT_LE(spec.bin_count, bins);
    for (std::size_t i = 0; i < present.size(); ++i)
      for (std::size_t j = 0; j < present.size(); ++j) {
        if (present[i] <= present[j]) ASSERT_LE(got[i], got[j]);
        if (present[i] == present[j]) ASSERT_EQ(got[i], got[j]);
      }
  }
}

ChoroplethSpec sample_spec() {
  StateValues v{};
  std::mt19937_64 rng(44);
  for (auto& x : v)
    if (rng() % 5) x = static_cast<double>(rng() % 100) / 100.0;
  return bin_quantile(v, 5);
}

TEST(Render, SvgAndJsonAgree) {
  auto spec = sample_spec();
  auto svg = to_svg(spec, "Lake & <friends>");
  auto j = to_json(spec);
  ASSERT_EQ(j["states"].size(), kStateCount);

  std::regex tile(R"re(data-usps="([A-Z]{2})" data-bin="([0-9]+|)")re");
  std::map<std::string, std::string> svg_bins;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), tile); it != std::sregex_iterator(); ++it)
    svg_bins[(*it)[1]] = (*it)[2];
  ASSERT_EQ(svg_bins.size(), kStateCount);
  for (const auto& s : j["states"]) {
    auto usps = s["usps"].get<std::string>();
    std::string expected = s["bin"].is_null() ? "" : std::to_string(s["bin"].get<int>());
    EXPECT_EQ(svg_bins[usps], expected) << usps;
  }
  EXPECT_NE(svg.find("Lake &amp; &lt;friends&gt;"), std::string::npos);
  EXPECT_TRUE(svg.starts_with("<?xml") || svg.starts_with("<svg"));
  EXPECT_EQ(j["legend"]["colors"].size(), spec.bin_count);
}

TEST(Render, CsvParsesBack) {
  auto spec = sample_spec();
  std::istringstream in(to_csv(spec));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "usps,value,bin");
  std::size_t s = 0;
  while (std::getline(in, line)) {
    ASSERT_LT(s, kStateCount);
    auto c1 = line.find(','), c2 = line.rfind(',');
    EXPECT_EQ(line.substr(0, c1), all_states()[s].usps());
    auto value = line.substr(c1 + 1, c2 - c1 - 1);
    auto bin = line.substr(c2 + 1);
    if (spec.values[s]) {
      EXPECT_EQ(std::stod(value), *spec.values[s]);
      EXPECT_EQ(std::stoul(bin), *spec.bins[s]);
    } else {
      EXPECT_TRUE(value.empty());
      EXPECT_TRUE(bin.empty());
    }
    ++s;
  }
  EXPECT_EQ(s, kStateCount);
}

TEST(Render, ColorsDarkenWithBin) {
  auto lum = [](const std::string& hex) {
    int r = std::stoi(hex.substr(1, 2), nullptr, 16), g = std::stoi(hex.substr(3, 2), nullptr, 16),
        b = std::stoi(hex.substr(5, 2), nullptr, 16);
    return 0.2126 * r + 0.7152 * g + 0.0722 * b;
  };
  for (std::size_t count = 1; count <= 9; ++count)
    for (std::size_t b = 1; b < count; ++b)
      EXPECT_LT(lum(bin_color(b, count)), lum(bin_color(b - 1, count)));
}

TEST(Render, CountsAndTopology) {
  StateCounts counts{};
  counts[4] = 5;
  counts[42] = 3;
  auto spec = make_choropleth(counts, 3);
  EXPECT_EQ(spec.values[4], 5.0);
  EXPECT_EQ(spec.values[0], 0.0);
  auto topo = state_tiles_topojson();
  EXPECT_EQ(topo["type"], "Topology");
  EXPECT_EQ(topo["objects"]["states"]["geometries"].size(), kStateCount);
  std::set<std::pair<int, int>> cells;
  for (StateId s : all_states()) cells.insert({tile_position(s).col, tile_position(s).row});
  EXPECT_EQ(cells.size(), kStateCount);
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(0.3), "0.3");
}

}  // namespace
}  // namespace geolex
