#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geolex/analytics.hpp"
#include "geolex/lexicon.hpp"

namespace geolex {

struct CorrelationResult {
  double rho = 0.0;
  /// Two-sided; present only when n >= 4.
  std::optional<double> p_value;
  /// Number of states with a value on both sides.
  std::size_t n = 0;

  friend bool operator==(const CorrelationResult&, const CorrelationResult&) = default;
};

inline constexpr std::size_t kMinSampleForPValue = 4;

/// 1-based ranks; tied values share the mean of the ranks they span.
/// Throws Error(insufficient_data) on empty input.
std::vector<double> rank_with_ties(std::span<const double> values);

/// Spearman's rho as the Pearson correlation of tie-averaged ranks, with the
/// two-sided p-value of t = rho * sqrt((n - 2) / (1 - rho^2)) on n - 2
/// degrees of freedom (p = 0 when |rho| = 1).
///
/// Throws Error(invalid_argument) on length mismatch, Error(insufficient_data)
/// when n < 2 and Error(undefined_correlation) when either side has no rank
/// variance.
CorrelationResult spearman(std::span<const double> x, std::span<const double> y);

/// Pairwise deletion: states null on either side are dropped first.
CorrelationResult spearman(std::span<const std::optional<double>> x,
                           std::span<const std::optional<double>> y);

double spearman_p_value(double rho, std::size_t n);

struct CategoryComparison {
  std::string a;
  std::string b;
  ProportionVector map_a;
  ProportionVector map_b;
  CorrelationResult result;
};

/// Throws Error(not_found) for unknown category names.
CategoryComparison compare_categories(const CorpusIndex& index, const Matcher& matcher,
                                      std::string_view a, std::string_view b);
CategoryComparison compare_categories(const CorpusIndex& index, const Matcher& matcher,
                                      const ResolvedCategories& resolved,
                                      std::string_view a, std::string_view b);

struct CategoryPairReport {
  /// a < b by name.
  std::string a;
  std::string b;
  CorrelationResult result;

  friend bool operator==(const CategoryPairReport&, const CategoryPairReport&) = default;
};

struct ExtremesReport {
  std::vector<CategoryPairReport> top;
  std::vector<CategoryPairReport> bottom;
  std::size_t pairs_evaluated = 0;
  /// Pairs dropped because their correlation was undefined.
  std::size_t pairs_excluded = 0;
};

/// Spearman over every unordered category pair; the k highest and k lowest
/// rho, ties broken by (a, b) name order. The result does not depend on
/// `workers`. Throws Error(insufficient_data) with fewer than two categories
/// or no defined pair.
ExtremesReport correlation_extremes(const CorpusIndex& index, const Matcher& matcher,
                                    std::size_t k = 3, unsigned workers = 0);
ExtremesReport correlation_extremes(const CorpusIndex& index, const Matcher& matcher,
                                    const ResolvedCategories& resolved,
                                    std::size_t k = 3, unsigned workers = 0);

/// `usps,value` lines (an optional header row, blank values = no data).
/// State names are accepted in place of codes. Throws FormatError on
/// unknown states, duplicates, or unparsable values.
StateValues parse_state_csv(std::string_view text);

}  // namespace geolex
