#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "geolex/index.hpp"
#include "geolex/lexicon.hpp"

namespace geolex {

/// One optional value per state; nullopt means "no data".
using StateValues = std::array<std::optional<double>, kStateCount>;

/// numerator / denominator per state; null exactly where the denominator
/// is zero.
struct ProportionVector {
  StateValues values{};
  StateCounts numerators{};
  StateCounts denominators{};

  static ProportionVector from_counts(const StateCounts& numerators,
                                      const StateCounts& denominators);

  friend bool operator==(const ProportionVector&, const ProportionVector&) = default;
};

StateValues to_values(const StateCounts& counts);

/// Relative frequency of `word` per state. Unknown words give all zeros.
ProportionVector word_map(const CorpusIndex& index, std::string_view word);

/// Per-category numerators, resolved once against an index vocabulary.
struct ResolvedCategories {
  std::map<CategoryId, StateCounts> numerators;
};

ResolvedCategories resolve_categories(const CorpusIndex& index, const Matcher& matcher);

/// Share of tokens per state that fall in the category. Throws
/// Error(not_found) for an id the matcher does not know.
ProportionVector category_map(const CorpusIndex& index, const Matcher& matcher,
                              CategoryId category);
ProportionVector category_map(const CorpusIndex& index,
                              const ResolvedCategories& resolved,
                              CategoryId category);

/// Caches ResolvedCategories per (lexicon fingerprint, vocabulary
/// fingerprint). Concurrent fills of the same key may race; the last writer
/// wins and all writers produce identical values.
class CategoryCache {
 public:
  std::shared_ptr<const ResolvedCategories> get(const CorpusIndex& index,
                                                const Matcher& matcher,
                                                std::uint64_t vocabulary_fingerprint);
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::map<std::pair<std::uint64_t, std::uint64_t>,
           std::shared_ptr<const ResolvedCategories>>
      entries_;
};

struct FacetQuery {
  enum class Kind { gender, industry };
  Kind kind = Kind::gender;
  std::string value;

  /// "gender=male", "industry=tourism". Throws Error(invalid_argument).
  static FacetQuery parse(std::string_view spec);
  static FacetQuery from_parts(std::string_view kind, std::string_view value);
};

/// Gender shares use the users who reported a gender as denominator;
/// industry shares use all users. Throws Error(not_found) for unknown
/// labels.
ProportionVector facet_map(const CorpusIndex& index, const FacetQuery& facet);

/// User counts per state.
StateCounts density_map(const CorpusIndex& index);

struct CityDot {
  std::string city;
  StateId state;
  std::uint64_t count = 0;

  friend bool operator==(const CityDot&, const CityDot&) = default;
};

inline constexpr std::uint64_t kDefaultCityThreshold = 100;

/// Cities with at least `min_count` users, by count descending then city
/// name ascending (then state). Throws Error(invalid_argument) if
/// min_count < 1.
std::vector<CityDot> city_density(const CorpusIndex& index,
                                  std::uint64_t min_count = kDefaultCityThreshold);

}  // namespace geolex
