#include "geolex/analytics.hpp"

#include <algorithm>

#include "geolex/error.hpp"
#include "geolex/text.hpp"
#include "geolex/tokenize.hpp"

namespace geolex {

ProportionVector ProportionVector::from_counts(const StateCounts& numerators,
                                               const StateCounts& denominators) {
  ProportionVector p;
  p.numerators = numerators;
  p.denominators = denominators;
  for (std::size_t s = 0; s < kStateCount; ++s) {
    if (denominators[s] != 0) {
      p.values[s] = static_cast<double>(numerators[s]) /
                    static_cast<double>(denominators[s]);
    }
  }
  return p;
}

StateValues to_values(const StateCounts& counts) {
  StateValues out{};
  for (std::size_t s = 0; s < kStateCount; ++s) {
    out[s] = static_cast<double>(counts[s]);
  }
  return out;
}

ProportionVector word_map(const CorpusIndex& index, std::string_view word) {
  // Fold and cut the query the same way indexed tokens were.
  auto key = normalize_word(trim(word));
  key.resize(truncate_chars(key, kMaxTokenChars).size());

  auto it = index.word_counts.find(key);
  StateCounts numerators{};
  if (it != index.word_counts.end()) numerators = it->second;
  return ProportionVector::from_counts(numerators, index.token_totals);
}

ResolvedCategories resolve_categories(const CorpusIndex& index, const Matcher& matcher) {
  ResolvedCategories out;
  for (const auto& c : matcher.categories()) out.numerators[c.id] = StateCounts{};
  std::vector<CategoryId> hits;
  for (const auto& [word, counts] : index.word_counts) {
    matcher.match_into(word, hits);
    for (auto id : hits) {
      auto& dst = out.numerators[id];
      for (std::size_t s = 0; s < kStateCount; ++s) dst[s] += counts[s];
    }
  }
  return out;
}

ProportionVector category_map(const CorpusIndex& index,
                              const ResolvedCategories& resolved,
                              CategoryId category) {
  auto it = resolved.numerators.find(category);
  if (it == resolved.numerators.end()) {
    throw Error(ErrorCode::not_found, "unknown category id " + std::to_string(category));
  }
  return ProportionVector::from_counts(it->second, index.token_totals);
}

ProportionVector category_map(const CorpusIndex& index, const Matcher& matcher,
                              CategoryId category) {
  if (!matcher.contains(category)) {
    throw Error(ErrorCode::not_found, "unknown category id " + std::to_string(category));
  }
  StateCounts numerators{};
  std::vector<CategoryId> hits;
  for (const auto& [word, counts] : index.word_counts) {
    matcher.match_into(word, hits);
    if (std::binary_search(hits.begin(), hits.end(), category)) {
      for (std::size_t s = 0; s < kStateCount; ++s) numerators[s] += counts[s];
    }
  }
  return ProportionVector::from_counts(numerators, index.token_totals);
}

std::shared_ptr<const ResolvedCategories> CategoryCache::get(
    const CorpusIndex& index, const Matcher& matcher,
    std::uint64_t vocabulary_fingerprint) {
  auto key = std::make_pair(matcher.fingerprint(), vocabulary_fingerprint);
  {
    std::lock_guard lock(mu_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  auto resolved =
      std::make_shared<const ResolvedCategories>(resolve_categories(index, matcher));
  std::lock_guard lock(mu_);
  entries_[key] = resolved;
  return resolved;
}

std::size_t CategoryCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

FacetQuery FacetQuery::from_parts(std::string_view kind, std::string_view value) {
  FacetQuery q;
  auto k = ascii_lower(trim(kind));
  if (k == "gender") {
    q.kind = Kind::gender;
    q.value = ascii_lower(trim(value));
    if (q.value != "male" && q.value != "female") {
      throw Error(ErrorCode::invalid_argument,
                  "gender facet must be male or female, got '" + std::string(value) + "'");
    }
  } else if (k == "industry") {
    q.kind = Kind::industry;
    q.value = normalize_word(collapse_spaces(value));
    if (q.value.empty()) throw Error(ErrorCode::invalid_argument, "empty industry label");
  } else {
    throw Error(ErrorCode::invalid_argument, "unknown facet kind '" + std::string(kind) + "'");
  }
  return q;
}

FacetQuery FacetQuery::parse(std::string_view spec) {
  auto eq = spec.find('=');
  if (eq == std::string_view::npos) {
    throw Error(ErrorCode::invalid_argument, "facet must look like kind=value");
  }
  return from_parts(spec.substr(0, eq), spec.substr(eq + 1));
}

ProportionVector facet_map(const CorpusIndex& index, const FacetQuery& facet) {
  if (facet.kind == FacetQuery::Kind::gender) {
    StateCounts num{};
    StateCounts den{};
    bool male = facet.value == "male";
    for (std::size_t s = 0; s < kStateCount; ++s) {
      const auto& g = index.gender_counts[s];
      num[s] = male ? g.male : g.female;
      den[s] = g.reported;
    }
    return ProportionVector::from_counts(num, den);
  }
  auto it = index.industry_counts.find(facet.value);
  if (it == index.industry_counts.end()) {
    throw Error(ErrorCode::not_found, "unknown industry '" + facet.value + "'");
  }
  return ProportionVector::from_counts(it->second, index.user_counts);
}

StateCounts density_map(const CorpusIndex& index) { return index.user_counts; }

std::vector<CityDot> city_density(const CorpusIndex& index, std::uint64_t min_count) {
  if (min_count < 1) throw Error(ErrorCode::invalid_argument, "min_count must be >= 1");
  std::vector<CityDot> out;
  for (const auto& [key, n] : index.city_counts) {
    if (n >= min_count) out.push_back({key.city, key.state, n});
  }
  std::sort(out.begin(), out.end(), [](const CityDot& a, const CityDot& b) {
    if (a.count != b.count) return a.count > b.count;
    if (a.city != b.city) return a.city < b.city;
    return a.state < b.state;
  });
  return out;
}

}  // namespace geolex
