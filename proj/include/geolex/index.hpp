#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "geolex/ingest.hpp"
#include "geolex/states.hpp"

namespace geolex {

/// Integer counts, one slot per state in StateId order.
using StateCounts = std::array<std::uint64_t, kStateCount>;

struct GenderTally {
  std::uint64_t male = 0;
  std::uint64_t female = 0;
  std::uint64_t reported = 0;

  friend bool operator==(const GenderTally&, const GenderTally&) = default;
};

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

template <class V>
using StringMap = std::unordered_map<std::string, V, StringHash, std::equal_to<>>;

struct CityKey {
  std::string city;
  StateId state;

  friend auto operator<=>(const CityKey&, const CityKey&) = default;
  friend bool operator==(const CityKey&, const CityKey&) = default;
};

/// Warning counters accumulated while building.
struct BuildWarnings {
  std::uint64_t orphan_posts = 0;
  std::uint64_t duplicate_posts = 0;
  std::uint64_t truncated_tokens = 0;

  friend bool operator==(const BuildWarnings&, const BuildWarnings&) = default;
};

/// All per-state counts the maps and statistics read from. Immutable once
/// built; safe for concurrent readers.
struct CorpusIndex {
  StateCounts token_totals{};
  StringMap<StateCounts> word_counts;
  StateCounts user_counts{};
  std::array<GenderTally, kStateCount> gender_counts{};
  StringMap<StateCounts> industry_counts;
  std::map<CityKey, std::uint64_t> city_counts;
  std::uint64_t doc_count = 0;
  std::unordered_set<std::string, StringHash, std::equal_to<>> user_ids;
  BuildWarnings warnings;

  std::uint64_t total_tokens() const;
  std::uint64_t total_users() const;

  /// Order-independent hash of the vocabulary.
  std::uint64_t vocabulary_fingerprint() const;

  /// Throws Error(corrupt_index) if any count invariant is violated.
  void check_invariants() const;

  friend bool operator==(const CorpusIndex&, const CorpusIndex&) = default;
};

/// Streaming builder. Feed every profile before the posts that belong to it;
/// a post whose blog has no known owner is skipped and counted.
class IndexBuilder {
 public:
  /// Throws Error(duplicate_user) or Error(duplicate_blog).
  void add_profile(const Profile& profile);
  /// Returns false when the post was skipped (orphan or duplicate).
  bool add_post(const TokenizedPost& post);
  void add_truncated(std::uint64_t n) { index_.warnings.truncated_tokens += n; }

  CorpusIndex finish() &&;

 private:
  CorpusIndex index_;
  std::unordered_map<std::string, StateId, StringHash, std::equal_to<>> blog_owner_;
  std::unordered_set<std::string> seen_posts_;
};

CorpusIndex build_index(std::span<const Profile> profiles,
                        std::span<const TokenizedPost> posts);

/// Elementwise sum. Throws Error(overlapping_users) if a user id is in both.
CorpusIndex merge(const CorpusIndex& a, const CorpusIndex& b);

inline constexpr std::uint32_t kIndexFormatVersion = 1;

void save_index(const CorpusIndex& index, const std::filesystem::path& path);
std::string serialize_index(const CorpusIndex& index);

/// Throws Error(corrupt_index) on bad magic, size, checksum, or contents and
/// Error(unsupported_version) on a version other than kIndexFormatVersion.
CorpusIndex load_index(const std::filesystem::path& path);
CorpusIndex deserialize_index(std::string_view bytes);

}  // namespace geolex
