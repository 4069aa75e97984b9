#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace geolex {

using CategoryId = std::uint32_t;

struct Pattern {
  enum class Kind : std::uint8_t { exact, prefix };

  Kind kind = Kind::exact;
  std::string stem;

  /// Parses one dictionary entry ("dollar", "remunerat*"). Case-folds; a
  /// trailing '*' makes a prefix pattern. Throws FormatError on empty stems,
  /// infix wildcards and multi-word entries.
  static Pattern parse(std::string_view entry, std::size_t line = 0);

  bool matches(std::string_view token) const {
    return kind == Kind::exact ? token == stem : token.starts_with(stem);
  }

  friend auto operator<=>(const Pattern&, const Pattern&) = default;
  friend bool operator==(const Pattern&, const Pattern&) = default;
};

struct Category {
  CategoryId id = 0;
  std::string name;
  std::set<Pattern> patterns;

  friend bool operator==(const Category&, const Category&) = default;
};

struct Lexicon {
  std::string name;
  std::vector<Category> categories;

  const Category* find(std::string_view category_name) const;
  const Category* find(CategoryId id) const;

  friend bool operator==(const Lexicon&, const Lexicon&) = default;
};

/// LIWC-style `.dic`: a `%`-delimited header of `id name` lines, then
/// `stem<TAB>id[<TAB>id...]` entries (runs of two or more spaces also
/// separate fields).
Lexicon parse_dic(std::string_view text, std::string name = {});

/// Canonical `.dic` text; parse_dic(serialize_dic(x)) == x.
std::string serialize_dic(const Lexicon& lexicon);

/// One entry per line, `#` starts a comment.
Category parse_theme_list(std::string_view text, std::string name,
                          CategoryId id = 1);

/// A `.dic` file, or a directory of theme lists (`*.txt`, one category per
/// file, ids assigned in file-name order). The lexicon is named after the
/// file stem or directory name.
Lexicon load_lexicon(const std::filesystem::path& path);

/// Every `.dic` file and theme-list subdirectory directly under `dir`.
std::map<std::string, Lexicon> load_lexicon_dir(const std::filesystem::path& dir);

struct CategoryInfo {
  CategoryId id;
  std::string name;
};

/// Byte trie over all pattern stems. Immutable after construction.
class Matcher {
 public:
  explicit Matcher(const Lexicon& lexicon);

  /// Replaces `out` with the sorted, duplicate-free categories of `token`.
  void match_into(std::string_view token, std::vector<CategoryId>& out) const;
  std::vector<CategoryId> match(std::string_view token) const;

  const std::string& lexicon_name() const noexcept { return lexicon_name_; }
  const std::vector<CategoryInfo>& categories() const noexcept { return categories_; }
  std::optional<CategoryId> find(std::string_view category_name) const;
  const std::string& name_of(CategoryId id) const;
  bool contains(CategoryId id) const;

  /// Stable hash of the canonical lexicon text.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

 private:
  struct Node {
    std::uint32_t edge_begin = 0;
    std::uint32_t edge_end = 0;
    std::uint32_t exact_begin = 0;
    std::uint32_t exact_end = 0;
    std::uint32_t prefix_begin = 0;
    std::uint32_t prefix_end = 0;
  };
  struct Edge {
    unsigned char byte;
    std::uint32_t child;
  };

  std::uint32_t child(std::uint32_t node, unsigned char byte) const;

  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<CategoryId> ids_;
  std::vector<std::uint32_t> root_table_;
  std::vector<CategoryInfo> categories_;
  std::string lexicon_name_;
  std::uint64_t fingerprint_ = 0;
};

inline Matcher compile(const Lexicon& lexicon) { return Matcher(lexicon); }

inline std::vector<CategoryId> match_token(const Matcher& matcher,
                                           std::string_view token) {
  return matcher.match(token);
}

}  // namespace geolex
