#include "geolex/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "geolex/error.hpp"
#include "geolex/hash.hpp"
#include "geolex/text.hpp"

namespace geolex {
namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    auto end = nl == std::string_view::npos ? text.size() : nl;
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return lines;
}

std::optional<CategoryId> parse_id(std::string_view s) {
  CategoryId id = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), id);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return id;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Pattern Pattern::parse(std::string_view entry, std::size_t line) {
  std::string folded = normalize_word(trim(entry));
  Pattern p;
  if (!folded.empty() && folded.back() == '*') {
    p.kind = Kind::prefix;
    folded.pop_back();
  }
  if (folded.empty()) throw FormatError("empty dictionary entry", line);
  if (folded.find('*') != std::string::npos) {
    throw FormatError("wildcard allowed only as a suffix: " + folded, line);
  }
  if (folded.find_first_of(" \t") != std::string::npos) {
    throw FormatError("multi-word entries are not supported: " + folded, line);
  }
  p.stem = std::move(folded);
  return p;
}

const Category* Lexicon::find(std::string_view category_name) const {
  for (const auto& c : categories) {
    if (c.name == category_name) return &c;
  }
  return nullptr;
}

const Category* Lexicon::find(CategoryId id) const {
  for (const auto& c : categories) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

Lexicon parse_dic(std::string_view text, std::string name) {
  Lexicon lex;
  lex.name = std::move(name);
  auto lines = split_lines(text);

  std::size_t i = 0;
  while (i < lines.size() && trim(lines[i]).empty()) ++i;
  if (i == lines.size()) throw FormatError("empty lexicon");
  if (trim(lines[i]) != "%") {
    throw FormatError("expected '%' opening the category header", i + 1);
  }

  const std::size_t open_line = i + 1;
  std::unordered_map<CategoryId, std::size_t> by_id;
  std::vector<std::size_t> header_line;
  bool closed = false;
  for (++i; i < lines.size(); ++i) {
    auto line = trim(lines[i]);
    if (line.empty()) continue;
    if (line == "%") {
      closed = true;
      ++i;
      break;
    }
    auto split = line.find_first_of(" \t");
    if (split == std::string_view::npos) {
      throw FormatError("header line needs 'id name'", i + 1);
    }
    auto id = parse_id(line.substr(0, split));
    if (!id) throw FormatError("bad category id", i + 1);
    std::string cat_name(trim(line.substr(split + 1)));
    if (by_id.contains(*id)) {
      throw FormatError("duplicate category id " + std::to_string(*id), i + 1);
    }
    if (lex.find(cat_name)) {
      throw FormatError("duplicate category name " + cat_name, i + 1);
    }
    by_id.emplace(*id, lex.categories.size());
    header_line.push_back(i + 1);
    lex.categories.push_back(Category{*id, std::move(cat_name), {}});
  }
  if (!closed) throw FormatError("category header is not closed by '%'", open_line);
  if (lex.categories.empty()) throw FormatError("empty lexicon");

  for (; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (trim(line).empty()) continue;
    line = trim(line);

    // The stem ends at the first tab, else at the first double space, else
    // at the first single space.
    std::size_t cut = line.find('\t');
    if (cut == std::string_view::npos) cut = line.find("  ");
    if (cut == std::string_view::npos) cut = line.find(' ');
    if (cut == std::string_view::npos) {
      throw FormatError("entry has no category ids", i + 1);
    }
    Pattern pattern = Pattern::parse(line.substr(0, cut), i + 1);
    auto fields = split_ws(line.substr(cut));
    if (fields.empty()) throw FormatError("entry has no category ids", i + 1);
    for (auto field : fields) {
      auto id = parse_id(field);
      if (!id) {
        throw FormatError("bad category id '" + std::string(field) + "'", i + 1);
      }
      auto it = by_id.find(*id);
      if (it == by_id.end()) {
        throw FormatError("unknown category id " + std::to_string(*id), i + 1);
      }
      lex.categories[it->second].patterns.insert(pattern);
    }
  }

  for (std::size_t k = 0; k < lex.categories.size(); ++k) {
    if (lex.categories[k].patterns.empty()) {
      throw FormatError("category " + lex.categories[k].name + " has no entries",
                        header_line[k]);
    }
  }
  return lex;
}

std::string serialize_dic(const Lexicon& lexicon) {
  std::string out = "%\n";
  std::map<std::string, std::vector<CategoryId>> entries;
  for (const auto& c : lexicon.categories) {
    out += std::to_string(c.id) + "\t" + c.name + "\n";
    for (const auto& p : c.patterns) {
      auto key = p.stem + (p.kind == Pattern::Kind::prefix ? "*" : "");
      entries[key].push_back(c.id);
    }
  }
  out += "%\n";
  for (auto& [key, ids] : entries) {
    std::sort(ids.begin(), ids.end());
    out += key;
    for (auto id : ids) out += "\t" + std::to_string(id);
    out += "\n";
  }
  return out;
}

Category parse_theme_list(std::string_view text, std::string name, CategoryId id) {
  Category cat{id, std::move(name), {}};
  auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto line = lines[i];
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    cat.patterns.insert(Pattern::parse(line, i + 1));
  }
  if (cat.patterns.empty()) {
    throw FormatError("theme list '" + cat.name + "' is empty");
  }
  return cat;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    Lexicon lex;
    lex.name = path.filename().string();
    if (lex.name.empty()) lex.name = path.parent_path().filename().string();
    CategoryId next = 1;
    for (const auto& f : files) {
      try {
        lex.categories.push_back(
            parse_theme_list(read_file(f), f.stem().string(), next++));
      } catch (const FormatError& e) {
        throw FormatError(f.string() + ": " + e.what());
      }
    }
    if (lex.categories.empty()) {
      throw FormatError(path.string() + ": no theme lists found");
    }
    return lex;
  }
  try {
    return parse_dic(read_file(path), path.stem().string());
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::map<std::string, Lexicon> load_lexicon_dir(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::io, "not a directory: " + dir.string());
  }
  std::map<std::string, Lexicon> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    bool dic = entry.is_regular_file() && entry.path().extension() == ".dic";
    if (!dic && !entry.is_directory()) continue;
    auto lex = load_lexicon(entry.path());
    auto key = lex.name;
    out.emplace(std::move(key), std::move(lex));
  }
  return out;
}

Matcher::Matcher(const Lexicon& lexicon) : lexicon_name_(lexicon.name) {
  // Build a pointer trie, then flatten it breadth-first.
  struct Build {
    std::map<unsigned char, std::size_t> children;
    std::vector<CategoryId> exact;
    std::vector<CategoryId> prefix;
  };
  std::vector<Build> tmp(1);
  for (const auto& cat : lexicon.categories) {
    categories_.push_back({cat.id, cat.name});
    for (const auto& p : cat.patterns) {
      std::size_t node = 0;
      for (char ch : p.stem) {
        auto byte = static_cast<unsigned char>(ch);
        auto it = tmp[node].children.find(byte);
        if (it == tmp[node].children.end()) {
          tmp.emplace_back();
          it = tmp[node].children.emplace(byte, tmp.size() - 1).first;
        }
        node = it->second;
      }
      (p.kind == Pattern::Kind::exact ? tmp[node].exact : tmp[node].prefix)
          .push_back(cat.id);
    }
  }

  std::vector<std::uint32_t> order{0};
  std::vector<std::uint32_t> flat_of(tmp.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    flat_of[order[k]] = static_cast<std::uint32_t>(k);
    for (auto& [byte, c] : tmp[order[k]].children) {
      order.push_back(static_cast<std::uint32_t>(c));
    }
  }
  nodes_.resize(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    auto& b = tmp[order[k]];
    auto& n = nodes_[k];
    auto add_ids = [&](std::vector<CategoryId>& ids, std::uint32_t& begin,
                       std::uint32_t& end) {
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      begin = static_cast<std::uint32_t>(ids_.size());
      ids_.insert(ids_.end(), ids.begin(), ids.end());
      end = static_cast<std::uint32_t>(ids_.size());
    };
    add_ids(b.exact, n.exact_begin, n.exact_end);
    add_ids(b.prefix, n.prefix_begin, n.prefix_end);
    n.edge_begin = static_cast<std::uint32_t>(edges_.size());
    for (auto& [byte, c] : b.children) edges_.push_back({byte, flat_of[c]});
    n.edge_end = static_cast<std::uint32_t>(edges_.size());
  }

  root_table_.assign(256, 0);
  for (auto e = nodes_[0].edge_begin; e < nodes_[0].edge_end; ++e) {
    root_table_[edges_[e].byte] = edges_[e].child;
  }
  fingerprint_ = fnv1a(serialize_dic(lexicon), fnv1a(lexicon.name));
}

std::uint32_t Matcher::child(std::uint32_t node, unsigned char byte) const {
  if (node == 0) return root_table_[byte];
  const auto& n = nodes_[node];
  auto first = edges_.begin() + n.edge_begin;
  auto last = edges_.begin() + n.edge_end;
  auto it = std::lower_bound(first, last, byte,
                             [](const Edge& e, unsigned char b) { return e.byte < b; });
  return (it != last && it->byte == byte) ? it->child : 0;
}

void Matcher::match_into(std::string_view token, std::vector<CategoryId>& out) const {
  out.clear();
  std::uint32_t node = 0;
  for (char ch : token) {
    node = child(node, static_cast<unsigned char>(ch));
    if (node == 0) break;
    const auto& n = nodes_[node];
    out.insert(out.end(), ids_.begin() + n.prefix_begin, ids_.begin() + n.prefix_end);
  }
  if (node != 0 || token.empty()) {
    const auto& n = nodes_[node];
    out.insert(out.end(), ids_.begin() + n.exact_begin, ids_.begin() + n.exact_end);
  }
  if (out.size() > 1) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
}

std::vector<CategoryId> Matcher::match(std::string_view token) const {
  std::vector<CategoryId> out;
  match_into(token, out);
  return out;
}

std::optional<CategoryId> Matcher::find(std::string_view category_name) const {
  for (const auto& c : categories_) {
    if (c.name == category_name) return c.id;
  }
  return std::nullopt;
}

const std::string& Matcher::name_of(CategoryId id) const {
  for (const auto& c : categories_) {
    if (c.id == id) return c.name;
  }
  throw Error(ErrorCode::not_found, "unknown category id " + std::to_string(id));
}

bool Matcher::contains(CategoryId id) const {
  return std::any_of(categories_.begin(), categories_.end(),
                     [id](const CategoryInfo& c) { return c.id == id; });
}

}  // namespace geolex
