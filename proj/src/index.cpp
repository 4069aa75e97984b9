#include "geolex/index.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <sstream>

#include <zlib.h>

#include "geolex/error.hpp"
#include "geolex/hash.hpp"
#include "geolex/text.hpp"
#include "geolex/tokenize.hpp"

namespace geolex {
namespace {

constexpr char kMagic[8] = {'G', 'E', 'O', 'L', 'X', 'I', 'D', 'X'};
constexpr std::size_t kHeaderSize = 24;
constexpr std::size_t kTrailerSize = 4;

void add_into(StateCounts& dst, const StateCounts& src) {
  for (std::size_t s = 0; s < kStateCount; ++s) dst[s] += src[s];
}

class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.append(s);
  }
  void counts(const StateCounts& c) {
    for (auto v : c) u64(v);
  }
  std::string& bytes() { return out_; }

 private:
  std::string out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view data) : data_(data) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(take(1)[0]); }
  std::uint32_t u32() {
    auto b = take(4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(b[i]);
    return v;
  }
  std::uint64_t u64() {
    auto b = take(8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(b[i]);
    return v;
  }
  std::string str() {
    auto len = u32();
    return std::string(take(len));
  }
  StateCounts counts() {
    StateCounts c{};
    for (auto& v : c) v = u64();
    return c;
  }
  // Element counts are bounded by the bytes left so corrupt lengths cannot
  // trigger huge allocations.
  std::uint64_t length(std::size_t min_element_bytes) {
    auto n = u64();
    if (n > remaining() / std::max<std::size_t>(min_element_bytes, 1)) {
      throw Error(ErrorCode::corrupt_index, "index section length out of range");
    }
    return n;
  }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  std::string_view take(std::size_t n) {
    if (n > remaining()) throw Error(ErrorCode::corrupt_index, "index file truncated");
    auto v = data_.substr(pos_, n);
    pos_ += n;
    return v;
  }

  std::string_view data_;
  std::size_t pos_ = 0;
};

template <class Map>
std::vector<const typename Map::value_type*> sorted_entries(const Map& m) {
  std::vector<const typename Map::value_type*> out;
  out.reserve(m.size());
  for (const auto& kv : m) out.push_back(&kv);
  std::sort(out.begin(), out.end(),
            [](const auto* a, const auto* b) { return a->first < b->first; });
  return out;
}

void write_count_table(ByteWriter& w, const StringMap<StateCounts>& table) {
  auto entries = sorted_entries(table);
  w.u64(entries.size());
  for (const auto* e : entries) w.str(e->first);
  for (const auto* e : entries) w.counts(e->second);
}

StringMap<StateCounts> read_count_table(ByteReader& r) {
  auto n = r.length(4);
  std::vector<std::string> keys;
  keys.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) keys.push_back(r.str());
  StringMap<StateCounts> table;
  table.reserve(n);
  for (auto& key : keys) {
    if (!table.emplace(std::move(key), r.counts()).second) {
      throw Error(ErrorCode::corrupt_index, "duplicate key in index string table");
    }
  }
  return table;
}

std::uint32_t crc(std::string_view bytes) {
  return static_cast<std::uint32_t>(
      crc32_z(0L, reinterpret_cast<const Bytef*>(bytes.data()), bytes.size()));
}

}  // namespace

std::uint64_t CorpusIndex::total_tokens() const {
  std::uint64_t t = 0;
  for (auto v : token_totals) t += v;
  return t;
}

std::uint64_t CorpusIndex::total_users() const {
  std::uint64_t t = 0;
  for (auto v : user_counts) t += v;
  return t;
}

std::uint64_t CorpusIndex::vocabulary_fingerprint() const {
  std::uint64_t acc = word_counts.size();
  for (const auto& [word, counts] : word_counts) {
    // Commutative combination of per-word hashes.
    std::uint64_t h = fnv1a(word);
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    acc += h;
  }
  return acc;
}

void CorpusIndex::check_invariants() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::corrupt_index, "index invariant violated: " + what);
  };
  StateCounts sums{};
  for (const auto& [w, c] : word_counts) add_into(sums, c);
  if (sums != token_totals) fail("word counts do not sum to token totals");
  for (std::size_t s = 0; s < kStateCount; ++s) {
    const auto& g = gender_counts[s];
    if (g.male + g.female != g.reported) fail("gender tallies");
    if (g.reported > user_counts[s]) fail("gender reported exceeds users");
  }
  for (const auto& [label, c] : industry_counts) {
    for (std::size_t s = 0; s < kStateCount; ++s) {
      if (c[s] > user_counts[s]) fail("industry count exceeds users");
    }
  }
  StateCounts city_sums{};
  for (const auto& [key, n] : city_counts) city_sums[key.state.index()] += n;
  for (std::size_t s = 0; s < kStateCount; ++s) {
    if (city_sums[s] > user_counts[s]) fail("city counts exceed users");
  }
  if (user_ids.size() != total_users()) fail("user id set size");
}

void IndexBuilder::add_profile(const Profile& profile) {
  if (!index_.user_ids.insert(profile.user_id).second) {
    throw Error(ErrorCode::duplicate_user, "duplicate user_id " + profile.user_id);
  }
  for (const auto& blog : profile.blog_ids) {
    if (!blog_owner_.emplace(blog, profile.state).second) {
      throw Error(ErrorCode::duplicate_blog,
                  "blog " + blog + " is owned by more than one profile");
    }
  }
  auto s = profile.state.index();
  ++index_.user_counts[s];
  if (profile.gender) {
    auto& g = index_.gender_counts[s];
    ++(*profile.gender == Gender::male ? g.male : g.female);
    ++g.reported;
  }
  if (profile.industry) {
    auto it = index_.industry_counts.find(*profile.industry);
    if (it == index_.industry_counts.end()) {
      it = index_.industry_counts.emplace(*profile.industry, StateCounts{}).first;
    }
    ++it->second[s];
  }
  if (profile.city) ++index_.city_counts[CityKey{*profile.city, profile.state}];
}

bool IndexBuilder::add_post(const TokenizedPost& post) {
  auto owner = blog_owner_.find(post.blog_id);
  if (owner == blog_owner_.end()) {
    ++index_.warnings.orphan_posts;
    return false;
  }
  std::string key = post.blog_id;
  key.push_back('\0');
  key += post.post_id;
  if (!seen_posts_.insert(std::move(key)).second) {
    ++index_.warnings.duplicate_posts;
    return false;
  }
  auto s = owner->second.index();
  for (const auto& raw : post.tokens) {
    if (raw.empty()) continue;
    auto token = raw.size() > kMaxTokenChars ? truncate_chars(raw, kMaxTokenChars)
                                             : std::string_view(raw);
    if (token.size() != raw.size()) ++index_.warnings.truncated_tokens;
    auto it = index_.word_counts.find(token);
    if (it == index_.word_counts.end()) {
      it = index_.word_counts.emplace(std::string(token), StateCounts{}).first;
    }
    ++it->second[s];
    ++index_.token_totals[s];
  }
  ++index_.doc_count;
  return true;
}

CorpusIndex IndexBuilder::finish() && { return std::move(index_); }

CorpusIndex build_index(std::span<const Profile> profiles,
                        std::span<const TokenizedPost> posts) {
  IndexBuilder builder;
  for (const auto& p : profiles) builder.add_profile(p);
  for (const auto& p : posts) builder.add_post(p);
  return std::move(builder).finish();
}

CorpusIndex merge(const CorpusIndex& a, const CorpusIndex& b) {
  for (const auto& id : b.user_ids) {
    if (a.user_ids.contains(id)) {
      throw Error(ErrorCode::overlapping_users, "user " + id + " is in both indexes");
    }
  }
  CorpusIndex out = a;
  add_into(out.token_totals, b.token_totals);
  add_into(out.user_counts, b.user_counts);
  for (std::size_t s = 0; s < kStateCount; ++s) {
    out.gender_counts[s].male += b.gender_counts[s].male;
    out.gender_counts[s].female += b.gender_counts[s].female;
    out.gender_counts[s].reported += b.gender_counts[s].reported;
  }
  for (const auto& [w, c] : b.word_counts) add_into(out.word_counts[w], c);
  for (const auto& [label, c] : b.industry_counts) add_into(out.industry_counts[label], c);
  for (const auto& [key, n] : b.city_counts) out.city_counts[key] += n;
  out.doc_count += b.doc_count;
  out.user_ids.insert(b.user_ids.begin(), b.user_ids.end());
  out.warnings.orphan_posts += b.warnings.orphan_posts;
  out.warnings.duplicate_posts += b.warnings.duplicate_posts;
  out.warnings.truncated_tokens += b.warnings.truncated_tokens;
  return out;
}

std::string serialize_index(const CorpusIndex& index) {
  ByteWriter w;
  w.bytes().append(kMagic, sizeof kMagic);
  w.u32(kIndexFormatVersion);
  w.u32(0);
  w.u64(0);  // payload size, patched below

  w.u32(static_cast<std::uint32_t>(kStateCount));
  w.u64(index.doc_count);
  w.u64(index.warnings.orphan_posts);
  w.u64(index.warnings.duplicate_posts);
  w.u64(index.warnings.truncated_tokens);
  w.counts(index.token_totals);
  w.counts(index.user_counts);
  for (const auto& g : index.gender_counts) {
    w.u64(g.male);
    w.u64(g.female);
    w.u64(g.reported);
  }
  write_count_table(w, index.word_counts);
  write_count_table(w, index.industry_counts);

  w.u64(index.city_counts.size());
  for (const auto& [key, n] : index.city_counts) {
    w.str(key.city);
    w.u8(static_cast<std::uint8_t>(key.state.index()));
  }
  for (const auto& [key, n] : index.city_counts) w.u64(n);

  std::vector<std::string_view> users(index.user_ids.begin(), index.user_ids.end());
  std::sort(users.begin(), users.end());
  w.u64(users.size());
  for (auto u : users) w.str(u);

  auto& bytes = w.bytes();
  std::uint64_t payload = bytes.size() - kHeaderSize;
  for (int i = 0; i < 8; ++i) {
    bytes[16 + i] = static_cast<char>((payload >> (8 * i)) & 0xFF);
  }
  w.u32(crc(bytes));
  return std::move(bytes);
}

void save_index(const CorpusIndex& index, const std::filesystem::path& path) {
  auto bytes = serialize_index(index);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::io, "write failed: " + path.string());
}

CorpusIndex deserialize_index(std::string_view bytes) {
  if (bytes.size() < kHeaderSize + kTrailerSize ||
      std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
    throw Error(ErrorCode::corrupt_index, "not an index file");
  }
  ByteReader header(bytes.substr(8, kHeaderSize - 8));
  auto version = header.u32();
  if (version != kIndexFormatVersion) {
    throw Error(ErrorCode::unsupported_version,
                "unsupported index version " + std::to_string(version));
  }
  header.u32();
  auto payload_size = header.u64();
  if (payload_size != bytes.size() - kHeaderSize - kTrailerSize) {
    throw Error(ErrorCode::corrupt_index, "index size mismatch (truncated file?)");
  }
  auto body = bytes.substr(0, bytes.size() - kTrailerSize);
  if (ByteReader(bytes.substr(body.size())).u32() != crc(body)) {
    throw Error(ErrorCode::corrupt_index, "index checksum mismatch");
  }

  ByteReader r(bytes.substr(kHeaderSize, payload_size));
  if (r.u32() != kStateCount) throw Error(ErrorCode::corrupt_index, "state count");
  CorpusIndex index;
  index.doc_count = r.u64();
  index.warnings.orphan_posts = r.u64();
  index.warnings.duplicate_posts = r.u64();
  index.warnings.truncated_tokens = r.u64();
  index.token_totals = r.counts();
  index.user_counts = r.counts();
  for (auto& g : index.gender_counts) {
    g.male = r.u64();
    g.female = r.u64();
    g.reported = r.u64();
  }
  index.word_counts = read_count_table(r);
  index.industry_counts = read_count_table(r);

  auto cities = r.length(5);
  std::vector<CityKey> keys;
  keys.reserve(cities);
  for (std::uint64_t i = 0; i < cities; ++i) {
    auto city = r.str();
    auto state = r.u8();
    if (state >= kStateCount) throw Error(ErrorCode::corrupt_index, "bad state index");
    keys.push_back({std::move(city), StateId::from_index(state)});
  }
  for (auto& key : keys) {
    if (!index.city_counts.emplace(std::move(key), r.u64()).second) {
      throw Error(ErrorCode::corrupt_index, "duplicate city key");
    }
  }

  auto users = r.length(4);
  index.user_ids.reserve(users);
  for (std::uint64_t i = 0; i < users; ++i) {
    if (!index.user_ids.insert(r.str()).second) {
      throw Error(ErrorCode::corrupt_index, "duplicate user id");
    }
  }
  if (r.remaining() != 0) throw Error(ErrorCode::corrupt_index, "trailing bytes");
  index.check_invariants();
  return index;
}

CorpusIndex load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize_index(ss.str());
}

}  // namespace geolex
