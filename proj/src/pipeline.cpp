#include "geolex/pipeline.hpp"

#include <fstream>
#include <string>
#include <thread>
#include <unordered_map>

#include "geolex/error.hpp"
#include "geolex/hash.hpp"

namespace geolex {
namespace {

template <class Fn>
void for_each_line(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot read " + path.string());
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      fn(line, number);
    } catch (const FormatError& e) {
      throw FormatError(path.filename().string() + ": " + e.what(), number);
    }
  }
}

}  // namespace

TokenizedPost tokenize_post(const RawPost& post, Tokenizer& tokenizer,
                            const HtmlOptions& html) {
  TokenizedPost out{post.blog_id, post.post_id, {}};
  tokenizer.run(strip_html(post.html_body, html),
                [&](std::string_view t) { out.tokens.emplace_back(t); });
  return out;
}

CorpusIndex ingest_corpus(const std::filesystem::path& profiles_path,
                          const std::filesystem::path& posts_path,
                          const IngestOptions& options, IngestReport* report) {
  IngestReport local;
  IngestReport& rep = report ? *report : local;
  const unsigned shards = std::max(1u, options.shards);

  std::vector<IndexBuilder> builders(shards);
  std::unordered_map<std::string, unsigned> blog_shard;
  for_each_line(profiles_path, [&](const std::string& line, std::size_t) {
    ++rep.profiles_read;
    auto result = normalize_facets(parse_profile_line(line), options.facets);
    if (auto* rejected = std::get_if<Rejection>(&result)) {
      rep.rejections.push_back(std::move(*rejected));
      return;
    }
    auto& profile = std::get<Profile>(result);
    auto shard = static_cast<unsigned>(fnv1a(profile.user_id) % shards);
    builders[shard].add_profile(profile);
    for (const auto& blog : profile.blog_ids) {
      if (!blog_shard.emplace(blog, shard).second) {
        throw Error(ErrorCode::duplicate_blog,
                    "blog " + blog + " is owned by more than one profile");
      }
    }
    ++rep.profiles_accepted;
  });

  auto route = [&](const std::string& blog) -> unsigned {
    auto it = blog_shard.find(blog);
    return it == blog_shard.end() ? 0u : it->second;
  };

  if (shards == 1) {
    Tokenizer tokenizer;
    for_each_line(posts_path, [&](const std::string& line, std::size_t) {
      ++rep.posts_read;
      auto post = tokenize_post(parse_post_line(line), tokenizer, options.html);
      if (builders[0].add_post(post)) ++rep.posts_indexed;
    });
    builders[0].add_truncated(tokenizer.stats().truncated);
    return std::move(builders[0]).finish();
  }

  std::vector<std::vector<RawPost>> batches(shards);
  for_each_line(posts_path, [&](const std::string& line, std::size_t) {
    ++rep.posts_read;
    auto post = parse_post_line(line);
    batches[route(post.blog_id)].push_back(std::move(post));
  });

  std::vector<std::uint64_t> indexed(shards, 0);
  std::vector<std::exception_ptr> failures(shards);
  {
    std::vector<std::jthread> workers;
    for (unsigned s = 0; s < shards; ++s) {
      workers.emplace_back([&, s] {
        try {
          Tokenizer tokenizer;
          for (const auto& raw : batches[s]) {
            if (builders[s].add_post(tokenize_post(raw, tokenizer, options.html))) {
              ++indexed[s];
            }
          }
          builders[s].add_truncated(tokenizer.stats().truncated);
        } catch (...) {
          failures[s] = std::current_exception();
        }
      });
    }
  }
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  CorpusIndex merged = std::move(builders[0]).finish();
  rep.posts_indexed += indexed[0];
  for (unsigned s = 1; s < shards; ++s) {
    merged = merge(merged, std::move(builders[s]).finish());
    rep.posts_indexed += indexed[s];
  }
  return merged;
}

}  // namespace geolex
