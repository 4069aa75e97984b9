#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "geolex/html.hpp"
#include "geolex/index.hpp"
#include "geolex/ingest.hpp"
#include "geolex/tokenize.hpp"

namespace geolex {

struct IngestOptions {
  unsigned shards = 1;
  FacetConfig facets = FacetConfig::blogger_defaults();
  HtmlOptions html;
};

struct IngestReport {
  std::uint64_t profiles_read = 0;
  std::uint64_t profiles_accepted = 0;
  std::uint64_t posts_read = 0;
  std::uint64_t posts_indexed = 0;
  /// Rejected profiles, kept for audit logs.
  std::vector<Rejection> rejections;
};

/// strip_html followed by tokenize.
TokenizedPost tokenize_post(const RawPost& post, Tokenizer& tokenizer,
                            const HtmlOptions& html = {});

/// Reads `profiles.jsonl` and `posts.jsonl` and builds the index. With more
/// than one shard, profiles are partitioned by user id, each shard is built
/// on its own thread, and the shards are merged. Malformed lines throw
/// FormatError carrying the file name and line number.
CorpusIndex ingest_corpus(const std::filesystem::path& profiles,
                          const std::filesystem::path& posts,
                          const IngestOptions& options = {},
                          IngestReport* report = nullptr);

}  // namespace geolex
