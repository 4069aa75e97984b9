// Throughput of the indexing hot path: strip, tokenize, match, count.
//
//   geolex_bench [--mb N] [--lexicon FILE] [--seed S]
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geolex/html.hpp"
#include "geolex/index.hpp"
#include "geolex/lexicon.hpp"
#include "geolex/tokenize.hpp"

using namespace geolex;
using Clock = std::chrono::steady_clock;

namespace {

std::vector<std::string> make_vocab(std::mt19937_64& rng) {
  const std::string letters = "etaoinshrdlcumwfgypbvkjxqz";
  std::vector<std::string> vocab;
  for (int i = 0; i < 20000; ++i) {
    std::string w;
    for (std::size_t k = 0, n = 2 + rng() % 8; k < n; ++k)
      w += letters[std::min<std::size_t>(rng() % 26, rng() % 26)];
    if (i % 97 == 0) w += "'s";
    if (i % 13 == 0) w[0] = static_cast<char>(w[0] - 'a' + 'A');
    vocab.push_back(w);
  }
  return vocab;
}

Lexicon make_lexicon(std::mt19937_64& rng, const std::vector<std::string>& vocab) {
  Lexicon lex{"bench", {}};
  for (CategoryId c = 1; c <= 60; ++c) lex.categories.push_back({c, "c" + std::to_string(c), {}});
  for (int i = 0; i < 600; ++i) {
    std::string stem = vocab[rng() % 2000];
    for (auto& ch : stem) ch = static_cast<char>(std::tolower(ch));
    bool prefix = rng() % 3 == 0 && stem.size() > 2;
    if (prefix) stem.pop_back();
    lex.categories[rng() % 60].patterns.insert(
        {prefix ? Pattern::Kind::prefix : Pattern::Kind::exact, stem});
  }
  std::erase_if(lex.categories, [](const Category& c) { return c.patterns.empty(); });
  return lex;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geolex indexing throughput benchmark"};
  double mb = 100;
  std::string lexicon_path;
  std::uint64_t seed = 100;
  bool html = false;
  app.add_option("--mb", mb, "corpus size in MB")->check(CLI::PositiveNumber);
  app.add_option("--lexicon", lexicon_path, ".dic file or theme-list directory");
  app.add_option("--seed", seed);
  app.add_flag("--html", html, "wrap documents in markup and include strip_html in the timing");
  CLI11_PARSE(app, argc, argv);

  std::mt19937_64 rng(seed);
  auto vocab = make_vocab(rng);
  const auto target = static_cast<std::size_t>(mb * 1e6);
  std::vector<std::string> docs;
  std::size_t total = 0;
  std::geometric_distribution<std::size_t> zipfish(0.002);
  while (total < target) {
    std::string d = html ? "<div class=\"post\"><p>" : "";
    while (d.size() < 2000) {
      d += vocab[std::min(zipfish(rng), vocab.size() - 1)];
      if (html && rng() % 40 == 0) d += "</p><p>";
      d += rng() % 12 ? " " : ". ";
    }
    if (html) d += "</p></div>";
    total += d.size();
    docs.push_back(std::move(d));
  }
  Matcher matcher(lexicon_path.empty() ? make_lexicon(rng, vocab) : load_lexicon(lexicon_path));

  auto start = Clock::now();
  Tokenizer tokenizer;
  StringMap<std::uint64_t> counts;
  std::vector<std::uint64_t> per_category;
  std::vector<CategoryId> hits;
  std::uint64_t tokens = 0;
  for (const auto& d : docs) {
    auto emit = [&](std::string_view token) {
      ++tokens;
      auto it = counts.find(token);
      if (it == counts.end()) it = counts.emplace(std::string(token), 0).first;
      ++it->second;
      matcher.match_into(token, hits);
      for (auto id : hits) {
        if (id >= per_category.size()) per_category.resize(id + 1);
        ++per_category[id];
      }
    };
    if (html) {
      tokenizer.run(strip_html(d), emit);
    } else {
      tokenizer.run(d, emit);
    }
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("bytes %zu\ntokens %llu\nvocabulary %zu\nseconds %.3f\nMB/s %.1f\n", total,
              static_cast<unsigned long long>(tokens), counts.size(), secs, total / 1e6 / secs);
  return 0;
}
