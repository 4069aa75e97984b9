// geolex: offline ingest, map export, correlation reports and the HTTP server.
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "geolex/analytics.hpp"
#include "geolex/api.hpp"
#include "geolex/choropleth.hpp"
#include "geolex/error.hpp"
#include "geolex/index.hpp"
#include "geolex/lexicon.hpp"
#include "geolex/pipeline.hpp"
#include "geolex/states.hpp"
#include "geolex/stats.hpp"

namespace {

using namespace geolex;
using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path);
  out << text;
}

// A lexicon argument may be a path, or a name found under --lexicons.
std::map<std::string, Lexicon> lexicons_for(const std::string& dir, const std::string& lexicon) {
  std::map<std::string, Lexicon> out;
  if (!lexicon.empty() && std::filesystem::exists(lexicon)) {
    auto lex = load_lexicon(lexicon);
    out.emplace(lex.name, std::move(lex));
    return out;
  }
  if (dir.empty()) throw UsageError("--lexicons DIR is required to resolve lexicon names");
  return load_lexicon_dir(dir);
}

struct IngestArgs {
  std::string profiles, posts, out;
  unsigned shards = 1;
};

struct MapArgs {
  std::string index, word, category, facet, format = "json", out, lexicons;
  std::size_t bins = kDefaultBins;
  std::string title;
};

struct CorrelateArgs {
  std::string index, a, b, external, lexicons;
};

struct ExtremesArgs {
  std::string index, lexicon, lexicons;
  std::size_t k = 3;
};

struct ServeArgs {
  std::string index, lexicons, ui_dir, host = "127.0.0.1";
  std::optional<int> port;
};

int run_ingest(const IngestArgs& a) {
  IngestOptions options;
  options.shards = a.shards;
  IngestReport report;
  auto index = ingest_corpus(a.profiles, a.posts, options, &report);
  save_index(index, a.out);
  std::cerr << "profiles: " << report.profiles_accepted << "/" << report.profiles_read
            << " accepted, posts: " << report.posts_indexed << "/" << report.posts_read
            << " indexed, tokens: " << index.total_tokens()
            << ", vocabulary: " << index.word_counts.size() << '\n';
  if (!report.rejections.empty())
    std::cerr << report.rejections.size() << " profiles rejected (unresolved location)\n";
  const auto& w = index.warnings;
  if (w.orphan_posts || w.duplicate_posts || w.truncated_tokens)
    std::cerr << "warnings: " << w.orphan_posts << " orphan posts, " << w.duplicate_posts
              << " duplicate posts, " << w.truncated_tokens << " truncated tokens\n";
  return 0;
}

int run_map(const MapArgs& a) {
  int chosen = !a.word.empty() + !a.category.empty() + !a.facet.empty();
  if (chosen != 1) throw UsageError("give exactly one of --word, --category, --facet");
  auto index = load_index(a.index);

  ProportionVector map;
  std::string title;
  if (!a.word.empty()) {
    map = word_map(index, a.word);
    title = "Word: " + a.word;
  } else if (!a.facet.empty()) {
    auto facet = FacetQuery::parse(a.facet);
    map = facet_map(index, facet);
    title = a.facet;
  } else {
    auto colon = a.category.rfind(':');
    std::string lexicon = colon == std::string::npos ? "" : a.category.substr(0, colon);
    Engine engine(nullptr, lexicons_for(a.lexicons, lexicon));
    auto [matcher, id] = engine.find_category(a.category);
    map = category_map(index, *matcher, id);
    title = matcher->lexicon_name() + ": " + matcher->name_of(id);
  }
  if (!a.title.empty()) title = a.title;

  auto spec = make_choropleth(map, a.bins);
  if (a.format == "json") {
    write_output(to_json(spec).dump(2), a.out);
  } else if (a.format == "csv") {
    write_output(to_csv(spec), a.out);
  } else {
    write_output(to_svg(spec, title), a.out);
  }
  return 0;
}

int run_correlate(const CorrelateArgs& a) {
  auto index = load_index(a.index);
  json out;
  if (!a.external.empty()) {
    if (!a.a.empty() || !a.b.empty()) throw UsageError("--external excludes --a/--b");
    auto external = parse_state_csv(read_file(a.external));
    auto result = spearman(to_values(density_map(index)), external);
    out = {{"against", "density"}, {"correlation", to_json(result)}};
  } else {
    if (a.a.empty() || a.b.empty()) throw UsageError("give --a and --b, or --external");
    auto lex_of = [](const std::string& s) {
      auto c = s.rfind(':');
      return c == std::string::npos ? std::string() : s.substr(0, c);
    };
    std::map<std::string, Lexicon> lexicons;
    for (const auto& spec : {a.a, a.b})
      for (auto& [name, lex] : lexicons_for(a.lexicons, lex_of(spec)))
        lexicons.emplace(name, std::move(lex));
    Engine engine(nullptr, std::move(lexicons));
    auto [ma, ia] = engine.find_category(a.a);
    auto [mb, ib] = engine.find_category(a.b);
    auto result =
        spearman(category_map(index, *ma, ia).values, category_map(index, *mb, ib).values);
    out = {{"a", a.a}, {"b", a.b}, {"correlation", to_json(result)}};
  }
  write_output(out.dump(2), "");
  return 0;
}

int run_extremes(const ExtremesArgs& a) {
  if (a.k == 0) throw UsageError("-k must be at least 1");
  auto index = load_index(a.index);
  auto lexicons = lexicons_for(a.lexicons, a.lexicon);
  const Lexicon* lex = nullptr;
  if (auto it = lexicons.find(a.lexicon); it != lexicons.end()) {
    lex = &it->second;
  } else if (lexicons.size() == 1 && std::filesystem::exists(a.lexicon)) {
    lex = &lexicons.begin()->second;
  } else {
    throw Error(ErrorCode::not_found, "unknown lexicon '" + a.lexicon + "'");
  }
  Matcher matcher(*lex);
  auto report = correlation_extremes(index, matcher, a.k);
  auto rows = [](const std::vector<CategoryPairReport>& pairs) {
    json out = json::array();
    for (const auto& p : pairs) out.push_back({{"a", p.a}, {"b", p.b}, {"correlation", to_json(p.result)}});
    return out;
  };
  json out = {{"lexicon", lex->name},
              {"k", a.k},
              {"top", rows(report.top)},
              {"bottom", rows(report.bottom)},
              {"pairs_evaluated", report.pairs_evaluated},
              {"pairs_excluded", report.pairs_excluded}};
  write_output(out.dump(2), "");
  return 0;
}

HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

int run_serve(const ServeArgs& a) {
  int port = 8080;
  if (a.port) {
    port = *a.port;
  } else if (const char* env = std::getenv("GEOLEX_PORT")) {
    try {
      port = std::stoi(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("GEOLEX_PORT is not a port number: ") + env);
    }
  }
  if (port < 0 || port > 65535) throw UsageError("port out of range");

  std::map<std::string, Lexicon> lexicons;
  if (!a.lexicons.empty()) lexicons = load_lexicon_dir(a.lexicons);
  Engine engine(std::make_shared<const CorpusIndex>(load_index(a.index)), std::move(lexicons));
  HttpServer server(engine, {a.host, port, a.ui_dir});
  int bound = server.bind();
  std::cerr << "listening on http://" << a.host << ":" << bound << "/\n";
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.listen();
  g_server = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geolex: per-state word, category and demographic maps from blog corpora"};
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "build an index from profiles.jsonl and posts.jsonl");
  ingest_cmd->add_option("--profiles", ingest.profiles)->required()->check(CLI::ExistingFile);
  ingest_cmd->add_option("--posts", ingest.posts)->required()->check(CLI::ExistingFile);
  ingest_cmd->add_option("--out", ingest.out, "index file to write")->required();
  ingest_cmd->add_option("--shards", ingest.shards)->check(CLI::Range(1u, 256u));

  MapArgs map;
  auto* map_cmd = app.add_subcommand("map", "export one choropleth");
  map_cmd->add_option("--index", map.index)->required();
  auto* word = map_cmd->add_option("--word", map.word);
  auto* category = map_cmd->add_option("--category", map.category, "LEXICON:CATEGORY");
  auto* facet = map_cmd->add_option("--facet", map.facet, "gender=male|female, industry=LABEL");
  word->excludes(category)->excludes(facet);
  category->excludes(facet);
  map_cmd->add_option("--format", map.format)->check(CLI::IsMember({"json", "csv", "svg"}));
  map_cmd->add_option("--out", map.out);
  map_cmd->add_option("--lexicons", map.lexicons, "directory of lexicons");
  map_cmd->add_option("--bins", map.bins)->check(CLI::Range(2, 20));
  map_cmd->add_option("--title", map.title);

  CorrelateArgs corr;
  auto* corr_cmd = app.add_subcommand("correlate", "Spearman correlation of two maps");
  corr_cmd->add_option("--index", corr.index)->required();
  corr_cmd->add_option("--a", corr.a, "LEXICON:CATEGORY");
  corr_cmd->add_option("--b", corr.b, "LEXICON:CATEGORY");
  corr_cmd->add_option("--external", corr.external, "usps,value CSV compared with user density")
      ->check(CLI::ExistingFile);
  corr_cmd->add_option("--lexicons", corr.lexicons);

  ExtremesArgs ext;
  auto* ext_cmd = app.add_subcommand("extremes", "most and least correlated category pairs");
  ext_cmd->add_option("--index", ext.index)->required();
  ext_cmd->add_option("--lexicon", ext.lexicon, "lexicon name or path")->required();
  ext_cmd->add_option("-k", ext.k);
  ext_cmd->add_option("--lexicons", ext.lexicons);

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP API");
  serve_cmd->add_option("--index", serve.index)->required();
  serve_cmd->add_option("--lexicons", serve.lexicons);
  serve_cmd->add_option("--port", serve.port, "defaults to $GEOLEX_PORT, then 8080");
  serve_cmd->add_option("--host", serve.host);
  serve_cmd->add_option("--ui-dir", serve.ui_dir)->check(CLI::ExistingDirectory);

  auto* states_cmd = app.add_subcommand("states", "print the state table as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*ingest_cmd) return run_ingest(ingest);
    if (*map_cmd) return run_map(map);
    if (*corr_cmd) return run_correlate(corr);
    if (*ext_cmd) return run_extremes(ext);
    if (*serve_cmd) return run_serve(serve);
    if (*states_cmd) {
      std::cout << state_table_csv();
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
