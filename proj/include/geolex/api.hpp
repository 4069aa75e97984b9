#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "geolex/analytics.hpp"
#include "geolex/choropleth.hpp"
#include "geolex/index.hpp"
#include "geolex/lexicon.hpp"
#include "geolex/stats.hpp"

namespace geolex {

struct EngineOptions {
  std::size_t bins = kDefaultBins;
  std::uint64_t default_city_threshold = kDefaultCityThreshold;
};

/// Everything the API serves: one immutable index plus compiled lexicons.
/// Const member functions are safe to call concurrently.
class Engine {
 public:
  Engine(std::shared_ptr<const CorpusIndex> index, std::map<std::string, Lexicon> lexicons,
         EngineOptions options = {});

  bool has_index() const noexcept { return index_ != nullptr; }
  /// Throws Error(no_data) when no index is loaded.
  const CorpusIndex& index() const;
  const EngineOptions& options() const noexcept { return options_; }

  std::vector<std::string> lexicon_names() const;
  /// Throws Error(not_found).
  const Matcher& matcher(std::string_view lexicon) const;
  std::shared_ptr<const ResolvedCategories> resolved(const Matcher& matcher) const;

  /// "lexicon:category", or a bare category name when exactly one lexicon
  /// is loaded. Throws Error(not_found).
  std::pair<const Matcher*, CategoryId> find_category(std::string_view spec) const;

 private:
  std::shared_ptr<const CorpusIndex> index_;
  std::map<std::string, std::unique_ptr<const Matcher>, std::less<>> matchers_;
  EngineOptions options_;
  std::uint64_t vocabulary_fingerprint_ = 0;
  mutable CategoryCache cache_;
};

struct ApiRequest {
  std::string method = "GET";
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// Dispatches a request under /api/v1. Bodies are deterministic functions of
/// (engine, request): identical requests give byte-identical bodies.
/// Failures carry {"error": {"code", "message"}}.
ApiResponse handle_api(const Engine& engine, const ApiRequest& request);

nlohmann::json to_json(const CorrelationResult& result);

/// HTTP front end over handle_api, plus the state geometry at
/// /assets/us-states.topojson and an optional static UI directory at /.
class HttpServer {
 public:
  struct Options {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string ui_dir;
  };

  HttpServer(const Engine& engine, Options options);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds the socket; port 0 picks a free port. Returns the bound port.
  int bind();
  /// Serves until stop(). Call bind() first.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace geolex
