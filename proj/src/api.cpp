#include "geolex/api.hpp"

#include <algorithm>
#include <charconv>

#include "geolex/error.hpp"
#include "geolex/text.hpp"

namespace geolex {
namespace {

using nlohmann::json;

constexpr std::string_view kPrefix = "/api/v1/";

struct HttpError {
  int status;
  std::string code;
  std::string message;
};

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_found: return 404;
    case ErrorCode::invalid_argument: return 400;
    case ErrorCode::format:
    case ErrorCode::insufficient_data:
    case ErrorCode::undefined_correlation:
    case ErrorCode::no_data: return 422;
    default: return 500;
  }
}

ApiResponse json_response(int status, const json& body) {
  return ApiResponse{status, body.dump(), "application/json"};
}

ApiResponse error_response(int status, std::string_view code, std::string_view message) {
  return json_response(status, {{"error", {{"code", code}, {"message", message}}}});
}

const std::string& require_param(const ApiRequest& req, const std::string& key) {
  auto it = req.query.find(key);
  if (it == req.query.end() || it->second.empty()) {
    throw Error(ErrorCode::invalid_argument, "missing query parameter '" + key + "'");
  }
  return it->second;
}

std::uint64_t uint_param(const ApiRequest& req, const std::string& key, std::uint64_t fallback) {
  auto it = req.query.find(key);
  if (it == req.query.end() || it->second.empty()) return fallback;
  std::uint64_t v = 0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::invalid_argument, "parameter '" + key + "' must be a non-negative integer");
  }
  return v;
}

json map_payload(const Engine& engine, const ProportionVector& map) {
  return to_json(make_choropleth(map, engine.options().bins));
}

json meta(const Engine& engine) {
  const auto& index = engine.index();
  json lexicons = json::array();
  for (const auto& name : engine.lexicon_names()) {
    json cats = json::array();
    for (const auto& c : engine.matcher(name).categories()) cats.push_back(c.name);
    lexicons.push_back({{"name", name}, {"categories", cats}});
  }
  std::vector<std::string> industries;
  for (const auto& [label, counts] : index.industry_counts) industries.push_back(label);
  std::sort(industries.begin(), industries.end());
  json states = json::array();
  for (StateId s : all_states()) states.push_back({{"usps", s.usps()}, {"name", s.name()}});
  return {{"doc_count", index.doc_count},
          {"tokens", index.total_tokens()},
          {"users", index.total_users()},
          {"vocabulary", index.word_counts.size()},
          {"cities", index.city_counts.size()},
          {"states", states},
          {"industries", industries},
          {"lexicons", lexicons},
          {"index_format_version", kIndexFormatVersion}};
}

struct CategoryView {
  std::string lexicon;
  std::string category;
  ProportionVector map;
};

CategoryView category_view(const Engine& engine, std::string_view spec) {
  auto [matcher, id] = engine.find_category(spec);
  auto resolved = engine.resolved(*matcher);
  return {matcher->lexicon_name(), matcher->name_of(id),
          category_map(engine.index(), *resolved, id)};
}

json category_payload(const Engine& engine, const CategoryView& view) {
  return {{"lexicon", view.lexicon},
          {"category", view.category},
          {"map", map_payload(engine, view.map)}};
}

json dispatch(const Engine& engine, const ApiRequest& req) {
  std::string_view path = req.path;
  path.remove_prefix(kPrefix.size());
  while (!path.empty() && path.back() == '/') path.remove_suffix(1);

  const bool get = req.method == "GET" || req.method == "HEAD";
  if (path == "correlate/external") {
    if (req.method != "POST" && !get) {
      throw HttpError{405, "method_not_allowed", "use POST"};
    }
    StateValues external;
    try {
      external = parse_state_csv(req.body);
    } catch (const FormatError& e) {
      throw HttpError{422, "malformed_vector", e.what()};
    }
    const auto& index = engine.index();
    auto result = spearman(to_values(density_map(index)), external);
    return {{"against", "density"}, {"correlation", to_json(result)}};
  }
  if (!get) throw HttpError{405, "method_not_allowed", "read-only API"};

  if (path == "meta") return meta(engine);

  if (path.starts_with("map/word/")) {
    std::string word(path.substr(9));
    return {{"word", normalize_word(trim(word))},
            {"map", map_payload(engine, word_map(engine.index(), word))}};
  }
  if (path.starts_with("map/category/")) {
    auto rest = path.substr(13);
    auto slash = rest.find('/');
    if (slash == std::string_view::npos) {
      throw Error(ErrorCode::not_found, "expected /map/category/{lexicon}/{category}");
    }
    return category_payload(
        engine, category_view(engine, std::string(rest.substr(0, slash)) + ":" +
                                          std::string(rest.substr(slash + 1))));
  }
  if (path == "map/facet") {
    FacetQuery facet;
    try {
      facet = FacetQuery::from_parts(require_param(req, "kind"), require_param(req, "value"));
    } catch (const Error& e) {
      throw Error(ErrorCode::not_found, e.what());
    }
    auto label = facet.kind == FacetQuery::Kind::gender ? "gender" : "industry";
    return {{"facet", {{"kind", label}, {"value", facet.value}}},
            {"map", map_payload(engine, facet_map(engine.index(), facet))}};
  }
  if (path == "map/density") {
    auto threshold = uint_param(req, "threshold", engine.options().default_city_threshold);
    const auto& index = engine.index();
    json cities = json::array();
    for (const auto& dot : city_density(index, threshold)) cities.push_back(to_json(dot));
    return {{"map", to_json(make_choropleth(density_map(index), engine.options().bins))},
            {"threshold", threshold},
            {"cities", cities}};
  }
  if (path == "compare") {
    auto a = category_view(engine, require_param(req, "a"));
    auto b = category_view(engine, require_param(req, "b"));
    return {{"a", category_payload(engine, a)},
            {"b", category_payload(engine, b)},
            {"correlation", to_json(spearman(a.map.values, b.map.values))}};
  }
  if (path == "correlations/extremes") {
    auto k = uint_param(req, "k", 3);
    std::string lexicon;
    if (auto it = req.query.find("lexicon"); it != req.query.end() && !it->second.empty()) {
      lexicon = it->second;
    } else {
      auto names = engine.lexicon_names();
      if (names.size() != 1) {
        throw Error(ErrorCode::invalid_argument,
                    "parameter 'lexicon' is required when several lexicons are loaded");
      }
      lexicon = names.front();
    }
    const auto& matcher = engine.matcher(lexicon);
    // One worker keeps the server's own threads the only concurrency.
    auto report = correlation_extremes(engine.index(), matcher, *engine.resolved(matcher),
                                       static_cast<std::size_t>(k), 1);
    auto rows = [](const std::vector<CategoryPairReport>& pairs) {
      json out = json::array();
      for (const auto& p : pairs) {
        out.push_back({{"a", p.a}, {"b", p.b}, {"correlation", to_json(p.result)}});
      }
      return out;
    };
    return {{"lexicon", lexicon},
            {"k", k},
            {"top", rows(report.top)},
            {"bottom", rows(report.bottom)},
            {"pairs_evaluated", report.pairs_evaluated},
            {"pairs_excluded", report.pairs_excluded}};
  }
  throw HttpError{404, "not_found", "no such endpoint: " + req.path};
}

}  // namespace

nlohmann::json to_json(const CorrelationResult& result) {
  return {{"rho", result.rho},
          {"p_value", result.p_value ? json(*result.p_value) : json()},
          {"n", result.n}};
}

Engine::Engine(std::shared_ptr<const CorpusIndex> index,
               std::map<std::string, Lexicon> lexicons, EngineOptions options)
    : index_(std::move(index)), options_(options) {
  for (auto& [name, lex] : lexicons) {
    matchers_.emplace(name, std::make_unique<const Matcher>(lex));
  }
  if (index_) vocabulary_fingerprint_ = index_->vocabulary_fingerprint();
}

const CorpusIndex& Engine::index() const {
  if (!index_) throw Error(ErrorCode::no_data, "index not loaded");
  return *index_;
}

std::vector<std::string> Engine::lexicon_names() const {
  std::vector<std::string> out;
  for (const auto& [name, m] : matchers_) out.push_back(name);
  return out;
}

const Matcher& Engine::matcher(std::string_view lexicon) const {
  auto it = matchers_.find(lexicon);
  if (it == matchers_.end()) {
    throw Error(ErrorCode::not_found, "unknown lexicon '" + std::string(lexicon) + "'");
  }
  return *it->second;
}

std::shared_ptr<const ResolvedCategories> Engine::resolved(const Matcher& matcher) const {
  return cache_.get(index(), matcher, vocabulary_fingerprint_);
}

std::pair<const Matcher*, CategoryId> Engine::find_category(std::string_view spec) const {
  const Matcher* m = nullptr;
  std::string_view category = spec;
  auto colon = spec.rfind(':');
  if (colon != std::string_view::npos) {
    m = &matcher(spec.substr(0, colon));
    category = spec.substr(colon + 1);
  } else if (matchers_.size() == 1) {
    m = matchers_.begin()->second.get();
  } else {
    throw Error(ErrorCode::not_found,
                "category '" + std::string(spec) + "' needs a lexicon prefix (lexicon:category)");
  }
  auto id = m->find(category);
  if (!id) {
    throw Error(ErrorCode::not_found, "unknown category '" + std::string(category) +
                                          "' in lexicon '" + m->lexicon_name() + "'");
  }
  return {m, *id};
}

ApiResponse handle_api(const Engine& engine, const ApiRequest& request) {
  if (!std::string_view(request.path).starts_with(kPrefix)) {
    return error_response(404, "not_found", "no such endpoint: " + request.path);
  }
  if (!engine.has_index()) {
    return error_response(503, "index_not_loaded", "no corpus index is loaded");
  }
  try {
    return json_response(200, dispatch(engine, request));
  } catch (const HttpError& e) {
    return error_response(e.status, e.code, e.message);
  } catch (const Error& e) {
    return error_response(status_for(e.code()), to_string(e.code()), e.what());
  } catch (const std::exception& e) {
    return error_response(500, "internal", e.what());
  }
}

}  // namespace geolex
