#include <chrono>
#include <cstdio>
#include <ctime>

#include <httplib.h>

#include "geolex/api.hpp"
#include "geolex/error.hpp"
#include "geolex/hash.hpp"

namespace geolex {
namespace {

std::string http_date(std::time_t t) {
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::strftime(buf, sizeof buf, "%a, %d %b %Y %H:%M:%S GMT", &tm);
  return buf;
}

}  // namespace

struct HttpServer::Impl {
  const Engine& engine;
  Options options;
  httplib::Server server;
  std::string started_at = http_date(std::time(nullptr));
  std::string topojson = state_tiles_topojson().dump();
  int port = -1;

  Impl(const Engine& e, Options o) : engine(e), options(std::move(o)) {
    auto api = [this](const httplib::Request& req, httplib::Response& res) {
      ApiRequest request;
      request.method = req.method;
      request.path = req.path;
      for (const auto& [k, v] : req.params) request.query.emplace(k, v);
      request.body = req.body;
      auto response = handle_api(engine, request);
      res.status = response.status;
      // Timestamps live in headers only; bodies stay byte-identical.
      char etag[24];
      std::snprintf(etag, sizeof etag, "\"%016llx\"",
                    static_cast<unsigned long long>(fnv1a(response.body)));
      res.set_header("ETag", etag);
      res.set_header("Last-Modified", started_at);
      res.set_header("Cache-Control", "no-cache");
      res.set_content(response.body, response.content_type);
    };
    server.Get(R"(/api/v1/.*)", api);
    server.Post(R"(/api/v1/.*)", api);
    server.Get("/assets/us-states.topojson",
               [this](const httplib::Request&, httplib::Response& res) {
                 res.set_header("Last-Modified", started_at);
                 res.set_content(topojson, "application/json");
               });
    if (!options.ui_dir.empty()) {
      if (!server.set_mount_point("/", options.ui_dir)) {
        throw Error(ErrorCode::io, "cannot serve UI directory " + options.ui_dir);
      }
    }
    server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
      if (!res.body.empty()) return;
      nlohmann::json body = {{"error", {{"code", "not_found"}, {"message", "no such path: " + req.path}}}};
      res.set_content(body.dump(), "application/json");
    });
  }
};

HttpServer::HttpServer(const Engine& engine, Options options)
    : impl_(std::make_unique<Impl>(engine, std::move(options))) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind() {
  if (impl_->options.port == 0) {
    impl_->port = impl_->server.bind_to_any_port(impl_->options.host);
  } else if (impl_->server.bind_to_port(impl_->options.host, impl_->options.port)) {
    impl_->port = impl_->options.port;
  }
  if (impl_->port < 0) {
    throw Error(ErrorCode::io, "cannot bind " + impl_->options.host + ":" +
                                   std::to_string(impl_->options.port));
  }
  return impl_->port;
}

void HttpServer::listen() {
  if (impl_->port < 0) bind();
  impl_->server.listen_after_bind();
}

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace geolex
