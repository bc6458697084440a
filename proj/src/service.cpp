#include "codetopic/service.hpp"

#include <chrono>
#include <filesystem>

#include <httplib.h>

namespace codetopic {
namespace {

constexpr const char* kPlaceholderPage = R"(<!doctype html>
<html><head><meta charset="utf-8"><title>codetopic</title></head>
<body>
<h1>codetopic highlight service</h1>
<p>The web UI assets are not installed. Start the service with
<code>--static-dir</code> pointing at the built UI, or use the API directly:</p>
<ul>
<li><code>GET /api/topics</code></li>
<li><code>POST /api/highlight</code> with <code>{"code": "...", "topics": ["OperatorOverload"]}</code></li>
</ul>
</body></html>
)";

HighlightService::Response error(std::string message) {
  return {400, json{{"error", std::move(message)}}.dump()};
}

}  // namespace

HighlightService::HighlightService(ModelBundle bundle, ServiceSettings settings)
    : bundle_(std::move(bundle)), settings_(std::move(settings)) {}

HighlightService::Response HighlightService::topics() const {
  json names = json::array();
  for (Topic t : kAllTopics) names.push_back(topic_name(t));
  return {200, json{{"topics", names}}.dump()};
}

HighlightService::Response HighlightService::highlight(std::string_view request_body) const {
  const auto started = std::chrono::steady_clock::now();
  json body;
  try {
    body = json::parse(request_body);
  } catch (const json::parse_error& e) {
    return error(std::string("malformed JSON body: ") + e.what());
  }
  if (!body.is_object()) return error("request body must be a JSON object");
  if (!body.contains("code") || !body.at("code").is_string()) return error("field 'code' (string) is required");
  if (!body.contains("topics") || !body.at("topics").is_array()) return error("field 'topics' (array) is required");

  TopicSet topics;
  for (const auto& name : body.at("topics")) {
    if (!name.is_string()) return error("topics must be strings");
    auto t = parse_topic(name.get<std::string>());
    if (!t) return error("unknown topic '" + name.get<std::string>() + "'; valid topics: " + valid_topic_names());
    topics.insert(*t);
  }

  HighlightConfig cfg = bundle_.highlight_config;
  if (body.contains("config_overrides") && !body.at("config_overrides").is_null()) {
    try {
      cfg = apply_highlight_overrides(cfg, body.at("config_overrides"));
    } catch (const ConfigError& e) {
      return error(e.what());
    }
  }

  const SourceDocument doc("request", body.at("code").get<std::string>());
  if (doc.length() > settings_.max_code_chars) {
    return error("code has " + std::to_string(doc.length()) + " characters; limit is " +
                 std::to_string(settings_.max_code_chars));
  }

  json spans = json::array();
  for (const auto& h : codetopic::highlight(doc, bundle_.model, topics, cfg)) {
    spans.push_back(json{{"topic", topic_name(h.topic)},
                         {"start", h.span.start},
                         {"end", h.span.end},
                         {"confidence", h.confidence}});
  }
  const double elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return {200, json{{"spans", spans}, {"elapsed_ms", elapsed}}.dump()};
}

void HighlightService::register_routes(httplib::Server& server) const {
  const std::string origin = settings_.cors_origin;
  server.set_default_headers({{"Access-Control-Allow-Origin", origin},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.Get("/api/topics", [this](const httplib::Request&, httplib::Response& res) {
    const auto r = topics();
    res.status = r.status;
    res.set_content(r.body, "application/json");
  });
  server.Post("/api/highlight", [this](const httplib::Request& req, httplib::Response& res) {
    const auto r = highlight(req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  });
  if (!settings_.static_dir.empty() && std::filesystem::is_directory(settings_.static_dir)) {
    server.set_mount_point("/", settings_.static_dir);
  } else {
    server.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kPlaceholderPage, "text/html; charset=utf-8");
    });
  }
}

bool serve(const HighlightService& service) {
  httplib::Server server;
  service.register_routes(server);
  return server.listen(service.settings().bind, service.settings().port);
}

}  // namespace codetopic
