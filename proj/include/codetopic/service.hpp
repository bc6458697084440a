#pragma once

#include <string>
#include <string_view>

#include "codetopic/config.hpp"
#include "codetopic/io.hpp"

namespace httplib {
class Server;
}

namespace codetopic {

/// HTTP front end over a shared, immutable model. Handlers are pure
/// functions of the request, so concurrent requests need no locking.
class HighlightService {
 public:
  struct Response {
    int status = 200;
    std::string body;  // JSON
  };

  HighlightService(ModelBundle bundle, ServiceSettings settings);

  /// GET /api/topics
  Response topics() const;
  /// POST /api/highlight with {"code": str, "topics": [str], "config_overrides": {...}}
  Response highlight(std::string_view request_body) const;

  /// Registers /api/topics, /api/highlight, CORS preflight and `/` assets.
  void register_routes(httplib::Server& server) const;

  const ServiceSettings& settings() const { return settings_; }

 private:
  ModelBundle bundle_;
  ServiceSettings settings_;
};

/// Blocks serving on settings.bind:settings.port. Returns false if binding fails.
bool serve(const HighlightService& service);

}  // namespace codetopic
