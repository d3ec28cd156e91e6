#pragma once

// HTTP binding for the request handler. Requires cpp-httplib (vendor/httplib.h)
// and a threads library at link time.

#include <string>

#include <httplib.h>

#include "maxahp/service.hpp"

namespace maxahp::api {

inline void register_routes(httplib::Server& server, const ServiceConfig& cfg = {}) {
  auto forward = [cfg](const httplib::Request& req, httplib::Response& res) {
    const ApiResponse r = handle_request(req.method, req.path, req.body, cfg);
    res.status = r.status;
    res.set_content(r.text(), "application/json");
  };
  const char* pattern = R"(/api/.*)";
  server.Get(pattern, forward);
  server.Post(pattern, forward);
  server.Put(pattern, forward);
  server.Delete(pattern, forward);
  server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (!res.body.empty()) return;
    res.set_content(error_body(res.status == 404 ? "not_found" : "schema", "http_" + std::to_string(res.status),
                               "cannot serve " + req.method + " " + req.path)
                        .dump(),
                    "application/json");
  });
  server.set_payload_max_length(8u << 20);
}

/// Blocks until the server is stopped. Returns false if the port could not be bound.
inline bool serve(const std::string& host, int port, const ServiceConfig& cfg = {}) {
  httplib::Server server;
  register_routes(server, cfg);
  return server.listen(host, port);
}

}  // namespace maxahp::api
