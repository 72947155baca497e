#include "http_server.hpp"

#include <cstdio>

#include <httplib.h>

namespace seamkit {

int run_http_server(const Service& service, const std::string& host, int port) {
  httplib::Server server;
  const auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    const HttpResponse r = service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  server.Get(".*", forward);
  server.Post(".*", forward);
  std::fprintf(stderr, "listening on %s:%d\n", host.c_str(), port);
  return server.listen(host, port) ? 0 : 1;
}

}  // namespace seamkit
