#pragma once

#include <string>

#include "seamkit/service.hpp"

namespace seamkit {

/// Serves `service` over HTTP until the process is stopped. Returns nonzero
/// when the socket cannot be bound.
int run_http_server(const Service& service, const std::string& host, int port);

}  // namespace seamkit
