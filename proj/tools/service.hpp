// Copyright 2026 The samlfd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace httplib {
class Server;
}

namespace samlfd::service {

struct ServiceOptions {
  /// When set, every session that becomes ready is written to <dir>/<id>.json.
  std::optional<std::filesystem::path> persist_dir;
  /// Value of Access-Control-Allow-Origin.
  std::string cors_origin = "*";
};

/// HTTP front end over the C API. Routes:
///   POST /sessions                      201 ready session, or 202 pending with ?async=1
///   GET  /sessions/{id}                 status envelope, with the session once ready
///   GET  /sessions/{id}/region?robust=t best labels and optional robust mask
///   POST /sessions/{id}/reproduce       {"point": [...]} -> best reproduction
///   GET  /metrics, GET /representations
/// Errors are {"error": message, "code": status name} with 400, 404, 409 or 500.
class SessionService {
 public:
  explicit SessionService(ServiceOptions options = {});
  ~SessionService();
  SessionService(const SessionService&) = delete;
  SessionService& operator=(const SessionService&) = delete;

  void mount(httplib::Server& server);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Port from SAMLFD_PORT when set and valid, else `fallback`.
int port_from_env(int fallback);

}  // namespace samlfd::service
