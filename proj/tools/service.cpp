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


#include "service.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "samlfd/samlfd.h"

namespace samlfd::service {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kJson = "application/json";

struct SessionDeleter {
  void operator()(samlfd_session* s) const { samlfd_session_free(s); }
};
using SessionPtr = std::unique_ptr<samlfd_session, SessionDeleter>;

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { samlfd_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

enum class State { Pending, Ready, Failed };

const char* state_name(State s) {
  switch (s) {
    case State::Pending: return "pending";
    case State::Ready: return "ready";
    case State::Failed: return "failed";
  }
  return "unknown";
}

// Written once by the computing thread, then read-only.
struct Entry {
  std::string id;
  std::string created;
  std::atomic<State> state{State::Pending};
  SessionPtr session;
  std::string session_json;
  samlfd_status error_status = SAMLFD_OK;
  std::string error;
};

int http_status_for(samlfd_status s) {
  switch (s) {
    case SAMLFD_OK: return 200;
    case SAMLFD_ERR_INVALID_ARGUMENT:
    case SAMLFD_ERR_PARSE:
    case SAMLFD_ERR_DIMENSION:
    case SAMLFD_ERR_NON_FINITE:
    case SAMLFD_ERR_NOT_FOUND:
      return 400;
    default:
      return 500;
  }
}

void send_error(httplib::Response& res, int http_status, const std::string& code, const std::string& message) {
  res.status = http_status;
  res.set_content(json{{"error", message}, {"code", code}}.dump(), kJson);
}

void send_status_error(httplib::Response& res, samlfd_status s, const std::string& message) {
  send_error(res, http_status_for(s), samlfd_status_string(s), message);
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// The session document is spliced in verbatim so clients see exactly the
// bytes samlfd_session_to_json produced.
std::string envelope(const Entry& e) {
  const State state = e.state.load();
  json head = {{"id", e.id}, {"status", state_name(state)}, {"created", e.created}};
  if (state == State::Failed) head["error"] = e.error;
  std::string out = head.dump();
  if (state == State::Ready) {
    out.pop_back();
    out += ",\"session\":" + e.session_json + "}";
  }
  return out;
}

}  // namespace

struct SessionService::Impl {
  ServiceOptions options;
  std::shared_mutex mutex;
  std::map<std::string, std::shared_ptr<Entry>> sessions;
  std::atomic<unsigned long> next_id{1};
  std::mutex threads_mutex;
  std::vector<std::thread> threads;

  std::shared_ptr<Entry> find(const std::string& id) {
    std::shared_lock lock(mutex);
    const auto it = sessions.find(id);
    return it == sessions.end() ? nullptr : it->second;
  }

  void compute(const std::shared_ptr<Entry>& entry, const std::string& body) {
    samlfd_session* raw = nullptr;
    const samlfd_status st = samlfd_session_create(body.c_str(), &raw);
    if (st != SAMLFD_OK) {
      entry->error_status = st;
      entry->error = samlfd_last_error();
      entry->state = State::Failed;
      return;
    }
    SessionPtr session(raw);
    OwnedString text;
    const samlfd_status js = samlfd_session_to_json(session.get(), -1, &text.ptr);
    if (js != SAMLFD_OK) {
      entry->error_status = js;
      entry->error = samlfd_last_error();
      entry->state = State::Failed;
      return;
    }
    entry->session_json = text.str();
    entry->session = std::move(session);
    if (!entry->id.empty()) persist(*entry);
    entry->state = State::Ready;
  }

  void persist(const Entry& entry) {
    if (!options.persist_dir) return;
    std::error_code ec;
    std::filesystem::create_directories(*options.persist_dir, ec);
    std::ofstream out(*options.persist_dir / (entry.id + ".json"), std::ios::binary);
    out << entry.session_json;
  }

  void create(const httplib::Request& req, httplib::Response& res) {
    auto entry = std::make_shared<Entry>();
    entry->created = utc_now();
    const bool async = req.has_param("async") && req.get_param_value("async") != "0";
    if (async) {
      entry->id = "s" + std::to_string(next_id++);
      {
        std::unique_lock lock(mutex);
        sessions[entry->id] = entry;
      }
      std::lock_guard guard(threads_mutex);
      threads.emplace_back([this, entry, body = req.body] { compute(entry, body); });
      res.status = 202;
      res.set_content(envelope(*entry), kJson);
      return;
    }
    compute(entry, req.body);
    if (entry->state == State::Failed) {
      send_status_error(res, entry->error_status, entry->error);
      return;
    }
    entry->id = "s" + std::to_string(next_id++);
    persist(*entry);
    {
      std::unique_lock lock(mutex);
      sessions[entry->id] = entry;
    }
    res.status = 201;
    res.set_content(envelope(*entry), kJson);
  }

  // Resolves a ready session or writes the error response.
  std::shared_ptr<Entry> ready(const std::string& id, httplib::Response& res) {
    auto entry = find(id);
    if (!entry) {
      send_error(res, 404, "not found", "no session '" + id + "'");
      return nullptr;
    }
    switch (entry->state.load()) {
      case State::Pending:
        send_error(res, 409, "pending", "session '" + id + "' is still computing");
        return nullptr;
      case State::Failed:
        send_status_error(res, entry->error_status, entry->error);
        return nullptr;
      case State::Ready:
        return entry;
    }
    return nullptr;
  }

  void region(const std::string& id, const httplib::Request& req, httplib::Response& res) {
    auto entry = ready(id, res);
    if (!entry) return;
    double robust = -1.0;
    if (req.has_param("robust")) {
      const std::string text = req.get_param_value("robust");
      char* end = nullptr;
      robust = std::strtod(text.c_str(), &end);
      if (text.empty() || *end != '\0' || !(robust >= 0.0 && robust <= 1.0)) {
        send_error(res, 400, "invalid argument", "robust must be a number in [0, 1]");
        return;
      }
    }
    OwnedString out;
    const samlfd_status st = samlfd_session_region_json(entry->session.get(), robust, &out.ptr);
    if (st != SAMLFD_OK) return send_status_error(res, st, samlfd_last_error());
    res.set_content(out.str(), kJson);
  }

  void reproduce(const std::string& id, const httplib::Request& req, httplib::Response& res) {
    auto entry = ready(id, res);
    if (!entry) return;
    std::vector<double> point;
    try {
      const json body = json::parse(req.body);
      if (!body.is_object() || !body.contains("point")) throw std::invalid_argument("missing 'point'");
      point = body["point"].get<std::vector<double>>();
    } catch (const std::exception&) {
      send_error(res, 400, "invalid argument", "body must be {\"point\": [x, y(, z)]}");
      return;
    }
    OwnedString out;
    const samlfd_status st = samlfd_session_reproduce(entry->session.get(), point.data(), point.size(), &out.ptr);
    if (st != SAMLFD_OK) return send_status_error(res, st, samlfd_last_error());
    res.set_content(out.str(), kJson);
  }
};

SessionService::SessionService(ServiceOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
}

SessionService::~SessionService() {
  std::lock_guard guard(impl_->threads_mutex);
  for (std::thread& t : impl_->threads) t.join();
}

void SessionService::mount(httplib::Server& server) {
  Impl* impl = impl_.get();
  server.set_default_headers({{"Access-Control-Allow-Origin", impl->options.cors_origin},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  server.Post("/sessions", [impl](const httplib::Request& req, httplib::Response& res) { impl->create(req, res); });
  server.Get(R"(/sessions/([^/]+))", [impl](const httplib::Request& req, httplib::Response& res) {
    auto entry = impl->find(req.matches[1]);
    if (!entry) return send_error(res, 404, "not found", "no session '" + std::string(req.matches[1]) + "'");
    res.set_content(envelope(*entry), kJson);
  });
  server.Get(R"(/sessions/([^/]+)/region)", [impl](const httplib::Request& req, httplib::Response& res) {
    impl->region(req.matches[1], req, res);
  });
  server.Post(R"(/sessions/([^/]+)/reproduce)", [impl](const httplib::Request& req, httplib::Response& res) {
    impl->reproduce(req.matches[1], req, res);
  });
  server.Get("/metrics", [](const httplib::Request&, httplib::Response& res) {
    OwnedString out;
    samlfd_metric_ids(&out.ptr);
    res.set_content(out.str(), kJson);
  });
  server.Get("/representations", [](const httplib::Request&, httplib::Response& res) {
    OwnedString out;
    samlfd_representation_labels(&out.ptr);
    res.set_content(out.str(), kJson);
  });
}

int port_from_env(int fallback) {
  const char* value = std::getenv("SAMLFD_PORT");
  if (value == nullptr || *value == '\0') return fallback;
  char* end = nullptr;
  const long port = std::strtol(value, &end, 10);
  if (*end != '\0' || port <= 0 || port > 65535) return fallback;
  return static_cast<int>(port);
}

}  // namespace samlfd::service
