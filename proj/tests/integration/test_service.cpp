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

// Runs the HTTP service in-process and the CLI binary as a child process.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "service.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

class Harness {
 public:
  explicit Harness(samlfd::service::ServiceOptions options = {}) : service_(std::move(options)) {
    service_.mount(server_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~Harness() {
    server_.stop();
    thread_.join();
  }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(120, 0);
    return c;
  }

 private:
  samlfd::service::SessionService service_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("samlfd_it_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string("\"") + SAMLFD_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

const char* kRequest = R"({"shape":"sshape","metric":"frechet","resolution":5})";

}  // namespace

TEST_SUITE("http") {

TEST_CASE("session lifecycle over HTTP") {
  Harness h;
  auto c = h.client();

  auto created = c.Post("/sessions", kRequest, "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  CHECK(created->get_header_value("Access-Control-Allow-Origin") == "*");
  const auto env = json::parse(created->body);
  CHECK(env["id"] == "s1");
  CHECK(env["status"] == "ready");
  const auto& session = env["session"];
  CHECK(session["grid"]["points"].size() == 25);

  auto fetched = c.Get("/sessions/s1");
  REQUIRE(fetched);
  CHECK(fetched->status == 200);
  CHECK(fetched->body == created->body);

  auto region = c.Get("/sessions/s1/region?robust=0.5");
  REQUIRE(region);
  CHECK(region->status == 200);
  const auto r = json::parse(region->body);
  CHECK(r["labels"] == session["best_label"]);
  CHECK(r["robust"]["mask"].size() == 25);

  for (std::size_t p = 0; p < 25; p += 6) {
    const json body = {{"point", session["grid"]["points"][p]}};
    auto rep = c.Post("/sessions/s1/reproduce", body.dump(), "application/json");
    REQUIRE(rep);
    CHECK(rep->status == 200);
    CHECK(json::parse(rep->body)["representation"] == session["best_label"][p]);
  }
}

TEST_CASE("error responses") {
  Harness h;
  auto c = h.client();
  auto missing = c.Get("/sessions/s42");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  CHECK(json::parse(missing->body)["code"] == "not found");

  auto bad_metric = c.Post("/sessions", R"({"shape":"line","metric":"cosine"})", "application/json");
  REQUIRE(bad_metric);
  CHECK(bad_metric->status == 400);
  const auto err = json::parse(bad_metric->body);
  CHECK(err["error"].get<std::string>().find("frechet") != std::string::npos);

  auto not_json = c.Post("/sessions", "{", "application/json");
  REQUIRE(not_json);
  CHECK(not_json->status == 400);

  // Failed creations do not consume ids.
  auto ok = c.Post("/sessions", R"({"shape":"line","resolution":3})", "application/json");
  REQUIRE(ok);
  CHECK(json::parse(ok->body)["id"] == "s1");

  auto bad_robust = c.Get("/sessions/s1/region?robust=2");
  REQUIRE(bad_robust);
  CHECK(bad_robust->status == 400);
  auto bad_point = c.Post("/sessions/s1/reproduce", R"({"point":[1,2,3]})", "application/json");
  REQUIRE(bad_point);
  CHECK(bad_point->status == 400);
  auto no_point = c.Post("/sessions/s1/reproduce", R"({"x":1})", "application/json");
  REQUIRE(no_point);
  CHECK(no_point->status == 400);
  auto unknown = c.Post("/sessions/s9/reproduce", R"({"point":[1,2]})", "application/json");
  REQUIRE(unknown);
  CHECK(unknown->status == 404);
}

TEST_CASE("asynchronous creation") {
  Harness h;
  auto c = h.client();
  auto res = c.Post("/sessions?async=1", R"({"shape":"writing","resolution":7})", "application/json");
  REQUIRE(res);
  CHECK(res->status == 202);
  const auto env = json::parse(res->body);
  CHECK(env["status"] == "pending");
  const std::string id = env["id"];

  json last;
  for (int i = 0; i < 600; ++i) {
    auto poll = c.Get("/sessions/" + id);
    REQUIRE(poll);
    last = json::parse(poll->body);
    if (last["status"] != "pending") break;
    auto early = c.Get("/sessions/" + id + "/region");
    REQUIRE(early);
    CHECK((early->status == 409 || early->status == 200));
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  CHECK(last["status"] == "ready");
  CHECK(last["session"]["grid"]["points"].size() == 49);

  auto failed = c.Post("/sessions?async=1", R"({"shape":"line","metric":"nope"})", "application/json");
  REQUIRE(failed);
  const std::string fid = json::parse(failed->body)["id"];
  json state;
  for (int i = 0; i < 200; ++i) {
    state = json::parse(c.Get("/sessions/" + fid)->body);
    if (state["status"] != "pending") break;
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  CHECK(state["status"] == "failed");
  CHECK(state.contains("error"));
  auto region = c.Get("/sessions/" + fid + "/region");
  REQUIRE(region);
  CHECK(region->status == 400);
}

TEST_CASE("catalogue endpoints and CORS preflight") {
  Harness h;
  auto c = h.client();
  auto metrics = c.Get("/metrics");
  REQUIRE(metrics);
  CHECK(json::parse(metrics->body).size() == 11);
  auto reps = c.Get("/representations");
  REQUIRE(reps);
  CHECK(json::parse(reps->body) == json::array({"ja", "lte", "dmp"}));
  auto pre = c.Options("/sessions");
  REQUIRE(pre);
  CHECK(pre->status == 204);
  CHECK(pre->get_header_value("Access-Control-Allow-Methods").find("POST") != std::string::npos);
}

TEST_CASE("persisted sessions match the served document") {
  TempDir dir("persist");
  samlfd::service::ServiceOptions options;
  options.persist_dir = dir.path;
  Harness h(options);
  auto c = h.client();
  auto res = c.Post("/sessions", kRequest, "application/json");
  REQUIRE(res);
  REQUIRE(fs::exists(dir.path / "s1.json"));
  CHECK(json::parse(res->body)["session"] == json::parse(slurp(dir.path / "s1.json")));
}

}

TEST_SUITE("cli") {

TEST_CASE("region output is byte-identical to the served session") {
  TempDir dir("region");
  const auto out = dir.path / "session.json";
  REQUIRE(run_cli("region --shape sshape --metric frechet --resolution 5 --out \"" + out.string() + "\"",
                  dir.path / "log.txt") == 0);
  Harness h;
  auto res = h.client().Post("/sessions", kRequest, "application/json");
  REQUIRE(res);
  const std::string body = res->body;
  const std::string marker = ",\"session\":";
  const auto at = body.find(marker);
  REQUIRE(at != std::string::npos);
  const std::string served = body.substr(at + marker.size(), body.size() - at - marker.size() - 1);
  CHECK(served == slurp(out));
  CHECK(slurp(dir.path / "log.txt").find("grid points: 25") != std::string::npos);
}

TEST_CASE("reproduce matches the HTTP reproduction") {
  TempDir dir("reproduce");
  Harness h;
  auto c = h.client();
  auto created = c.Post("/sessions", kRequest, "application/json");
  REQUIRE(created);
  const json point = json::parse(created->body)["session"]["grid"]["points"][7];
  auto rep = c.Post("/sessions/s1/reproduce", json{{"point", point}}.dump(), "application/json");
  REQUIRE(rep);
  const auto served = json::parse(rep->body);

  std::ostringstream pt;
  pt.precision(17);
  pt << point[0].get<double>() << "," << point[1].get<double>();
  const auto traj = dir.path / "traj.json";
  REQUIRE(run_cli("reproduce --shape sshape --resolution 5 --point=" + pt.str() + " --out \"" + traj.string() + "\"",
                  dir.path / "log.txt") == 0);
  CHECK(json::parse(slurp(traj)) == served["trajectory"]);
  CHECK(slurp(dir.path / "log.txt").find("winner: " + served["representation"].get<std::string>()) == 0);
}

TEST_CASE("exit codes") {
  TempDir dir("exit");
  const auto log = dir.path / "log.txt";
  CHECK(run_cli("region --shape line --resolution 3 --out -", log) == 0);
  CHECK(run_cli("region --shape line --metric cosine --out -", log) == 2);
  CHECK(slurp(log).find("error:") != std::string::npos);
  CHECK(run_cli("region --shape circle --out -", log) == 2);
  CHECK(run_cli("region --demo /nonexistent.json --out -", log) == 2);
  CHECK(run_cli("reproduce --shape line", log) == 2);
  CHECK(run_cli("reproduce --shape line --point 1,2,3", log) == 2);
  CHECK(run_cli("frobnicate", log) == 2);
  CHECK(run_cli("bias-study --bundled --lasa /tmp", log) == 2);
  CHECK(run_cli("bias-study --bundled --tie-margin 5", log) == 2);
  CHECK(run_cli("--version", log) == 0);

  const auto csv = dir.path / "bias.csv";
  CHECK(run_cli("bias-study --bundled --metrics sse --resolution 3 --csv \"" + csv.string() + "\"", log) == 0);
  CHECK(slurp(csv).rfind("metric,name,ja,lte,inconclusive,decision,counted,excluded\n", 0) == 0);
  CHECK(slurp(log).find("| SSE |") != std::string::npos);

  const auto png = dir.path / "region.png";
  CHECK(run_cli("region --shape loop --resolution 4 --robust 0.5 --out \"" + (dir.path / "s.json").string() +
                    "\" --png \"" + png.string() + "\"",
                log) == 0);
  CHECK(fs::file_size(png) > 0);
}

TEST_CASE("CSV demonstrations are accepted") {
  TempDir dir("csv");
  std::ofstream(dir.path / "demo.csv") << "x,y\n0,0\n1,0.5\n2,1.5\n3,3\n4,5\n5,7.5\n";
  CHECK(run_cli("region --demo \"" + (dir.path / "demo.csv").string() + "\" --resolution 3 --out \"" +
                    (dir.path / "s.json").string() + "\"",
                dir.path / "log.txt") == 0);
  const auto doc = json::parse(slurp(dir.path / "s.json"));
  CHECK(doc["demo"]["samples"].size() == 100);
}

}
