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


// samlfd command-line front end. Talks to the library only through the C API.
//
// Exit codes: 0 success, 2 invalid input, 3 computation failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "httplib.h"
#include "json.hpp"
#include "samlfd/samlfd.h"
#include "service.hpp"

using nlohmann::json;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitComputation = 3;
constexpr int kDefaultPort = 8765;

// Carries a C API failure up to main.
struct ApiFailure : std::runtime_error {
  samlfd_status status;
  ApiFailure(samlfd_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

struct InputFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(samlfd_status s) {
  if (s != SAMLFD_OK) throw ApiFailure(s, samlfd_last_error());
}

int exit_code_for(samlfd_status s) {
  switch (s) {
    case SAMLFD_ERR_COMPUTATION:
    case SAMLFD_ERR_SINGULAR:
    case SAMLFD_ERR_INTERNAL:
      return kExitComputation;
    default:
      return kExitInvalid;
  }
}

struct Str {
  char* ptr = nullptr;
  ~Str() { samlfd_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

struct SessionHandle {
  samlfd_session* ptr = nullptr;
  ~SessionHandle() { samlfd_session_free(ptr); }
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputFailure("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw ApiFailure(SAMLFD_ERR_IO, "cannot write '" + path + "'");
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != cell.size()) throw InputFailure("point '" + text + "' is not a comma separated list of numbers");
    out.push_back(v);
  }
  if (out.size() != 2 && out.size() != 3) throw InputFailure("point needs 2 or 3 coordinates");
  return out;
}

// Flags shared by `reproduce` and `region`; they build a session request.
struct RequestFlags {
  std::string request_file;
  std::string demo;
  std::string shape;
  bool raw = false;
  std::string metric;
  std::string reps;
  std::string constraint;
  std::string normalization;
  std::string classifier;
  std::size_t resolution = 0;
  double extent = 0.0;
  double lambda = 0.0;
  unsigned workers = 1;

  void add_to(CLI::App* app) {
    app->add_option("--request", request_file, "Session request JSON used as the base for the flags below");
    app->add_option("--demo", demo, "Demonstration file (.json trajectory or .csv)");
    app->add_option("--shape", shape, "Bundled shape name instead of --demo");
    app->add_flag("--raw", raw, "Use the demonstration as given, without smoothing and resampling");
    app->add_option("--metric", metric, "Metric id (default frechet)");
    app->add_option("--reps", reps, "Comma separated representations (default ja,lte,dmp)");
    app->add_option("--constraint", constraint, "initial or final (default initial)");
    app->add_option("--normalization", normalization, "joint or per_representation");
    app->add_option("--classifier", classifier, "knn or csvc");
    app->add_option("--resolution", resolution, "Grid points per axis (default 9)");
    app->add_option("--extent", extent, "Grid half-width as a fraction of the bbox diagonal (default 0.25)");
    app->add_option("--lambda", lambda, "JA accuracy weight (default 20)");
    app->add_option("--workers", workers, "Worker threads for grid evaluation; 0 uses every core");
  }

  json build() const {
    json req = request_file.empty() ? json::object() : json::parse(read_text(request_file), nullptr, false);
    if (req.is_discarded() || !req.is_object()) throw InputFailure("request file is not a JSON object");
    if (!demo.empty() && !shape.empty()) throw InputFailure("give either --demo or --shape, not both");
    if (!demo.empty()) {
      samlfd_trajectory* t = nullptr;
      check(samlfd_trajectory_load(demo.c_str(), &t));
      Str text;
      const samlfd_status s = samlfd_trajectory_to_json(t, &text.ptr);
      samlfd_trajectory_free(t);
      check(s);
      req.erase("shape");
      req["demo"] = json::parse(text.str());
      req["preprocess"] = !raw;
    } else if (!shape.empty()) {
      req.erase("demo");
      req["shape"] = shape;
    }
    if (!req.contains("demo") && !req.contains("shape")) throw InputFailure("a demonstration is required: --demo FILE or --shape NAME");
    if (!metric.empty()) req["metric"] = metric;
    if (!reps.empty()) req["representations"] = reps;
    if (!constraint.empty()) req["constraint"] = constraint;
    if (!normalization.empty()) req["normalization"] = normalization;
    if (!classifier.empty()) req["classifier"] = classifier;
    if (resolution > 0) req["resolution"] = resolution;
    if (extent > 0.0) req["extent_fraction"] = extent;
    if (lambda > 0.0) req["ja"]["lambda"] = lambda;
    req["workers"] = workers;
    return req;
  }
};

int cmd_reproduce(const RequestFlags& flags, const std::string& point_text, const std::string& out_path) {
  const std::vector<double> point = parse_point(point_text);
  SessionHandle session;
  check(samlfd_session_create(flags.build().dump().c_str(), &session.ptr));
  Str result;
  check(samlfd_session_reproduce(session.ptr, point.data(), point.size(), &result.ptr));
  const json doc = json::parse(result.str());
  if (!out_path.empty()) write_text(out_path, doc["trajectory"].dump(2));
  std::cout << "winner: " << doc["representation"].get<std::string>() << "\n"
            << "raw_distance: " << doc["raw_distance"].dump() << "\n"
            << "similarity: " << doc["similarity"].dump() << "\n";
  return 0;
}

int cmd_region(const RequestFlags& flags, double robust, const std::string& out_path, const std::string& png_path,
               bool pretty) {
  json req = flags.build();
  if (robust >= 0.0) req["robust"] = robust;
  SessionHandle session;
  check(samlfd_session_create(req.dump().c_str(), &session.ptr));
  Str text;
  check(samlfd_session_to_json(session.ptr, pretty ? 2 : -1, &text.ptr));
  write_text(out_path, text.str());
  if (!png_path.empty()) check(samlfd_session_write_png(session.ptr, png_path.c_str(), robust));

  const json doc = json::parse(text.str());
  std::ostream& log = out_path == "-" ? std::cerr : std::cout;
  std::map<std::string, int> counts;
  for (const auto& label : doc["best_label"]) counts[label.get<std::string>()]++;
  log << "grid points: " << samlfd_session_grid_size(session.ptr) << "\n";
  for (const auto& rep : doc["representations"]) {
    const std::string label = rep.get<std::string>();
    double delta = 0.0;
    check(samlfd_session_delta(session.ptr, label.c_str(), &delta));
    log << label << ": best at " << counts[label] << " points, delta " << delta << "\n";
  }
  if (!doc["failures"].empty()) log << "failed cells: " << doc["failures"].size() << "\n";
  return 0;
}

struct BiasFlags {
  bool bundled = false;
  std::string lasa;
  std::string metrics;
  std::size_t resolution = 9;
  double tie_margin = 0.10;
  double extent = 0.25;
  double threshold = 0.5;
  unsigned workers = 1;
  std::string csv;
  std::string markdown;
  std::string json_out;
};

int cmd_bias_study(const BiasFlags& f) {
  if (f.bundled == !f.lasa.empty()) throw InputFailure("choose exactly one corpus: --bundled or --lasa DIR");
  samlfd_corpus* corpus = nullptr;
  Str warnings;
  check(f.bundled ? samlfd_corpus_bundled(&corpus) : samlfd_corpus_load_lasa(f.lasa.c_str(), &corpus, &warnings.ptr));
  std::unique_ptr<samlfd_corpus, void (*)(samlfd_corpus*)> owned(corpus, &samlfd_corpus_free);
  if (warnings.ptr) {
    for (const auto& w : json::parse(warnings.str())) std::cerr << "warning: " << w.get<std::string>() << "\n";
  }
  samlfd_bias_config cfg;
  samlfd_bias_config_default(&cfg);
  cfg.resolution = f.resolution;
  cfg.tie_margin = f.tie_margin;
  cfg.extent_fraction = f.extent;
  cfg.decision_threshold = f.threshold;
  cfg.workers = f.workers;
  Str csv, md, js;
  check(samlfd_bias_study(corpus, f.metrics.c_str(), &cfg, &csv.ptr, &md.ptr, &js.ptr));
  if (!f.csv.empty()) write_text(f.csv, csv.str());
  if (!f.markdown.empty()) write_text(f.markdown, md.str());
  if (!f.json_out.empty()) write_text(f.json_out, js.str());
  std::cout << md.str();
  return 0;
}

int cmd_serve(const std::string& host, int port, const std::string& persist, const std::string& cors) {
  samlfd::service::ServiceOptions options;
  if (!persist.empty()) options.persist_dir = persist;
  options.cors_origin = cors;
  samlfd::service::SessionService service(options);
  httplib::Server server;
  service.mount(server);
  const int effective = port > 0 ? port : samlfd::service::port_from_env(kDefaultPort);
  std::cerr << "samlfd listening on http://" << host << ":" << effective << "\n";
  if (!server.listen(host, effective)) throw ApiFailure(SAMLFD_ERR_IO, "cannot listen on " + host + ":" + std::to_string(effective));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Similarity-aware multi-representational learning from demonstration"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(samlfd_version()));

  RequestFlags reproduce_flags;
  std::string point;
  std::string reproduce_out;
  CLI::App* reproduce = app.add_subcommand("reproduce", "Best reproduction from a new initial or final point");
  reproduce_flags.add_to(reproduce);
  reproduce->add_option("--point", point, "Constrained endpoint, e.g. 1.5,-2")->required();
  reproduce->add_option("--out", reproduce_out, "Write the winning trajectory JSON here");

  RequestFlags region_flags;
  double robust = -1.0;
  std::string region_out = "session.json";
  std::string png;
  bool pretty = false;
  CLI::App* region = app.add_subcommand("region", "Evaluate the similarity region over a grid");
  region_flags.add_to(region);
  region->add_option("--robust", robust, "Add the robust mask at this similarity threshold")
      ->check(CLI::Range(0.0, 1.0));
  region->add_option("--out", region_out, "Session JSON path, '-' for stdout")->capture_default_str();
  region->add_option("--png", png, "Also render the best labels as a PNG heatmap");
  region->add_flag("--pretty", pretty, "Indent the session JSON");

  BiasFlags bias;
  CLI::App* bias_cmd = app.add_subcommand("bias-study", "Categorize metrics by their JA/LTE bias");
  bias_cmd->add_flag("--bundled", bias.bundled, "Use the bundled synthetic corpus");
  bias_cmd->add_option("--lasa", bias.lasa, "Directory of LASA-style CSV files");
  bias_cmd->add_option("--metrics", bias.metrics, "Comma separated metric ids (default all)");
  bias_cmd->add_option("--resolution", bias.resolution, "Grid points per axis")->capture_default_str();
  bias_cmd->add_option("--tie-margin", bias.tie_margin, "Relative gap counted as inconclusive")->capture_default_str();
  bias_cmd->add_option("--extent", bias.extent, "Grid half-width as a bbox-diagonal fraction")->capture_default_str();
  bias_cmd->add_option("--threshold", bias.threshold, "Share needed for a JA or LTE decision")->capture_default_str();
  bias_cmd->add_option("--workers", bias.workers, "Worker threads; 0 uses every core")->capture_default_str();
  bias_cmd->add_option("--csv", bias.csv, "Write the CSV table here");
  bias_cmd->add_option("--markdown", bias.markdown, "Write the Markdown table here");
  bias_cmd->add_option("--json", bias.json_out, "Write per-metric records as JSON here");

  std::string host = "127.0.0.1";
  int port = 0;
  std::string persist;
  std::string cors = "*";
  CLI::App* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--port", port, "Port (default: SAMLFD_PORT or 8765)");
  serve->add_option("--persist", persist, "Directory that receives each ready session's JSON");
  serve->add_option("--cors-origin", cors, "Access-Control-Allow-Origin value")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*reproduce) return cmd_reproduce(reproduce_flags, point, reproduce_out);
    if (*region) return cmd_region(region_flags, robust, region_out, png, pretty);
    if (*bias_cmd) return cmd_bias_study(bias);
    if (*serve) return cmd_serve(host, port, persist, cors);
  } catch (const ApiFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.status);
  } catch (const InputFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
