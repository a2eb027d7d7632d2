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


#include "samlfd/session.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "samlfd/error.hpp"

namespace samlfd {

using json = nlohmann::ordered_json;

namespace {

json parse_document(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Parse, std::string(what) + " does not parse: " + e.what());
  }
}

double number_field(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj[key];
  if (!v.is_number()) fail(ErrorCode::InvalidArgument, std::string("'") + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(ErrorCode::NonFinite, std::string("'") + key + "' must be finite");
  return x;
}

std::size_t count_field(const json& obj, const char* key, std::size_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj[key];
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    fail(ErrorCode::InvalidArgument, std::string("'") + key + "' must be a non-negative integer");
  }
  return static_cast<std::size_t>(v.get<long long>());
}

std::string string_field(const json& obj, const char* key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) fail(ErrorCode::InvalidArgument, std::string("'") + key + "' must be a string");
  return obj[key].get<std::string>();
}

const json& object_field(const json& obj, const char* key) {
  static const json empty = json::object();
  if (!obj.contains(key)) return empty;
  if (!obj[key].is_object()) fail(ErrorCode::InvalidArgument, std::string("'") + key + "' must be an object");
  return obj[key];
}

json point_json(const Eigen::VectorXd& p) {
  json out = json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) out.push_back(p[i]);
  return out;
}

Eigen::VectorXd point_from_json(const json& v, const char* what) {
  if (!v.is_array() || v.empty()) fail(ErrorCode::Parse, std::string(what) + " must be an array of numbers");
  Eigen::VectorXd p(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) fail(ErrorCode::Parse, std::string(what) + " must be an array of numbers");
    p[static_cast<Eigen::Index>(i)] = v[i].get<double>();
  }
  return p;
}

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json config_json(const SessionRequest& r) {
  json dmp = {{"stiffness", r.representation.dmp.stiffness},
              {"alpha_s", r.representation.dmp.alpha_s},
              {"num_basis", r.representation.dmp.num_basis}};
  dmp["tau"] = r.representation.dmp.tau ? json(*r.representation.dmp.tau) : json(nullptr);
  return {
      {"resolution", r.resolution},
      {"extent_fraction", r.extent_fraction},
      {"endpoint_fraction", r.metric_options.endpoint_fraction},
      {"ja", {{"lambda", r.representation.ja.lambda}, {"constraint_weight", r.representation.ja.constraint_weight}}},
      {"lte", {{"constraint_weight", r.representation.lte.constraint_weight}}},
      {"dmp", std::move(dmp)},
      {"knn", {{"k", r.knn.k}}},
      {"svc", {{"c", r.svc.c}, {"gamma", r.svc.gamma}}},
  };
}

// Applies the tunables shared by request bodies and stored sessions.
void apply_config(const json& doc, SessionRequest& r) {
  r.resolution = count_field(doc, "resolution", r.resolution);
  r.extent_fraction = number_field(doc, "extent_fraction", r.extent_fraction);
  r.metric_options.endpoint_fraction = number_field(doc, "endpoint_fraction", r.metric_options.endpoint_fraction);
  const json& ja = object_field(doc, "ja");
  r.representation.ja.lambda = number_field(ja, "lambda", r.representation.ja.lambda);
  r.representation.ja.constraint_weight = number_field(ja, "constraint_weight", r.representation.ja.constraint_weight);
  const json& lte = object_field(doc, "lte");
  r.representation.lte.constraint_weight =
      number_field(lte, "constraint_weight", r.representation.lte.constraint_weight);
  const json& dmp = object_field(doc, "dmp");
  r.representation.dmp.stiffness = number_field(dmp, "stiffness", r.representation.dmp.stiffness);
  r.representation.dmp.alpha_s = number_field(dmp, "alpha_s", r.representation.dmp.alpha_s);
  r.representation.dmp.num_basis = count_field(dmp, "num_basis", r.representation.dmp.num_basis);
  if (dmp.contains("tau") && !dmp["tau"].is_null()) r.representation.dmp.tau = number_field(dmp, "tau", 1.0);
  const json& knn = object_field(doc, "knn");
  r.knn.k = count_field(knn, "k", r.knn.k);
  const json& svc = object_field(doc, "svc");
  r.svc.c = number_field(svc, "c", r.svc.c);
  r.svc.gamma = number_field(svc, "gamma", r.svc.gamma);
}

std::vector<Representation> reps_from_json(const json& v) {
  if (v.is_string()) return parse_representation_list(v.get<std::string>());
  if (!v.is_array()) fail(ErrorCode::InvalidArgument, "'representations' must be a list of labels");
  std::string csv;
  for (const json& item : v) {
    if (!item.is_string()) fail(ErrorCode::InvalidArgument, "'representations' must be a list of labels");
    csv += (csv.empty() ? "" : ",") + item.get<std::string>();
  }
  return parse_representation_list(csv);
}

json grid_json(const Meshgrid& grid) {
  json points = json::array();
  for (const Point& p : grid.points) points.push_back(point_json(p));
  return {{"dims", grid.dims()},
          {"resolution", grid.resolution},
          {"center", point_json(grid.center)},
          {"extent", point_json(grid.extent)},
          {"points", std::move(points)}};
}

json labels_json(const std::vector<Representation>& labels) {
  json out = json::array();
  for (Representation r : labels) out.push_back(to_string(r));
  return out;
}

json mask_json(const std::vector<bool>& mask) {
  json out = json::array();
  for (bool b : mask) out.push_back(b);
  return out;
}

void check_threshold(double t) {
  if (!(t >= 0.0 && t <= 1.0)) fail(ErrorCode::InvalidArgument, "robust threshold must lie in [0, 1]");
}

}  // namespace

SessionRequest session_request_from_json(const std::string& text) {
  const json doc = parse_document(text, "session request");
  if (!doc.is_object()) fail(ErrorCode::Parse, "session request must be a JSON object");

  SessionRequest r;
  if (doc.contains("demo")) {
    const json& demo = doc["demo"];
    r.demo = trajectory_from_json(demo.is_string() ? demo.get<std::string>() : demo.dump());
    if (r.demo.name.empty()) r.demo.name = "demo";
    const json& pre = doc.contains("preprocess") ? doc["preprocess"] : json(true);
    if (!pre.is_boolean()) fail(ErrorCode::InvalidArgument, "'preprocess' must be a boolean");
    if (pre.get<bool>()) r.demo.trajectory = preprocess(r.demo.trajectory);
  } else if (doc.contains("shape")) {
    r.demo = bundled_shape(string_field(doc, "shape", ""));
  } else {
    fail(ErrorCode::InvalidArgument, "session request needs a 'demo' trajectory or a bundled 'shape'");
  }

  r.metric = parse_metric(string_field(doc, "metric", to_string(r.metric)));
  r.constraint = parse_constraint_kind(string_field(doc, "constraint", to_string(r.constraint)));
  if (r.constraint == ConstraintKind::Both) {
    fail(ErrorCode::InvalidArgument, "a session constrains either the initial or the final point");
  }
  if (doc.contains("representations")) r.reps = reps_from_json(doc["representations"]);
  r.normalization = parse_normalization_scope(string_field(doc, "normalization", to_string(r.normalization)));
  r.classifier = parse_classifier_kind(string_field(doc, "classifier", to_string(r.classifier)));
  apply_config(doc, r);
  if (doc.contains("robust") && !doc["robust"].is_null()) {
    r.robust = number_field(doc, "robust", 0.0);
    check_threshold(*r.robust);
  }
  r.workers = static_cast<unsigned>(count_field(doc, "workers", r.workers));
  return r;
}

Session Session::compute(SessionRequest request) {
  if (request.constraint == ConstraintKind::Both) {
    fail(ErrorCode::InvalidArgument, "a session constrains either the initial or the final point");
  }
  if (request.robust) check_threshold(*request.robust);
  Session s;
  auto reproducers = std::make_shared<ReproducerSet>(request.demo.trajectory, request.reps, request.representation);
  const Meshgrid grid = default_meshgrid(request.demo.trajectory, request.constraint, request.resolution,
                                         request.extent_fraction);
  GridOptions options;
  options.representation = request.representation;
  options.metric = request.metric_options;
  options.normalization = request.normalization;
  options.workers = request.workers;
  auto map = std::make_shared<SimilarityMap>(
      evaluate_grid(request.demo.trajectory, *reproducers, grid, request.metric, request.constraint, options));
  if (std::all_of(map->flagged.begin(), map->flagged.end(), [](bool f) { return f; })) {
    fail(ErrorCode::Computation, "every representation failed at every grid point" +
                                     (map->failures.empty() ? std::string() : ": " + map->failures.front().message));
  }
  s.model_ = std::make_shared<RegionModel>(RegionModel::fit(*map, request.classifier, request.knn, request.svc));
  s.map_ = std::move(map);
  s.reproducers_ = std::move(reproducers);
  s.request_ = std::make_shared<SessionRequest>(std::move(request));
  return s;
}

ReproductionResult Session::reproduce(const Point& point) const {
  return best_reproduction(request_->demo.trajectory, *reproducers_, point, request_->constraint, request_->metric,
                           request_->metric_options, map_.get());
}

std::string Session::to_json(int indent) const {
  const SimilarityMap& m = *map_;
  const SessionRequest& r = *request_;
  json scores = json::object();
  json raw = json::object();
  for (std::size_t i = 0; i < m.reps.size(); ++i) {
    json s = json::array();
    json d = json::array();
    for (Eigen::Index p = 0; p < m.scores.cols(); ++p) {
      s.push_back(m.scores(static_cast<Eigen::Index>(i), p));
      d.push_back(nullable(m.raw(static_cast<Eigen::Index>(i), p)));
    }
    scores[to_string(m.reps[i])] = std::move(s);
    raw[to_string(m.reps[i])] = std::move(d);
  }
  json best_score = json::array();
  for (double v : m.best_score) best_score.push_back(v);
  json failures = json::array();
  for (const CellFailure& f : m.failures) {
    failures.push_back({{"representation", to_string(f.rep)}, {"point", f.point}, {"message", f.message}});
  }
  json doc = {
      {"version", kSessionSchemaVersion},
      {"metric", to_string(m.metric)},
      {"constraint", to_string(m.constraint)},
      {"normalization", to_string(m.normalization)},
      {"representations", labels_json(m.reps)},
      {"classifier", to_string(r.classifier)},
      {"config", config_json(r)},
      {"grid", grid_json(m.grid)},
      {"scores", std::move(scores)},
      {"raw", std::move(raw)},
      {"best_label", labels_json(m.best_label)},
      {"best_score", std::move(best_score)},
      {"flagged", mask_json(m.flagged)},
      {"failures", std::move(failures)},
  };
  if (r.robust) doc["robust"] = {{"threshold", *r.robust}, {"mask", mask_json(robust_region(m, *r.robust))}};
  doc["demo"] = json::parse(trajectory_to_json(r.demo));
  return doc.dump(indent);
}

Session Session::from_json(const std::string& text) {
  const json doc = parse_document(text, "session JSON");
  if (!doc.is_object()) fail(ErrorCode::Parse, "session JSON must be an object");
  for (const char* key : {"version", "metric", "constraint", "representations", "grid", "raw", "demo"}) {
    if (!doc.contains(key)) fail(ErrorCode::Parse, std::string("session JSON lacks '") + key + "'");
  }
  if (doc["version"] != kSessionSchemaVersion) {
    fail(ErrorCode::Parse, "unsupported session schema version " + doc["version"].dump());
  }
  SessionRequest r;
  r.demo = trajectory_from_json(doc["demo"].dump());
  r.metric = parse_metric(string_field(doc, "metric", ""));
  r.constraint = parse_constraint_kind(string_field(doc, "constraint", ""));
  r.reps = reps_from_json(doc["representations"]);
  r.normalization = parse_normalization_scope(string_field(doc, "normalization", "joint"));
  r.classifier = parse_classifier_kind(string_field(doc, "classifier", "knn"));
  apply_config(object_field(doc, "config"), r);
  if (doc.contains("robust")) r.robust = number_field(object_field(doc, "robust"), "threshold", 0.0);

  const json& g = object_field(doc, "grid");
  if (!g.contains("points") || !g["points"].is_array() || !g.contains("center") || !g.contains("extent")) {
    fail(ErrorCode::Parse, "session grid needs center, extent and points");
  }
  Meshgrid grid;
  grid.center = point_from_json(g["center"], "grid center");
  grid.extent = point_from_json(g["extent"], "grid extent");
  grid.resolution = count_field(g, "resolution", 0);
  for (const json& p : g["points"]) {
    grid.points.push_back(point_from_json(p, "grid point"));
    if (grid.points.back().size() != grid.center.size()) fail(ErrorCode::Dimension, "grid points have mixed dimensions");
  }

  const json& raw_doc = object_field(doc, "raw");
  Eigen::MatrixXd raw(static_cast<Eigen::Index>(r.reps.size()), static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < r.reps.size(); ++i) {
    const char* label = to_string(r.reps[i]);
    if (!raw_doc.contains(label) || !raw_doc[label].is_array() || raw_doc[label].size() != grid.size()) {
      fail(ErrorCode::Parse, std::string("session raw distances for '") + label + "' are missing or misshaped");
    }
    for (std::size_t p = 0; p < grid.size(); ++p) {
      const json& v = raw_doc[label][p];
      raw(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p)) =
          v.is_number() ? v.get<double>() : std::numeric_limits<double>::quiet_NaN();
    }
  }
  std::vector<CellFailure> failures;
  if (doc.contains("failures") && doc["failures"].is_array()) {
    for (const json& f : doc["failures"]) {
      failures.push_back({parse_representation(string_field(f, "representation", "")),
                          count_field(f, "point", 0), string_field(f, "message", "")});
    }
  }

  Session s;
  auto map = std::make_shared<SimilarityMap>(assemble_similarity_map(
      std::move(grid), r.metric, r.constraint, r.reps, std::move(raw), std::move(failures), r.normalization));
  s.model_ = std::make_shared<RegionModel>(RegionModel::fit(*map, r.classifier, r.knn, r.svc));
  s.reproducers_ = std::make_shared<ReproducerSet>(r.demo.trajectory, r.reps, r.representation);
  s.map_ = std::move(map);
  s.request_ = std::make_shared<SessionRequest>(std::move(r));
  return s;
}

std::string region_to_json(const Session& session, std::optional<double> robust, int indent) {
  const SimilarityMap& m = session.map();
  const BestSelection best = combine_best(m);
  json scores = json::array();
  for (double v : best.scores) scores.push_back(v);
  json doc = {{"metric", to_string(m.metric)},
              {"representations", labels_json(m.reps)},
              {"grid", grid_json(m.grid)},
              {"labels", labels_json(best.labels)},
              {"best_score", std::move(scores)},
              {"flagged", mask_json(best.flagged)}};
  if (robust) {
    check_threshold(*robust);
    doc["robust"] = {{"threshold", *robust}, {"mask", mask_json(robust_region(m, *robust))}};
  }
  return doc.dump(indent);
}

std::string reproduction_to_json(const ReproductionResult& result, int indent) {
  json doc = {{"representation", to_string(result.rep)},
              {"similarity", result.similarity},
              {"raw_distance", nullable(result.raw_distance)},
              {"trajectory", json::parse(trajectory_to_json({"reproduction", std::string("samlfd/") + to_string(result.rep),
                                                             result.trajectory}))}};
  return doc.dump(indent);
}

}  // namespace samlfd
