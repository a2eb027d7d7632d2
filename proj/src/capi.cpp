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


#include "samlfd/samlfd.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "json.hpp"
#include "samlfd/bias_study.hpp"
#include "samlfd/dataset_io.hpp"
#include "samlfd/error.hpp"
#include "samlfd/session.hpp"

struct samlfd_trajectory {
  samlfd::NamedTrajectory value;
};

struct samlfd_session {
  samlfd::Session value;
};

struct samlfd_corpus {
  std::vector<samlfd::NamedTrajectory> shapes;
};

namespace {

thread_local std::string last_error;

samlfd_status status_for(samlfd::ErrorCode code) {
  using samlfd::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return SAMLFD_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return SAMLFD_ERR_PARSE;
    case ErrorCode::Dimension: return SAMLFD_ERR_DIMENSION;
    case ErrorCode::NonFinite: return SAMLFD_ERR_NON_FINITE;
    case ErrorCode::Io: return SAMLFD_ERR_IO;
    case ErrorCode::Singular: return SAMLFD_ERR_SINGULAR;
    case ErrorCode::Computation: return SAMLFD_ERR_COMPUTATION;
    case ErrorCode::NotFound: return SAMLFD_ERR_NOT_FOUND;
  }
  return SAMLFD_ERR_INTERNAL;
}

template <typename Fn>
samlfd_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return SAMLFD_OK;
  } catch (const samlfd::Error& e) {
    last_error = e.what();
    return status_for(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SAMLFD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SAMLFD_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) samlfd::fail(samlfd::ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

samlfd::Point point_from(const double* p, std::size_t dims) {
  require(p, "point");
  if (dims != 2 && dims != 3) samlfd::fail(samlfd::ErrorCode::Dimension, "points have 2 or 3 coordinates");
  return Eigen::Map<const Eigen::VectorXd>(p, static_cast<Eigen::Index>(dims));
}

}  // namespace

extern "C" {

const char* samlfd_version(void) { return "1.0.0"; }

const char* samlfd_status_string(samlfd_status status) {
  switch (status) {
    case SAMLFD_OK: return "ok";
    case SAMLFD_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SAMLFD_ERR_PARSE: return "parse error";
    case SAMLFD_ERR_DIMENSION: return "dimension mismatch";
    case SAMLFD_ERR_NON_FINITE: return "non-finite value";
    case SAMLFD_ERR_IO: return "i/o error";
    case SAMLFD_ERR_SINGULAR: return "singular system";
    case SAMLFD_ERR_COMPUTATION: return "computation failed";
    case SAMLFD_ERR_NOT_FOUND: return "not found";
    case SAMLFD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* samlfd_last_error(void) { return last_error.c_str(); }

void samlfd_string_free(char* s) { std::free(s); }

samlfd_status samlfd_metric_ids(char** out_json) {
  return guarded([&] {
    require(out_json, "out_json");
    nlohmann::json ids = nlohmann::json::array();
    for (samlfd::MetricId m : samlfd::kAllMetrics) ids.push_back(samlfd::to_string(m));
    *out_json = dup_string(ids.dump());
  });
}

samlfd_status samlfd_representation_labels(char** out_json) {
  return guarded([&] {
    require(out_json, "out_json");
    nlohmann::json labels = nlohmann::json::array();
    for (samlfd::Representation r : samlfd::kAllRepresentations) labels.push_back(samlfd::to_string(r));
    *out_json = dup_string(labels.dump());
  });
}

samlfd_status samlfd_trajectory_create(const double* samples, size_t rows, size_t dims, double duration,
                                       samlfd_trajectory** out) {
  return guarded([&] {
    require(samples, "samples");
    require(out, "out");
    if (dims != 2 && dims != 3) samlfd::fail(samlfd::ErrorCode::Dimension, "trajectories have 2 or 3 columns");
    samlfd::SampleMatrix m = Eigen::Map<const samlfd::SampleMatrix>(samples, static_cast<Eigen::Index>(rows),
                                                                    static_cast<Eigen::Index>(dims));
    *out = new samlfd_trajectory{{"trajectory", "", samlfd::Trajectory(std::move(m), duration)}};
  });
}

samlfd_status samlfd_trajectory_load(const char* path, samlfd_trajectory** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new samlfd_trajectory{samlfd::load_named_trajectory(path)};
  });
}

samlfd_status samlfd_trajectory_from_json(const char* json, samlfd_trajectory** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new samlfd_trajectory{samlfd::trajectory_from_json(json)};
  });
}

samlfd_status samlfd_trajectory_bundled(const char* name, samlfd_trajectory** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = new samlfd_trajectory{samlfd::bundled_shape(name)};
  });
}

samlfd_status samlfd_trajectory_preprocess(const samlfd_trajectory* traj, size_t window, size_t length,
                                           samlfd_trajectory** out) {
  return guarded([&] {
    require(traj, "traj");
    require(out, "out");
    samlfd::NamedTrajectory copy = traj->value;
    copy.trajectory = samlfd::preprocess(copy.trajectory, samlfd::PreprocessConfig{window, length});
    *out = new samlfd_trajectory{std::move(copy)};
  });
}

size_t samlfd_trajectory_rows(const samlfd_trajectory* traj) { return traj ? traj->value.trajectory.size() : 0; }

size_t samlfd_trajectory_dims(const samlfd_trajectory* traj) { return traj ? traj->value.trajectory.dims() : 0; }

samlfd_status samlfd_trajectory_copy_samples(const samlfd_trajectory* traj, double* out, size_t capacity) {
  return guarded([&] {
    require(traj, "traj");
    require(out, "out");
    const auto& s = traj->value.trajectory.samples();
    if (capacity < static_cast<size_t>(s.size())) {
      samlfd::fail(samlfd::ErrorCode::InvalidArgument,
                   "output buffer holds " + std::to_string(capacity) + " values, need " + std::to_string(s.size()));
    }
    std::copy(s.data(), s.data() + s.size(), out);
  });
}

samlfd_status samlfd_trajectory_to_json(const samlfd_trajectory* traj, char** out_json) {
  return guarded([&] {
    require(traj, "traj");
    require(out_json, "out_json");
    *out_json = dup_string(samlfd::trajectory_to_json(traj->value));
  });
}

samlfd_status samlfd_trajectory_save(const samlfd_trajectory* traj, const char* path) {
  return guarded([&] {
    require(traj, "traj");
    require(path, "path");
    samlfd::save_trajectory(traj->value, path);
  });
}

void samlfd_trajectory_free(samlfd_trajectory* traj) { delete traj; }

samlfd_status samlfd_distance(const char* metric_id, const samlfd_trajectory* a, const samlfd_trajectory* b,
                              double* out) {
  return guarded([&] {
    require(metric_id, "metric_id");
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = samlfd::distance(samlfd::parse_metric(metric_id), a->value.trajectory, b->value.trajectory);
  });
}

samlfd_status samlfd_reproduce(const samlfd_trajectory* demo, const char* representation, const double* initial_point,
                               const double* final_point, size_t dims, samlfd_trajectory** out) {
  return guarded([&] {
    require(demo, "demo");
    require(representation, "representation");
    require(out, "out");
    const samlfd::Representation rep = samlfd::parse_representation(representation);
    const samlfd::Trajectory& d = demo->value.trajectory;
    if ((initial_point || final_point) && dims != d.dims()) {
      samlfd::fail(samlfd::ErrorCode::Dimension, "constraint points must match the demonstration's dimension");
    }
    const samlfd::Point start = initial_point ? point_from(initial_point, dims) : d.front();
    const samlfd::Point goal = final_point ? point_from(final_point, dims) : d.back();
    const samlfd::Representation one[] = {rep};
    const samlfd::ReproducerSet reproducers(d, one);
    *out = new samlfd_trajectory{{std::string("reproduction"), std::string("samlfd/") + representation,
                                  reproducers.reproduce(rep, samlfd::BoundaryConstraint::both(start, goal))}};
  });
}

samlfd_status samlfd_session_create(const char* request_json, samlfd_session** out) {
  return guarded([&] {
    require(request_json, "request_json");
    require(out, "out");
    *out = new samlfd_session{samlfd::Session::compute(samlfd::session_request_from_json(request_json))};
  });
}

samlfd_status samlfd_session_load(const char* session_json, samlfd_session** out) {
  return guarded([&] {
    require(session_json, "session_json");
    require(out, "out");
    *out = new samlfd_session{samlfd::Session::from_json(session_json)};
  });
}

samlfd_status samlfd_session_to_json(const samlfd_session* session, int indent, char** out_json) {
  return guarded([&] {
    require(session, "session");
    require(out_json, "out_json");
    *out_json = dup_string(session->value.to_json(indent < 0 ? -1 : indent));
  });
}

samlfd_status samlfd_session_region_json(const samlfd_session* session, double robust, char** out_json) {
  return guarded([&] {
    require(session, "session");
    require(out_json, "out_json");
    std::optional<double> threshold;
    if (robust >= 0.0) threshold = robust;
    *out_json = dup_string(samlfd::region_to_json(session->value, threshold));
  });
}

samlfd_status samlfd_session_reproduce(const samlfd_session* session, const double* point, size_t dims,
                                       char** out_json) {
  return guarded([&] {
    require(session, "session");
    require(out_json, "out_json");
    *out_json = dup_string(samlfd::reproduction_to_json(session->value.reproduce(point_from(point, dims))));
  });
}

samlfd_status samlfd_session_predict(const samlfd_session* session, const double* point, size_t dims,
                                     const char** out_label) {
  return guarded([&] {
    require(session, "session");
    require(out_label, "out_label");
    *out_label = samlfd::to_string(session->value.region_model().predict(point_from(point, dims)));
  });
}

samlfd_status samlfd_session_delta(const samlfd_session* session, const char* representation, double* out) {
  return guarded([&] {
    require(session, "session");
    require(representation, "representation");
    require(out, "out");
    *out = samlfd::accumulated_similarity_difference(session->value.map(),
                                                     samlfd::parse_representation(representation));
  });
}

samlfd_status samlfd_session_write_png(const samlfd_session* session, const char* path, double robust) {
  return guarded([&] {
    require(session, "session");
    require(path, "path");
    std::optional<double> threshold;
    if (robust >= 0.0) threshold = robust;
    samlfd::write_region_png(session->value.map(), path, threshold);
  });
}

size_t samlfd_session_grid_size(const samlfd_session* session) {
  return session ? session->value.map().grid.size() : 0;
}

void samlfd_session_free(samlfd_session* session) { delete session; }

samlfd_status samlfd_corpus_bundled(samlfd_corpus** out) {
  return guarded([&] {
    require(out, "out");
    *out = new samlfd_corpus{samlfd::bundled_corpus()};
  });
}

samlfd_status samlfd_corpus_load_lasa(const char* dir, samlfd_corpus** out, char** out_warnings_json) {
  return guarded([&] {
    require(dir, "dir");
    require(out, "out");
    samlfd::IngestReport report = samlfd::ingest_lasa_csv(dir);
    if (report.corpus.empty()) {
      samlfd::fail(samlfd::ErrorCode::NotFound, std::string("no usable CSV demonstrations in '") + dir + "'");
    }
    if (out_warnings_json) *out_warnings_json = dup_string(nlohmann::json(report.warnings).dump());
    *out = new samlfd_corpus{std::move(report.corpus)};
  });
}

size_t samlfd_corpus_size(const samlfd_corpus* corpus) { return corpus ? corpus->shapes.size() : 0; }

void samlfd_corpus_free(samlfd_corpus* corpus) { delete corpus; }

void samlfd_bias_config_default(samlfd_bias_config* config) {
  if (config == nullptr) return;
  const samlfd::BiasStudyConfig defaults;
  config->resolution = defaults.resolution;
  config->tie_margin = defaults.tie_margin;
  config->extent_fraction = defaults.extent_fraction;
  config->decision_threshold = defaults.decision_threshold;
  config->workers = defaults.workers;
}

samlfd_status samlfd_bias_study(const samlfd_corpus* corpus, const char* metrics_csv,
                                const samlfd_bias_config* config, char** out_csv, char** out_markdown,
                                char** out_json) {
  return guarded([&] {
    require(corpus, "corpus");
    samlfd::BiasStudyConfig cfg;
    if (config) {
      cfg.resolution = config->resolution;
      cfg.tie_margin = config->tie_margin;
      cfg.extent_fraction = config->extent_fraction;
      cfg.decision_threshold = config->decision_threshold;
      cfg.workers = config->workers;
    }
    const std::vector<samlfd::MetricId> metrics = samlfd::parse_metric_list(metrics_csv ? metrics_csv : "");
    const std::vector<samlfd::BiasRecord> records = samlfd::run_bias_study(corpus->shapes, metrics, cfg);
    nlohmann::json doc = nlohmann::json::array();
    for (const samlfd::BiasRecord& r : records) {
      doc.push_back({{"metric", samlfd::to_string(r.metric)},
                     {"ja", r.ja_share},
                     {"lte", r.lte_share},
                     {"inconclusive", r.inconclusive_share},
                     {"decision", samlfd::to_string(r.decision)},
                     {"counted", r.counted},
                     {"excluded", r.excluded},
                     {"diagnostics", r.diagnostics}});
    }
    // Allocate every output before handing any out so a failure leaks nothing.
    std::string csv = samlfd::bias_table_csv(records);
    std::string md = samlfd::bias_table_markdown(records);
    std::string js = doc.dump();
    char* c = out_csv ? dup_string(csv) : nullptr;
    char* m = nullptr;
    char* j = nullptr;
    try {
      m = out_markdown ? dup_string(md) : nullptr;
      j = out_json ? dup_string(js) : nullptr;
    } catch (...) {
      std::free(c);
      std::free(m);
      throw;
    }
    if (out_csv) *out_csv = c;
    if (out_markdown) *out_markdown = m;
    if (out_json) *out_json = j;
  });
}

}  // extern "C"
