/*
 * Copyright 2026 The samlfd Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the samlfd library.
 *
 * Every fallible call returns a samlfd_status. On failure a message is kept
 * per thread and can be read with samlfd_last_error() until the next call on
 * that thread. Strings returned through char** outputs are heap allocated and
 * must be released with samlfd_string_free(). Handles are opaque; a session
 * handle is immutable after creation and may be queried from many threads.
 */

#ifndef SAMLFD_SAMLFD_H_
#define SAMLFD_SAMLFD_H_

#include <stddef.h>

#if defined(_WIN32)
#define SAMLFD_API __declspec(dllexport)
#else
#define SAMLFD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum samlfd_status {
  SAMLFD_OK = 0,
  SAMLFD_ERR_INVALID_ARGUMENT = 1,
  SAMLFD_ERR_PARSE = 2,
  SAMLFD_ERR_DIMENSION = 3,
  SAMLFD_ERR_NON_FINITE = 4,
  SAMLFD_ERR_IO = 5,
  SAMLFD_ERR_SINGULAR = 6,
  SAMLFD_ERR_COMPUTATION = 7,
  SAMLFD_ERR_NOT_FOUND = 8,
  SAMLFD_ERR_INTERNAL = 9
} samlfd_status;

typedef struct samlfd_trajectory samlfd_trajectory;
typedef struct samlfd_session samlfd_session;
typedef struct samlfd_corpus samlfd_corpus;

SAMLFD_API const char* samlfd_version(void);
SAMLFD_API const char* samlfd_status_string(samlfd_status status);
/* Message of the last failed call on this thread, or "" */
SAMLFD_API const char* samlfd_last_error(void);
SAMLFD_API void samlfd_string_free(char* s);

/* JSON arrays of the metric ids and representation labels. */
SAMLFD_API samlfd_status samlfd_metric_ids(char** out_json);
SAMLFD_API samlfd_status samlfd_representation_labels(char** out_json);

/* ---- trajectories ---- */

/* `samples` is row-major, rows x dims with dims 2 or 3. */
SAMLFD_API samlfd_status samlfd_trajectory_create(const double* samples, size_t rows, size_t dims,
                                                  double duration, samlfd_trajectory** out);
/* ".json" files are trajectory JSON, anything else CSV. No preprocessing. */
SAMLFD_API samlfd_status samlfd_trajectory_load(const char* path, samlfd_trajectory** out);
SAMLFD_API samlfd_status samlfd_trajectory_from_json(const char* json, samlfd_trajectory** out);
SAMLFD_API samlfd_status samlfd_trajectory_bundled(const char* name, samlfd_trajectory** out);
/* Moving-average smoothing then uniform resampling. */
SAMLFD_API samlfd_status samlfd_trajectory_preprocess(const samlfd_trajectory* traj, size_t window,
                                                      size_t length, samlfd_trajectory** out);
SAMLFD_API size_t samlfd_trajectory_rows(const samlfd_trajectory* traj);
SAMLFD_API size_t samlfd_trajectory_dims(const samlfd_trajectory* traj);
/* Copies rows*dims values; fails if `capacity` is smaller. */
SAMLFD_API samlfd_status samlfd_trajectory_copy_samples(const samlfd_trajectory* traj, double* out,
                                                        size_t capacity);
SAMLFD_API samlfd_status samlfd_trajectory_to_json(const samlfd_trajectory* traj, char** out_json);
SAMLFD_API samlfd_status samlfd_trajectory_save(const samlfd_trajectory* traj, const char* path);
SAMLFD_API void samlfd_trajectory_free(samlfd_trajectory* traj);

/* ---- single computations ---- */

SAMLFD_API samlfd_status samlfd_distance(const char* metric_id, const samlfd_trajectory* a,
                                         const samlfd_trajectory* b, double* out);
/* Reproduces `demo` with one representation ("ja", "lte", "dmp") using
 * default parameters. A NULL endpoint keeps the demo's. */
SAMLFD_API samlfd_status samlfd_reproduce(const samlfd_trajectory* demo, const char* representation,
                                          const double* initial_point, const double* final_point,
                                          size_t dims, samlfd_trajectory** out);

/* ---- sessions ---- */

/* Computes a similarity session from a request document (see README). */
SAMLFD_API samlfd_status samlfd_session_create(const char* request_json, samlfd_session** out);
/* Restores a session from the JSON written by samlfd_session_to_json. */
SAMLFD_API samlfd_status samlfd_session_load(const char* session_json, samlfd_session** out);
/* indent < 0 gives compact output. */
SAMLFD_API samlfd_status samlfd_session_to_json(const samlfd_session* session, int indent, char** out_json);
/* robust < 0 leaves the robust mask out. */
SAMLFD_API samlfd_status samlfd_session_region_json(const samlfd_session* session, double robust,
                                                    char** out_json);
/* Best reproduction at `point`, evaluated exactly, as JSON. */
SAMLFD_API samlfd_status samlfd_session_reproduce(const samlfd_session* session, const double* point,
                                                  size_t dims, char** out_json);
/* Label predicted by the session's region classifier; a static string. */
SAMLFD_API samlfd_status samlfd_session_predict(const samlfd_session* session, const double* point,
                                                size_t dims, const char** out_label);
SAMLFD_API samlfd_status samlfd_session_delta(const samlfd_session* session, const char* representation,
                                              double* out);
SAMLFD_API samlfd_status samlfd_session_write_png(const samlfd_session* session, const char* path,
                                                  double robust);
SAMLFD_API size_t samlfd_session_grid_size(const samlfd_session* session);
SAMLFD_API void samlfd_session_free(samlfd_session* session);

/* ---- bias study ---- */

SAMLFD_API samlfd_status samlfd_corpus_bundled(samlfd_corpus** out);
/* Every *.csv in `dir`; skipped files are reported through `out_warnings_json`
 * (a JSON array, may be NULL). */
SAMLFD_API samlfd_status samlfd_corpus_load_lasa(const char* dir, samlfd_corpus** out,
                                                 char** out_warnings_json);
SAMLFD_API size_t samlfd_corpus_size(const samlfd_corpus* corpus);
SAMLFD_API void samlfd_corpus_free(samlfd_corpus* corpus);

typedef struct samlfd_bias_config {
  size_t resolution;
  double tie_margin;
  double extent_fraction;
  double decision_threshold;
  unsigned workers;
} samlfd_bias_config;

SAMLFD_API void samlfd_bias_config_default(samlfd_bias_config* config);
/* `metrics_csv` NULL or "" selects every metric. Any output pointer may be
 * NULL. The JSON output lists one record per metric with shares, counts and
 * the decision. */
SAMLFD_API samlfd_status samlfd_bias_study(const samlfd_corpus* corpus, const char* metrics_csv,
                                           const samlfd_bias_config* config, char** out_csv,
                                           char** out_markdown, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* SAMLFD_SAMLFD_H_ */
