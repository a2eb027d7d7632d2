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

#include <array>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "samlfd/classifier.hpp"
#include "samlfd/dataset_io.hpp"
#include "samlfd/engine.hpp"

namespace samlfd {

inline constexpr int kSessionSchemaVersion = 1;

/// Everything needed to compute a similarity session. Worker count only
/// affects speed, never the result, and is not serialized.
struct SessionRequest {
  NamedTrajectory demo{"demo", "", Trajectory(SampleMatrix::Zero(2, 2))};
  MetricId metric = MetricId::Frechet;
  ConstraintKind constraint = ConstraintKind::Initial;
  std::vector<Representation> reps{Representation::JA, Representation::LTE, Representation::DMP};
  NormalizationScope normalization = NormalizationScope::Joint;
  std::size_t resolution = 9;
  double extent_fraction = 0.25;
  RepresentationConfig representation;
  MetricOptions metric_options;
  ClassifierKind classifier = ClassifierKind::KNN;
  KnnParams knn;
  SvcParams svc;
  /// Adds the robust mask to the serialized session when set.
  std::optional<double> robust;
  unsigned workers = 1;
};

/// Request body accepted by the service and the library:
///   {"demo": <trajectory JSON object> | "shape": "<bundled name>",
///    "preprocess": bool (default true for "demo"),
///    "metric": id, "constraint": "initial"|"final",
///    "representations": ["ja", ...] | "ja,lte", "normalization": "joint"|"per_representation",
///    "resolution": int, "extent_fraction": number, "classifier": "knn"|"csvc",
///    "robust": number, "ja": {"lambda", "constraint_weight"}, "lte": {"constraint_weight"},
///    "dmp": {"stiffness", "alpha_s", "num_basis", "tau"}, "knn": {"k"}, "svc": {"c", "gamma"},
///    "endpoint_fraction": number, "workers": int}
/// Every field except the demo is optional.
SessionRequest session_request_from_json(const std::string& text);

/// A computed similarity session: the map, the fitted region model and the
/// representation models used for point queries. Immutable once built.
class Session {
 public:
  static Session compute(SessionRequest request);
  /// Restores a session from its serialized form. The map is taken as stored;
  /// models are refitted from the stored demo and configuration.
  static Session from_json(const std::string& text);

  const SessionRequest& request() const noexcept { return *request_; }
  const SimilarityMap& map() const noexcept { return *map_; }
  const RegionModel& region_model() const noexcept { return *model_; }

  /// Exact evaluation of every representation at `point`.
  ReproductionResult reproduce(const Point& point) const;

  /// Document with the grid, per-representation scores and raw distances in
  /// grid order (NaN as null), labels, failures, optional robust mask and the
  /// demo.
  std::string to_json(int indent = -1) const;

 private:
  Session() = default;
  std::shared_ptr<const SessionRequest> request_;
  std::shared_ptr<const SimilarityMap> map_;
  std::shared_ptr<const RegionModel> model_;
  std::shared_ptr<const ReproducerSet> reproducers_;
};

/// {"labels": [...], "best_score": [...], "flagged": [...],
///  "robust": {"threshold", "mask"} (when requested), "grid": {...}}
std::string region_to_json(const Session& session, std::optional<double> robust, int indent = -1);

/// {"representation", "similarity", "raw_distance", "trajectory": {...}}
std::string reproduction_to_json(const ReproductionResult& result, int indent = -1);

/// Renders best labels as a PNG, one square block per grid cell, first axis
/// horizontal. 3-D grids show the middle slice of the last axis. With a
/// threshold, cells below it are drawn grey.
void write_region_png(const SimilarityMap& map, const std::filesystem::path& path,
                      std::optional<double> robust = std::nullopt, int cell_pixels = 16);

/// RGB colour per representation: JA red, LTE green, DMP blue.
std::array<unsigned char, 3> representation_color(Representation rep) noexcept;

}  // namespace samlfd
