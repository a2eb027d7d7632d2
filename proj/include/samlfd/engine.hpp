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

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "samlfd/metrics.hpp"
#include "samlfd/representations.hpp"
#include "samlfd/trajectory.hpp"

namespace samlfd {

/// Axis-aligned grid of candidate boundary points. Points are stored in
/// row-major order: the first coordinate varies slowest.
struct Meshgrid {
  Point center;
  Eigen::VectorXd extent;
  std::size_t resolution = 0;
  std::vector<Point> points;

  std::size_t dims() const noexcept { return static_cast<std::size_t>(center.size()); }
  std::size_t size() const noexcept { return points.size(); }
};

inline constexpr std::size_t kDefaultGridBudget = 100000;

/// resolution^n points spanning [center - extent, center + extent] per axis.
/// Rejects grids larger than `budget`.
Meshgrid build_meshgrid(const Point& center, const Eigen::VectorXd& extent, std::size_t resolution,
                        std::size_t budget = kDefaultGridBudget);

/// Grid centred on the demo's initial (or final) point with a half-width of
/// `extent_fraction` times the demo's bounding-box diagonal on every axis.
Meshgrid default_meshgrid(const Trajectory& demo, ConstraintKind kind, std::size_t resolution = 9,
                          double extent_fraction = 0.25);

enum class NormalizationScope { Joint, PerRepresentation };

const char* to_string(NormalizationScope scope) noexcept;
NormalizationScope parse_normalization_scope(const std::string& name);

struct CellFailure {
  Representation rep;
  std::size_t point;
  std::string message;
};

/// Normalised similarity of every representation at every grid point.
struct SimilarityMap {
  Meshgrid grid;
  MetricId metric = MetricId::Frechet;
  ConstraintKind constraint = ConstraintKind::Initial;
  NormalizationScope normalization = NormalizationScope::Joint;
  /// In precedence order.
  std::vector<Representation> reps;
  /// reps x points; NaN where the reproduction failed.
  Eigen::MatrixXd raw;
  /// reps x points, in [0, 1]; 0 where the reproduction failed.
  Eigen::MatrixXd scores;
  std::vector<Representation> best_label;
  std::vector<double> best_score;
  /// True where every representation failed.
  std::vector<bool> flagged;
  std::vector<CellFailure> failures;

  std::size_t rep_index(Representation rep) const;
  bool has(Representation rep) const;
};

/// Normalises `raw` under `scope` and fills scores and the per-point best.
SimilarityMap assemble_similarity_map(Meshgrid grid, MetricId metric, ConstraintKind constraint,
                                      std::vector<Representation> reps, Eigen::MatrixXd raw,
                                      std::vector<CellFailure> failures,
                                      NormalizationScope scope = NormalizationScope::Joint);

struct GridOptions {
  RepresentationConfig representation;
  MetricOptions metric;
  NormalizationScope normalization = NormalizationScope::Joint;
  /// 0 picks the hardware concurrency.
  unsigned workers = 1;
};

/// Runs `fn(i)` for i in [0, count) on up to `workers` threads. The first
/// exception thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn);

/// One reproduction per (representation, grid point) with the grid point as
/// the constrained endpoint and the demo's other endpoint, scored against the
/// demo. Failures are recorded per cell instead of aborting. The result is
/// bit-identical for every worker count.
SimilarityMap evaluate_grid(const Trajectory& demo, const Meshgrid& grid,
                            std::span<const Representation> reps, MetricId metric,
                            ConstraintKind kind, const GridOptions& options = {});
SimilarityMap evaluate_grid(const Trajectory& demo, const ReproducerSet& reproducers,
                            const Meshgrid& grid, MetricId metric, ConstraintKind kind,
                            const GridOptions& options = {});

struct BestSelection {
  std::vector<Representation> labels;
  std::vector<double> scores;
  std::vector<bool> flagged;
};

/// Per-point argmax of the scores. Exact ties go to the earlier
/// representation in precedence order (JA, LTE, DMP).
BestSelection combine_best(const SimilarityMap& map);

/// True where the best score reaches `threshold` (inclusive).
std::vector<bool> robust_region(const SimilarityMap& map, double threshold);

/// Sum over grid points of (best score - score of `rep`).
double accumulated_similarity_difference(const SimilarityMap& map, Representation rep);

struct ReproductionResult {
  Representation rep;
  Trajectory trajectory;
  double similarity;
  double raw_distance;
};

/// Reproduces with every representation at `point` and returns the one
/// closest to the demo under `metric`. With a session the similarity is
/// normalised against the session's distance range (clamped to [0, 1]);
/// without one it is normalised among the candidates at this point.
ReproductionResult best_reproduction(const Trajectory& demo, const ReproducerSet& reproducers,
                                     const Point& point, ConstraintKind kind, MetricId metric,
                                     const MetricOptions& metric_options = {},
                                     const SimilarityMap* session = nullptr);
ReproductionResult best_reproduction(const Trajectory& demo, const Point& point, ConstraintKind kind,
                                     std::span<const Representation> reps, MetricId metric,
                                     const GridOptions& options = {},
                                     const SimilarityMap* session = nullptr);

}  // namespace samlfd
