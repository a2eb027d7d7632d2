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

#include "samlfd/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>

#include "samlfd/error.hpp"

namespace samlfd {

Meshgrid build_meshgrid(const Point& center, const Eigen::VectorXd& extent, std::size_t resolution,
                        std::size_t budget) {
  if (resolution < 2) fail(ErrorCode::InvalidArgument, "grid resolution must be at least 2");
  if (center.size() < 1 || extent.size() != center.size()) {
    fail(ErrorCode::Dimension, "grid center and extent must have the same non-zero dimension");
  }
  if (!center.allFinite()) fail(ErrorCode::NonFinite, "grid center is not finite");
  for (Eigen::Index d = 0; d < extent.size(); ++d) {
    if (!std::isfinite(extent(d)) || extent(d) <= 0.0) {
      fail(ErrorCode::InvalidArgument, "grid extent must be positive and finite in every dimension");
    }
  }
  const auto dims = static_cast<std::size_t>(center.size());
  double count = std::pow(static_cast<double>(resolution), static_cast<double>(dims));
  if (count > static_cast<double>(budget)) {
    fail(ErrorCode::InvalidArgument,
         "grid of " + std::to_string(resolution) + "^" + std::to_string(dims) + " points exceeds the budget of " +
             std::to_string(budget) +
             "; a coarser grid covers the same region with fewer points, a denser one costs "
             "proportionally more reproductions");
  }

  Meshgrid grid;
  grid.center = center;
  grid.extent = extent;
  grid.resolution = resolution;
  const auto total = static_cast<std::size_t>(count);
  grid.points.reserve(total);
  std::vector<std::size_t> index(dims, 0);
  for (std::size_t p = 0; p < total; ++p) {
    std::size_t rem = p;
    for (std::size_t d = dims; d-- > 0;) {
      index[d] = rem % resolution;
      rem /= resolution;
    }
    Point pt(static_cast<Eigen::Index>(dims));
    for (std::size_t d = 0; d < dims; ++d) {
      const auto di = static_cast<Eigen::Index>(d);
      const double frac = -1.0 + 2.0 * static_cast<double>(index[d]) / static_cast<double>(resolution - 1);
      pt(di) = center(di) + frac * extent(di);
    }
    grid.points.push_back(std::move(pt));
  }
  return grid;
}

Meshgrid default_meshgrid(const Trajectory& demo, ConstraintKind kind, std::size_t resolution,
                          double extent_fraction) {
  if (kind == ConstraintKind::Both) {
    fail(ErrorCode::InvalidArgument, "a meshgrid is centred on either the initial or the final point");
  }
  const double diag = demo.bbox_diagonal();
  if (!(extent_fraction > 0.0) || diag <= 0.0) {
    fail(ErrorCode::InvalidArgument, "grid extent is zero; the demonstration has no spatial extent");
  }
  const Point center = kind == ConstraintKind::Initial ? demo.front() : demo.back();
  const Eigen::VectorXd extent = Eigen::VectorXd::Constant(center.size(), extent_fraction * diag);
  return build_meshgrid(center, extent, resolution);
}

const char* to_string(NormalizationScope scope) noexcept {
  return scope == NormalizationScope::Joint ? "joint" : "per_representation";
}

NormalizationScope parse_normalization_scope(const std::string& name) {
  if (name == "joint") return NormalizationScope::Joint;
  if (name == "per_representation" || name == "per-representation" || name == "per-rep") return NormalizationScope::PerRepresentation;
  fail(ErrorCode::InvalidArgument, "unknown normalization scope '" + name + "'");
}

std::size_t SimilarityMap::rep_index(Representation rep) const {
  auto it = std::find(reps.begin(), reps.end(), rep);
  if (it == reps.end()) {
    fail(ErrorCode::NotFound, std::string("representation '") + to_string(rep) + "' is not in this map");
  }
  return static_cast<std::size_t>(it - reps.begin());
}

bool SimilarityMap::has(Representation rep) const {
  return std::find(reps.begin(), reps.end(), rep) != reps.end();
}

namespace {

Eigen::MatrixXd normalize_scores(const Eigen::MatrixXd& raw, NormalizationScope scope) {
  Eigen::MatrixXd scores = Eigen::MatrixXd::Zero(raw.rows(), raw.cols());
  auto normalize_block = [](const std::vector<double>& values) -> std::vector<double> {
    const bool any_finite = std::any_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
    if (!any_finite) return std::vector<double>(values.size(), 0.0);
    return normalize_similarities(values);
  };
  if (scope == NormalizationScope::Joint) {
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(raw.size()));
    for (Eigen::Index r = 0; r < raw.rows(); ++r)
      for (Eigen::Index c = 0; c < raw.cols(); ++c) flat.push_back(raw(r, c));
    const auto s = normalize_block(flat);
    std::size_t k = 0;
    for (Eigen::Index r = 0; r < raw.rows(); ++r)
      for (Eigen::Index c = 0; c < raw.cols(); ++c) scores(r, c) = s[k++];
  } else {
    for (Eigen::Index r = 0; r < raw.rows(); ++r) {
      std::vector<double> row;
      for (Eigen::Index c = 0; c < raw.cols(); ++c) row.push_back(raw(r, c));
      const auto s = normalize_block(row);
      for (Eigen::Index c = 0; c < raw.cols(); ++c) scores(r, c) = s[static_cast<std::size_t>(c)];
    }
  }
  return scores;
}

}  // namespace

SimilarityMap assemble_similarity_map(Meshgrid grid, MetricId metric, ConstraintKind constraint,
                                      std::vector<Representation> reps, Eigen::MatrixXd raw,
                                      std::vector<CellFailure> failures, NormalizationScope scope) {
  if (reps.empty()) fail(ErrorCode::InvalidArgument, "similarity map needs at least one representation");
  if (raw.rows() != static_cast<Eigen::Index>(reps.size()) ||
      raw.cols() != static_cast<Eigen::Index>(grid.size())) {
    fail(ErrorCode::Dimension, "raw distance matrix does not match representations x grid points");
  }
  if (!std::is_sorted(reps.begin(), reps.end()) ||
      std::adjacent_find(reps.begin(), reps.end()) != reps.end()) {
    fail(ErrorCode::InvalidArgument, "representations must be unique and in precedence order");
  }
  SimilarityMap map;
  map.grid = std::move(grid);
  map.metric = metric;
  map.constraint = constraint;
  map.normalization = scope;
  map.reps = std::move(reps);
  map.raw = std::move(raw);
  map.failures = std::move(failures);
  map.scores = normalize_scores(map.raw, scope);
  auto best = combine_best(map);
  map.best_label = std::move(best.labels);
  map.best_score = std::move(best.scores);
  map.flagged = std::move(best.flagged);
  return map;
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

SimilarityMap evaluate_grid(const Trajectory& demo, const ReproducerSet& reproducers,
                            const Meshgrid& grid, MetricId metric, ConstraintKind kind,
                            const GridOptions& options) {
  if (kind == ConstraintKind::Both) {
    fail(ErrorCode::InvalidArgument, "grid points constrain either the initial or the final point");
  }
  if (grid.dims() != demo.dims()) {
    fail(ErrorCode::Dimension, "grid dimension does not match the demonstration");
  }
  const auto& reps = reproducers.representations();
  const std::size_t nr = reps.size();
  const std::size_t np = grid.size();
  Eigen::MatrixXd raw(static_cast<Eigen::Index>(nr), static_cast<Eigen::Index>(np));
  std::vector<std::string> errors(nr * np);

  parallel_for(nr * np, options.workers, [&](std::size_t cell) {
    const std::size_t r = cell / np;
    const std::size_t p = cell % np;
    double value = std::numeric_limits<double>::quiet_NaN();
    try {
      const Trajectory rep = reproducers.reproduce(reps[r], BoundaryConstraint::at(kind, grid.points[p]));
      value = distance(metric, rep, demo, options.metric);
      if (!std::isfinite(value)) {
        errors[cell] = "metric returned a non-finite distance";
        value = std::numeric_limits<double>::quiet_NaN();
      }
    } catch (const std::exception& e) {
      errors[cell] = e.what();
    }
    raw(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(p)) = value;
  });

  std::vector<CellFailure> failures;
  for (std::size_t cell = 0; cell < errors.size(); ++cell) {
    if (!errors[cell].empty()) failures.push_back({reps[cell / np], cell % np, errors[cell]});
  }
  return assemble_similarity_map(grid, metric, kind, reps, std::move(raw), std::move(failures),
                                 options.normalization);
}

SimilarityMap evaluate_grid(const Trajectory& demo, const Meshgrid& grid,
                            std::span<const Representation> reps, MetricId metric,
                            ConstraintKind kind, const GridOptions& options) {
  const ReproducerSet reproducers(demo, reps, options.representation);
  return evaluate_grid(demo, reproducers, grid, metric, kind, options);
}

BestSelection combine_best(const SimilarityMap& map) {
  const auto np = static_cast<std::size_t>(map.scores.cols());
  BestSelection out;
  out.labels.reserve(np);
  out.scores.reserve(np);
  out.flagged.reserve(np);
  for (std::size_t p = 0; p < np; ++p) {
    const auto col = static_cast<Eigen::Index>(p);
    std::size_t best = 0;
    bool all_failed = true;
    // Under joint scope the argmax of the scores is the argmin of the raw
    // distances; comparing raw values keeps distinct distances distinct even
    // when normalisation rounds their scores to the same double.
    const bool by_raw = map.normalization == NormalizationScope::Joint && map.raw.size() != 0;
    for (std::size_t r = 0; r < map.reps.size(); ++r) {
      const auto row = static_cast<Eigen::Index>(r);
      const auto cur = static_cast<Eigen::Index>(best);
      if (map.raw.size() != 0 && std::isfinite(map.raw(row, col))) all_failed = false;
      if (by_raw) {
        const double d = map.raw(row, col);
        const double d_best = map.raw(cur, col);
        if (std::isfinite(d) && (!std::isfinite(d_best) || d < d_best)) best = r;
      } else if (map.scores(row, col) > map.scores(cur, col)) {
        best = r;
      }
    }
    out.labels.push_back(map.reps[best]);
    out.scores.push_back(map.scores(static_cast<Eigen::Index>(best), col));
    out.flagged.push_back(all_failed);
  }
  return out;
}

std::vector<bool> robust_region(const SimilarityMap& map, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    fail(ErrorCode::InvalidArgument, "robust threshold must lie in [0, 1]");
  }
  std::vector<bool> mask;
  mask.reserve(map.best_score.size());
  for (double s : map.best_score) mask.push_back(s >= threshold);
  return mask;
}

double accumulated_similarity_difference(const SimilarityMap& map, Representation rep) {
  const auto row = static_cast<Eigen::Index>(map.rep_index(rep));
  double total = 0.0;
  for (std::size_t p = 0; p < map.best_score.size(); ++p) {
    total += map.best_score[p] - map.scores(row, static_cast<Eigen::Index>(p));
  }
  return total;
}

ReproductionResult best_reproduction(const Trajectory& demo, const ReproducerSet& reproducers,
                                     const Point& point, ConstraintKind kind, MetricId metric,
                                     const MetricOptions& metric_options,
                                     const SimilarityMap* session) {
  struct Candidate {
    Representation rep;
    std::optional<Trajectory> traj;
    double distance = std::numeric_limits<double>::quiet_NaN();
  };
  std::vector<Candidate> candidates;
  std::string failures;
  const auto constraint = BoundaryConstraint::at(kind, point);
  for (Representation rep : reproducers.representations()) {
    Candidate c{rep, std::nullopt};
    try {
      c.traj = reproducers.reproduce(rep, constraint);
      c.distance = distance(metric, *c.traj, demo, metric_options);
      if (!std::isfinite(c.distance)) fail(ErrorCode::Computation, "non-finite distance");
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Dimension) throw;
      failures += std::string(failures.empty() ? "" : "; ") + to_string(rep) + ": " + e.what();
      c.traj.reset();
    }
    if (c.traj) candidates.push_back(std::move(c));
  }
  if (candidates.empty()) {
    fail(ErrorCode::Computation, "every representation failed at the query point (" + failures + ")");
  }
  // Strict comparison keeps the earliest representation on exact ties.
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].distance < candidates[best].distance) best = i;
  }

  double similarity = 1.0;
  const double d = candidates[best].distance;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  auto widen = [&](double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  if (session != nullptr && session->raw.size() > 0) {
    if (session->normalization == NormalizationScope::PerRepresentation &&
        session->has(candidates[best].rep)) {
      const auto row = static_cast<Eigen::Index>(session->rep_index(candidates[best].rep));
      for (Eigen::Index c = 0; c < session->raw.cols(); ++c) widen(session->raw(row, c));
    } else {
      for (Eigen::Index r = 0; r < session->raw.rows(); ++r)
        for (Eigen::Index c = 0; c < session->raw.cols(); ++c) widen(session->raw(r, c));
    }
  } else {
    for (const auto& c : candidates) widen(c.distance);
  }
  widen(d);
  if (hi > lo) similarity = std::clamp((hi - d) / (hi - lo), 0.0, 1.0);

  return ReproductionResult{candidates[best].rep, std::move(*candidates[best].traj), similarity, d};
}

ReproductionResult best_reproduction(const Trajectory& demo, const Point& point, ConstraintKind kind,
                                     std::span<const Representation> reps, MetricId metric,
                                     const GridOptions& options, const SimilarityMap* session) {
  const ReproducerSet reproducers(demo, reps, options.representation);
  return best_reproduction(demo, reproducers, point, kind, metric, options.metric, session);
}

}  // namespace samlfd
