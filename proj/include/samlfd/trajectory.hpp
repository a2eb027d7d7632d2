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
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace samlfd {

using Point = Eigen::VectorXd;
/// One sample per row.
using SampleMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// A uniformly time-indexed sequence of 2-D or 3-D samples. Sample t sits at
/// time t * duration / (size() - 1). Immutable once constructed.
class Trajectory {
 public:
  /// Validates the sample matrix: at least 2 rows, 2 or 3 columns, all finite,
  /// positive finite duration. Throws samlfd::Error otherwise.
  explicit Trajectory(SampleMatrix samples, double duration = 1.0);

  std::size_t size() const noexcept { return static_cast<std::size_t>(samples_.rows()); }
  std::size_t dims() const noexcept { return static_cast<std::size_t>(samples_.cols()); }
  double duration() const noexcept { return duration_; }
  /// Time step between consecutive samples.
  double step() const noexcept { return duration_ / static_cast<double>(size() - 1); }

  const SampleMatrix& samples() const noexcept { return samples_; }
  Point sample(std::size_t i) const { return samples_.row(static_cast<Eigen::Index>(i)).transpose(); }
  Point front() const { return sample(0); }
  Point back() const { return sample(size() - 1); }

  /// Diagonal length of the axis-aligned bounding box.
  double bbox_diagonal() const;

  Trajectory translated(const Point& offset) const;
  Trajectory scaled(double factor) const;

  friend bool operator==(const Trajectory& a, const Trajectory& b) {
    return a.duration_ == b.duration_ && a.samples_.rows() == b.samples_.rows() &&
           a.samples_.cols() == b.samples_.cols() && a.samples_ == b.samples_;
  }

 private:
  SampleMatrix samples_;
  double duration_;
};

enum class ConstraintKind { Initial, Final, Both };

/// Endpoint constraint for a reproduction. Construct through the factory
/// functions so the kind and the stored points always agree.
class BoundaryConstraint {
 public:
  static BoundaryConstraint initial(Point p);
  static BoundaryConstraint final_point(Point p);
  static BoundaryConstraint both(Point initial, Point final);
  /// Pins the grid point as the endpoint named by `kind`.
  static BoundaryConstraint at(ConstraintKind kind, Point p);

  ConstraintKind kind() const noexcept { return kind_; }
  const std::optional<Point>& initial_point() const noexcept { return initial_; }
  const std::optional<Point>& final_point_value() const noexcept { return final_; }

  /// Both endpoints, taking the demonstration's endpoint wherever this
  /// constraint leaves one free. Throws on dimension mismatch.
  std::pair<Point, Point> resolve(const Trajectory& demo) const;

 private:
  BoundaryConstraint(ConstraintKind kind, std::optional<Point> initial, std::optional<Point> final)
      : kind_(kind), initial_(std::move(initial)), final_(std::move(final)) {}

  ConstraintKind kind_;
  std::optional<Point> initial_;
  std::optional<Point> final_;
};

const char* to_string(ConstraintKind kind) noexcept;
ConstraintKind parse_constraint_kind(const std::string& name);

/// Linear interpolation at uniformly spaced fractional indices. Endpoints are
/// copied exactly.
Trajectory resample_uniform(const Trajectory& traj, std::size_t target_len);

/// Centered moving average. Near the ends the window shrinks symmetrically so
/// the first and last samples are left untouched.
Trajectory smooth_moving_average(const Trajectory& traj, std::size_t window);

double arc_length(const Trajectory& traj);

/// Resamples to `target_len` samples spaced evenly along the polyline.
Trajectory resample_arc_length(const Trajectory& traj, std::size_t target_len);

struct PreprocessConfig {
  std::size_t smooth_window = 5;
  std::size_t target_len = 100;
};

/// Default ingestion pipeline: smooth, then resample. The smoothing window is
/// clamped to the largest odd value not exceeding the input length.
Trajectory preprocess(const Trajectory& raw, const PreprocessConfig& config = {});

}  // namespace samlfd
