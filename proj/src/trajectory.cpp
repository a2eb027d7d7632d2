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

#include "samlfd/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "samlfd/error.hpp"

namespace samlfd {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Dimension: return "dimension";
    case ErrorCode::NonFinite: return "non_finite";
    case ErrorCode::Io: return "io";
    case ErrorCode::Singular: return "singular";
    case ErrorCode::Computation: return "computation";
    case ErrorCode::NotFound: return "not_found";
  }
  return "unknown";
}

Trajectory::Trajectory(SampleMatrix samples, double duration)
    : samples_(std::move(samples)), duration_(duration) {
  if (samples_.rows() < 2) {
    fail(ErrorCode::InvalidArgument, "trajectory needs at least 2 samples, got " +
                                         std::to_string(samples_.rows()));
  }
  if (samples_.cols() != 2 && samples_.cols() != 3) {
    fail(ErrorCode::Dimension,
         "trajectory samples must be 2-D or 3-D, got " + std::to_string(samples_.cols()));
  }
  if (!samples_.allFinite()) {
    fail(ErrorCode::NonFinite, "trajectory contains non-finite coordinates");
  }
  if (!std::isfinite(duration_) || duration_ <= 0.0) {
    fail(ErrorCode::InvalidArgument, "trajectory duration must be positive and finite");
  }
}

double Trajectory::bbox_diagonal() const {
  return (samples_.colwise().maxCoeff() - samples_.colwise().minCoeff()).norm();
}

Trajectory Trajectory::translated(const Point& offset) const {
  if (static_cast<std::size_t>(offset.size()) != dims()) {
    fail(ErrorCode::Dimension, "translation offset dimension does not match trajectory");
  }
  SampleMatrix moved = samples_.rowwise() + offset.transpose();
  return Trajectory(std::move(moved), duration_);
}

Trajectory Trajectory::scaled(double factor) const {
  return Trajectory(samples_ * factor, duration_);
}

BoundaryConstraint BoundaryConstraint::initial(Point p) {
  return BoundaryConstraint(ConstraintKind::Initial, std::move(p), std::nullopt);
}

BoundaryConstraint BoundaryConstraint::final_point(Point p) {
  return BoundaryConstraint(ConstraintKind::Final, std::nullopt, std::move(p));
}

BoundaryConstraint BoundaryConstraint::both(Point initial, Point final) {
  return BoundaryConstraint(ConstraintKind::Both, std::move(initial), std::move(final));
}

BoundaryConstraint BoundaryConstraint::at(ConstraintKind kind, Point p) {
  switch (kind) {
    case ConstraintKind::Initial: return initial(std::move(p));
    case ConstraintKind::Final: return final_point(std::move(p));
    case ConstraintKind::Both: break;
  }
  fail(ErrorCode::InvalidArgument, "a single grid point cannot pin both endpoints");
}

std::pair<Point, Point> BoundaryConstraint::resolve(const Trajectory& demo) const {
  auto check = [&](const Point& p) {
    if (static_cast<std::size_t>(p.size()) != demo.dims()) {
      fail(ErrorCode::Dimension, "constraint point has dimension " + std::to_string(p.size()) +
                                     ", demonstration has " + std::to_string(demo.dims()));
    }
    if (!p.allFinite()) fail(ErrorCode::NonFinite, "constraint point is not finite");
  };
  Point start = initial_ ? *initial_ : demo.front();
  Point goal = final_ ? *final_ : demo.back();
  check(start);
  check(goal);
  return {std::move(start), std::move(goal)};
}

const char* to_string(ConstraintKind kind) noexcept {
  switch (kind) {
    case ConstraintKind::Initial: return "initial";
    case ConstraintKind::Final: return "final";
    case ConstraintKind::Both: return "both";
  }
  return "unknown";
}

ConstraintKind parse_constraint_kind(const std::string& name) {
  if (name == "initial") return ConstraintKind::Initial;
  if (name == "final") return ConstraintKind::Final;
  if (name == "both") return ConstraintKind::Both;
  fail(ErrorCode::InvalidArgument, "unknown constraint kind '" + name + "'");
}

Trajectory resample_uniform(const Trajectory& traj, std::size_t target_len) {
  if (target_len < 2) {
    fail(ErrorCode::InvalidArgument, "resample target length must be at least 2");
  }
  const std::size_t n = traj.size();
  if (target_len == n) return traj;

  const auto& in = traj.samples();
  SampleMatrix out(static_cast<Eigen::Index>(target_len), in.cols());
  // Fractional index k*(n-1)/(target_len-1), kept in integer form so the
  // endpoints land exactly on the input samples.
  const std::size_t denom = target_len - 1;
  for (std::size_t k = 0; k < target_len; ++k) {
    const std::size_t num = k * (n - 1);
    const std::size_t i = num / denom;
    const double frac = static_cast<double>(num % denom) / static_cast<double>(denom);
    const auto row = static_cast<Eigen::Index>(k);
    if (frac == 0.0) {
      out.row(row) = in.row(static_cast<Eigen::Index>(i));
    } else {
      out.row(row) = (1.0 - frac) * in.row(static_cast<Eigen::Index>(i)) +
                     frac * in.row(static_cast<Eigen::Index>(i + 1));
    }
  }
  return Trajectory(std::move(out), traj.duration());
}

Trajectory smooth_moving_average(const Trajectory& traj, std::size_t window) {
  const std::size_t n = traj.size();
  if (window == 0 || window % 2 == 0) {
    fail(ErrorCode::InvalidArgument, "smoothing window must be an odd positive integer");
  }
  if (window > n) {
    fail(ErrorCode::InvalidArgument, "smoothing window " + std::to_string(window) +
                                         " exceeds trajectory length " + std::to_string(n));
  }
  const auto& in = traj.samples();
  SampleMatrix out = in;
  const std::size_t half = window / 2;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t h = std::min({half, i, n - 1 - i});
    if (h == 0) continue;
    const auto center = in.row(static_cast<Eigen::Index>(i));
    // Averaging offsets from the center sample keeps constant runs exact.
    Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(in.cols());
    for (std::size_t j = i - h; j <= i + h; ++j) {
      acc += in.row(static_cast<Eigen::Index>(j)) - center;
    }
    out.row(static_cast<Eigen::Index>(i)) = center + acc / static_cast<double>(2 * h + 1);
  }
  return Trajectory(std::move(out), traj.duration());
}

double arc_length(const Trajectory& traj) {
  const auto& s = traj.samples();
  double total = 0.0;
  for (Eigen::Index i = 1; i < s.rows(); ++i) total += (s.row(i) - s.row(i - 1)).norm();
  return total;
}

Trajectory resample_arc_length(const Trajectory& traj, std::size_t target_len) {
  if (target_len < 2) {
    fail(ErrorCode::InvalidArgument, "resample target length must be at least 2");
  }
  const auto& in = traj.samples();
  const Eigen::Index n = in.rows();
  std::vector<double> cumulative(static_cast<std::size_t>(n), 0.0);
  for (Eigen::Index i = 1; i < n; ++i) {
    cumulative[i] = cumulative[i - 1] + (in.row(i) - in.row(i - 1)).norm();
  }
  const double total = cumulative.back();
  SampleMatrix out(static_cast<Eigen::Index>(target_len), in.cols());
  if (total == 0.0) {
    out.rowwise() = in.row(0);
    return Trajectory(std::move(out), traj.duration());
  }
  Eigen::Index seg = 0;
  for (std::size_t k = 0; k < target_len; ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    if (k == 0) {
      out.row(row) = in.row(0);
      continue;
    }
    if (k + 1 == target_len) {
      out.row(row) = in.row(n - 1);
      continue;
    }
    const double target = total * static_cast<double>(k) / static_cast<double>(target_len - 1);
    while (seg + 2 < n && cumulative[seg + 1] < target) ++seg;
    const double len = cumulative[seg + 1] - cumulative[seg];
    const double frac = len > 0.0 ? std::clamp((target - cumulative[seg]) / len, 0.0, 1.0) : 0.0;
    out.row(row) = (1.0 - frac) * in.row(seg) + frac * in.row(seg + 1);
  }
  return Trajectory(std::move(out), traj.duration());
}

Trajectory preprocess(const Trajectory& raw, const PreprocessConfig& config) {
  std::size_t window = std::min(config.smooth_window, raw.size());
  if (window % 2 == 0) --window;
  const Trajectory smoothed = window >= 1 ? smooth_moving_average(raw, window) : raw;
  return resample_uniform(smoothed, config.target_len);
}

}  // namespace samlfd
