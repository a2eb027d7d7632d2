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

// Synthetic handwriting-style demonstrations. Each shape is a planar curve
// traced with a speed profile that slows toward both ends, the way a drawn or
// kinesthetic demonstration does, sampled densely and then run through the
// default preprocessing pipeline.

#include <cmath>
#include <functional>
#include <numbers>

#include "samlfd/dataset_io.hpp"
#include "samlfd/error.hpp"

namespace samlfd {

namespace {

constexpr std::size_t kRawSamples = 200;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Curve = std::function<Eigen::RowVector2d(double)>;

// Progress along the curve at normalised time t; speed at the ends is 20% of
// the mean.
double progress(double t) { return t - 0.8 * std::sin(kTwoPi * t) / kTwoPi; }

// Piecewise-linear curve through `corners`, parameterised by arc length.
Curve polyline(std::vector<Eigen::RowVector2d> corners) {
  std::vector<double> cum{0.0};
  for (std::size_t i = 1; i < corners.size(); ++i) cum.push_back(cum.back() + (corners[i] - corners[i - 1]).norm());
  return [corners, cum](double u) -> Eigen::RowVector2d {
    const double s = u * cum.back();
    std::size_t i = 0;
    while (i + 2 < corners.size() && cum[i + 1] < s) ++i;
    const double f = (s - cum[i]) / (cum[i + 1] - cum[i]);
    return (1.0 - f) * corners[i] + f * corners[i + 1];
  };
}

Trajectory trace(const Curve& curve) {
  SampleMatrix raw(kRawSamples, 2);
  for (std::size_t k = 0; k < kRawSamples; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(kRawSamples - 1);
    raw.row(static_cast<Eigen::Index>(k)) = curve(progress(t));
  }
  return preprocess(Trajectory(std::move(raw)));
}

Curve curve_for(const std::string& name) {
  using V = Eigen::RowVector2d;
  if (name == "line") {
    return [](double u) { return V(10.0 * u, 5.0 * u); };
  }
  if (name == "sshape") {
    return [](double u) { return V(3.0 * std::sin(kTwoPi * u), 10.0 * (1.0 - u)); };
  }
  if (name == "lshape") {
    return polyline({V(0.0, 10.0), V(0.0, 0.0), V(6.0, 0.0)});
  }
  if (name == "loop") {
    return [](double u) {
      return V(8.0 * u + 2.5 * std::sin(kTwoPi * u), 2.5 * (1.0 - std::cos(kTwoPi * u)));
    };
  }
  if (name == "zigzag") {
    return polyline({V(0.0, 0.0), V(2.0, 4.0), V(4.0, 0.0), V(6.0, 4.0), V(8.0, 0.0)});
  }
  if (name == "spiral") {
    return [](double u) {
      const double r = 5.0 - 4.0 * u;
      const double theta = 3.0 * std::numbers::pi * u;
      return V(r * std::cos(theta), r * std::sin(theta));
    };
  }
  if (name == "writing") {
    // Three cursive loops drifting upward, like a handwritten "eee".
    return [](double u) {
      const double a = 3.0 * kTwoPi * u;
      return V(12.0 * u + 1.8 * std::sin(a), 1.8 * (1.0 - std::cos(a)) + 2.0 * u);
    };
  }
  fail(ErrorCode::NotFound, "no bundled shape named '" + name + "'");
}

}  // namespace

std::vector<std::string> bundled_shape_names() {
  return {"line", "sshape", "lshape", "loop", "zigzag", "spiral", "writing"};
}

NamedTrajectory bundled_shape(const std::string& name) {
  return NamedTrajectory{name, "bundled/" + name, trace(curve_for(name))};
}

std::vector<NamedTrajectory> bundled_corpus() {
  std::vector<NamedTrajectory> out;
  for (const char* name : {"line", "sshape", "lshape", "loop", "zigzag", "spiral"}) {
    out.push_back(bundled_shape(name));
  }
  return out;
}

}  // namespace samlfd
