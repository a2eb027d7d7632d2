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

#include <optional>
#include <utility>

#include "samlfd/error.hpp"
#include "samlfd/trajectory.hpp"

namespace testing {

// Error code thrown by fn, or nullopt when it returns normally.
template <typename Fn>
std::optional<samlfd::ErrorCode> error_of(Fn&& fn) {
  try {
    std::forward<Fn>(fn)();
  } catch (const samlfd::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline samlfd::Trajectory make_traj(std::initializer_list<std::initializer_list<double>> rows, double duration = 1.0) {
  samlfd::SampleMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return samlfd::Trajectory(std::move(m), duration);
}

inline samlfd::Point pt(double x, double y) { return (samlfd::Point(2) << x, y).finished(); }
inline samlfd::Point pt(double x, double y, double z) { return (samlfd::Point(3) << x, y, z).finished(); }

}  // namespace testing
