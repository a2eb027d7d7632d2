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

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace samlfd {

/// Least-squares solver for banded systems min ||A x - B|| with several
/// right-hand sides. Rows are folded into an upper-triangular band factor one
/// at a time with Givens rotations, so row order and large row weights do not
/// hurt stability. Storage is O(cols * bandwidth).
class BandedLeastSquares {
 public:
  BandedLeastSquares(Eigen::Index cols, Eigen::Index bandwidth, Eigen::Index rhs_cols);

  /// Adds the row whose nonzeros start at `first_col`. `coeffs.size()` must not
  /// exceed the bandwidth and `rhs.size()` must equal the number of RHS columns.
  void add_row(Eigen::Index first_col, std::span<const double> coeffs, std::span<const double> rhs);

  /// Back-substitutes the accumulated factor. Throws ErrorCode::Singular when a
  /// pivot is missing or negligible relative to the largest one.
  Eigen::MatrixXd solve() const;

  Eigen::Index cols() const noexcept { return cols_; }
  Eigen::Index bandwidth() const noexcept { return bandwidth_; }
  Eigen::Index rows_added() const noexcept { return rows_added_; }

 private:
  Eigen::Index cols_;
  Eigen::Index bandwidth_;
  Eigen::Index rhs_cols_;
  Eigen::Index rows_added_ = 0;
  // r_(i, k) holds R(i, i + k).
  Eigen::MatrixXd r_;
  Eigen::MatrixXd qtb_;
  std::vector<bool> occupied_;
};

}  // namespace samlfd
