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

#include "samlfd/banded_lsq.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "samlfd/error.hpp"

namespace samlfd {

BandedLeastSquares::BandedLeastSquares(Eigen::Index cols, Eigen::Index bandwidth,
                                       Eigen::Index rhs_cols)
    : cols_(cols),
      bandwidth_(bandwidth),
      rhs_cols_(rhs_cols),
      r_(Eigen::MatrixXd::Zero(cols, bandwidth)),
      qtb_(Eigen::MatrixXd::Zero(cols, rhs_cols)),
      occupied_(static_cast<std::size_t>(cols), false) {
  if (cols < 1 || bandwidth < 1 || rhs_cols < 1) {
    fail(ErrorCode::InvalidArgument, "banded solver needs positive sizes");
  }
}

void BandedLeastSquares::add_row(Eigen::Index first_col, std::span<const double> coeffs,
                                 std::span<const double> rhs) {
  const auto len = static_cast<Eigen::Index>(coeffs.size());
  if (len > bandwidth_ || first_col < 0 || first_col + len > cols_) {
    fail(ErrorCode::InvalidArgument, "row does not fit the band at column " + std::to_string(first_col));
  }
  if (static_cast<Eigen::Index>(rhs.size()) != rhs_cols_) {
    fail(ErrorCode::InvalidArgument, "row right-hand side has the wrong width");
  }
  ++rows_added_;

  Eigen::RowVectorXd w = Eigen::RowVectorXd::Zero(bandwidth_);
  for (Eigen::Index k = 0; k < len; ++k) w(k) = coeffs[static_cast<std::size_t>(k)];
  Eigen::RowVectorXd b(rhs_cols_);
  for (Eigen::Index k = 0; k < rhs_cols_; ++k) b(k) = rhs[static_cast<std::size_t>(k)];

  for (Eigen::Index j = first_col; j < cols_; ++j) {
    if (w(0) != 0.0) {
      if (!occupied_[static_cast<std::size_t>(j)]) {
        r_.row(j) = w;
        qtb_.row(j) = b;
        occupied_[static_cast<std::size_t>(j)] = true;
        return;
      }
      const double a = r_(j, 0);
      const double radius = std::hypot(a, w(0));
      const double c = a / radius;
      const double s = w(0) / radius;
      const Eigen::RowVectorXd rj = r_.row(j);
      r_.row(j) = c * rj + s * w;
      w = -s * rj + c * w;
      const Eigen::RowVectorXd bj = qtb_.row(j);
      qtb_.row(j) = c * bj + s * b;
      b = -s * bj + c * b;
      w(0) = 0.0;
    }
    // Shift the window one column to the right.
    for (Eigen::Index k = 0; k + 1 < bandwidth_; ++k) w(k) = w(k + 1);
    w(bandwidth_ - 1) = 0.0;
    if (w.isZero(0.0)) return;
  }
}

Eigen::MatrixXd BandedLeastSquares::solve() const {
  double max_pivot = 0.0;
  for (Eigen::Index i = 0; i < cols_; ++i) max_pivot = std::max(max_pivot, std::abs(r_(i, 0)));
  const double tol =
      static_cast<double>(cols_) * std::numeric_limits<double>::epsilon() * max_pivot;

  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(cols_, rhs_cols_);
  for (Eigen::Index i = cols_ - 1; i >= 0; --i) {
    const double pivot = r_(i, 0);
    if (!occupied_[static_cast<std::size_t>(i)] || std::abs(pivot) <= tol) {
      fail(ErrorCode::Singular, "least-squares system is rank deficient at column " +
                                    std::to_string(i));
    }
    Eigen::RowVectorXd acc = qtb_.row(i);
    for (Eigen::Index k = 1; k < bandwidth_ && i + k < cols_; ++k) acc -= r_(i, k) * x.row(i + k);
    x.row(i) = acc / pivot;
  }
  return x;
}

}  // namespace samlfd
