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

#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "samlfd/banded_lsq.hpp"

using samlfd::BandedLeastSquares;
using samlfd::ErrorCode;
using testing::error_of;

TEST_SUITE("banded_lsq") {

TEST_CASE("matches a dense QR solve on random banded systems") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::Index cols = 8 + trial;
    const Eigen::Index band = 1 + trial % 5;
    const Eigen::Index rhs_cols = 1 + trial % 3;
    const Eigen::Index rows = cols + 2 * band + trial;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
    Eigen::MatrixXd B(rows, rhs_cols);
    BandedLeastSquares solver(cols, band, rhs_cols);
    std::uniform_int_distribution<Eigen::Index> first(0, cols - band);
    for (Eigen::Index r = 0; r < rows; ++r) {
      // Cover every column once before sampling placements at random.
      const Eigen::Index start = r < cols - band + 1 ? r : first(rng);
      std::vector<double> coeffs(static_cast<std::size_t>(band));
      std::vector<double> rhs(static_cast<std::size_t>(rhs_cols));
      for (Eigen::Index k = 0; k < band; ++k) A(r, start + k) = coeffs[k] = u(rng) * (r % 7 == 0 ? 1e6 : 1.0);
      for (Eigen::Index k = 0; k < rhs_cols; ++k) B(r, k) = rhs[k] = u(rng);
      solver.add_row(start, coeffs, rhs);
    }
    const Eigen::MatrixXd expected = A.colPivHouseholderQr().solve(B);
    const Eigen::MatrixXd got = solver.solve();
    CHECK((got - expected).norm() <= 1e-8 * (1.0 + expected.norm()));
  }
}

TEST_CASE("rank deficiency is reported") {
  BandedLeastSquares solver(4, 2, 1);
  const double row[] = {1.0, -1.0};
  const double rhs[] = {0.0};
  for (Eigen::Index i = 0; i < 3; ++i) solver.add_row(i, row, rhs);
  CHECK(error_of([&] { solver.solve(); }) == ErrorCode::Singular);
}

TEST_CASE("row shape checks") {
  BandedLeastSquares solver(4, 2, 1);
  const double three[] = {1.0, 2.0, 3.0};
  const double rhs[] = {0.0};
  const double two_rhs[] = {0.0, 1.0};
  CHECK(error_of([&] { solver.add_row(0, three, rhs); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([&] { solver.add_row(0, std::span<const double>(three, 2), two_rhs); }) == ErrorCode::InvalidArgument);
  CHECK(error_of([&] { solver.add_row(3, std::span<const double>(three, 2), rhs); }) == ErrorCode::InvalidArgument);
}

}
