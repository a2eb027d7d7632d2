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


// Slow reference implementations used to check the library. None of these
// share code with src/.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "samlfd/trajectory.hpp"

namespace oracle {

using samlfd::SampleMatrix;

inline double euclid(const SampleMatrix& a, Eigen::Index i, const SampleMatrix& b, Eigen::Index j) {
  double sq = 0.0;
  for (Eigen::Index d = 0; d < a.cols(); ++d) sq += (a(i, d) - b(j, d)) * (a(i, d) - b(j, d));
  return std::sqrt(sq);
}

// Calls visit(path) for every monotone alignment path from (0,0) to
// (n-1,m-1) with unit steps right, down or diagonal.
inline void for_each_alignment(Eigen::Index n, Eigen::Index m,
                               const std::function<void(const std::vector<std::pair<Eigen::Index, Eigen::Index>>&)>& visit) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> path{{0, 0}};
  std::function<void()> step = [&] {
    const auto [i, j] = path.back();
    if (i == n - 1 && j == m - 1) {
      visit(path);
      return;
    }
    const std::pair<Eigen::Index, Eigen::Index> moves[] = {{i + 1, j}, {i, j + 1}, {i + 1, j + 1}};
    for (const auto& mv : moves) {
      if (mv.first < n && mv.second < m) {
        path.push_back(mv);
        step();
        path.pop_back();
      }
    }
  };
  step();
}

inline double frechet(const SampleMatrix& a, const SampleMatrix& b) {
  double best = std::numeric_limits<double>::infinity();
  for_each_alignment(a.rows(), b.rows(), [&](const auto& path) {
    double worst = 0.0;
    for (const auto& [i, j] : path) worst = std::max(worst, euclid(a, i, b, j));
    best = std::min(best, worst);
  });
  return best;
}

inline double dtw(const SampleMatrix& a, const SampleMatrix& b) {
  double best = std::numeric_limits<double>::infinity();
  for_each_alignment(a.rows(), b.rows(), [&](const auto& path) {
    double total = 0.0;
    for (const auto& [i, j] : path) total += euclid(a, i, b, j);
    best = std::min(best, total);
  });
  return best;
}

inline double hausdorff(const SampleMatrix& a, const SampleMatrix& b) {
  Eigen::MatrixXd d(a.rows(), b.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.rows(); ++j) d(i, j) = euclid(a, i, b, j);
  return std::max(d.rowwise().minCoeff().maxCoeff(), d.colwise().minCoeff().maxCoeff());
}

// argmin ||A x - rhs||^2 subject to x(0) = start and x(T-1) = goal, solved
// by eliminating the two fixed rows and a dense QR on the rest.
inline SampleMatrix constrained_lsq(const Eigen::MatrixXd& A, const Eigen::MatrixXd& rhs,
                                    const Eigen::RowVectorXd& start, const Eigen::RowVectorXd& goal) {
  const Eigen::Index T = A.cols();
  const Eigen::MatrixXd inner = A.middleCols(1, T - 2);
  const Eigen::MatrixXd shifted = rhs - A.col(0) * start - A.col(T - 1) * goal;
  const Eigen::MatrixXd x_inner = inner.colPivHouseholderQr().solve(shifted);
  SampleMatrix out(T, rhs.cols());
  out.row(0) = start;
  out.middleRows(1, T - 2) = x_inner;
  out.row(T - 1) = goal;
  return out;
}

inline Eigen::MatrixXd second_difference(Eigen::Index T) {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(T - 2, T);
  for (Eigen::Index i = 0; i < T - 2; ++i) {
    L(i, i) = 1.0;
    L(i, i + 1) = -2.0;
    L(i, i + 2) = 1.0;
  }
  return L;
}

// Laplacian editing: keep L X close to L X_demo with pinned endpoints.
inline SampleMatrix lte(const SampleMatrix& demo, const Eigen::RowVectorXd& start, const Eigen::RowVectorXd& goal) {
  const Eigen::MatrixXd L = second_difference(demo.rows());
  return constrained_lsq(L, L * Eigen::MatrixXd(demo), start, goal);
}

// Jerk-accuracy trade-off: integral of squared third derivative plus
// lambda^6 times integral of squared deviation, both as Riemann sums with step
// h, endpoints pinned.
inline SampleMatrix ja(const SampleMatrix& demo, double duration, double lambda, const Eigen::RowVectorXd& start,
                       const Eigen::RowVectorXd& goal) {
  const Eigen::Index T = demo.rows();
  const double h = duration / static_cast<double>(T - 1);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero((T - 3) + T, T);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero((T - 3) + T, demo.cols());
  const double jerk_scale = std::sqrt(h) / (h * h * h);
  for (Eigen::Index i = 0; i < T - 3; ++i) {
    A(i, i) = -jerk_scale;
    A(i, i + 1) = 3.0 * jerk_scale;
    A(i, i + 2) = -3.0 * jerk_scale;
    A(i, i + 3) = jerk_scale;
  }
  const double acc_scale = std::pow(lambda, 3) * std::sqrt(h);
  for (Eigen::Index i = 0; i < T; ++i) {
    A(T - 3 + i, i) = acc_scale;
    rhs.row(T - 3 + i) = acc_scale * demo.row(i);
  }
  return constrained_lsq(A, rhs, start, goal);
}

inline SampleMatrix random_curve(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index dims, double scale = 10.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  SampleMatrix m(rows, dims);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index d = 0; d < dims; ++d) m(i, d) = u(rng);
  return m;
}

inline double rms(const SampleMatrix& a, const SampleMatrix& b) {
  return std::sqrt((a - b).rowwise().squaredNorm().mean());
}

}  // namespace oracle
