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
#include <string>
#include <vector>

#include "samlfd/engine.hpp"

namespace samlfd {

enum class ClassifierKind { KNN, CSVC };

const char* to_string(ClassifierKind kind) noexcept;
ClassifierKind parse_classifier_kind(const std::string& name);

struct KnnParams {
  std::size_t k = 5;
};

/// Inputs are rescaled to [-1, 1] per axis over the training bounding box
/// before the kernel is applied.
struct SvcParams {
  double c = 10.0;
  double gamma = 2.0;
  double tolerance = 1e-3;
  std::size_t max_iterations = 100000;
};

/// Binary RBF C-SVC trained with SMO (maximal-gain working set selection).
struct BinarySvc {
  std::vector<Eigen::VectorXd> support;
  std::vector<double> coef;  // alpha_i * y_i
  double rho = 0.0;
  double gamma = 1.0;
  /// Positive means the first class of the pair.
  double decision(const Eigen::VectorXd& x) const;
};

/// Maps any point of the generalization space to a representation label.
/// Immutable after fit; predict() is safe to call concurrently.
class RegionModel {
 public:
  static RegionModel fit(std::vector<Point> points, std::vector<Representation> labels,
                         ClassifierKind kind, const KnnParams& knn = {}, const SvcParams& svc = {});
  /// Trains on the map's grid points and best labels. Points where every
  /// representation failed are left out.
  static RegionModel fit(const SimilarityMap& map, ClassifierKind kind, const KnnParams& knn = {},
                         const SvcParams& svc = {});

  Representation predict(const Point& point) const;

  ClassifierKind kind() const noexcept { return kind_; }
  const std::vector<Point>& training_points() const noexcept { return points_; }
  const std::vector<Representation>& training_labels() const noexcept { return labels_; }
  /// Distinct training labels in precedence order.
  const std::vector<Representation>& classes() const noexcept { return classes_; }

 private:
  RegionModel() = default;
  Representation predict_knn(const Point& point) const;
  Representation predict_svc(const Point& point) const;
  Eigen::VectorXd scale(const Point& p) const;

  ClassifierKind kind_ = ClassifierKind::KNN;
  KnnParams knn_;
  SvcParams svc_;
  std::vector<Point> points_;
  std::vector<Representation> labels_;
  std::vector<Representation> classes_;
  Eigen::VectorXd offset_;
  Eigen::VectorXd half_range_;
  // One machine per class pair (i < j) in classes_ order.
  std::vector<BinarySvc> machines_;
};

/// Trains one binary machine; labels are +1 / -1.
BinarySvc train_binary_svc(const std::vector<Eigen::VectorXd>& x, const std::vector<int>& y,
                           const SvcParams& params);

}  // namespace samlfd
