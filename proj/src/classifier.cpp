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

#include "samlfd/classifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>
#include <limits>

#include "samlfd/error.hpp"

namespace samlfd {

const char* to_string(ClassifierKind kind) noexcept {
  return kind == ClassifierKind::KNN ? "knn" : "csvc";
}

ClassifierKind parse_classifier_kind(const std::string& name) {
  if (name == "knn") return ClassifierKind::KNN;
  if (name == "csvc" || name == "svc") return ClassifierKind::CSVC;
  fail(ErrorCode::InvalidArgument, "unknown classifier '" + name + "' (valid: knn, csvc)");
}

namespace {

double rbf(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double gamma) {
  return std::exp(-gamma * (a - b).squaredNorm());
}

constexpr double kTau = 1e-12;

}  // namespace

double BinarySvc::decision(const Eigen::VectorXd& x) const {
  double sum = -rho;
  for (std::size_t i = 0; i < support.size(); ++i) sum += coef[i] * rbf(support[i], x, gamma);
  return sum;
}

BinarySvc train_binary_svc(const std::vector<Eigen::VectorXd>& x, const std::vector<int>& y,
                           const SvcParams& params) {
  const std::size_t n = x.size();
  if (n == 0 || y.size() != n) fail(ErrorCode::InvalidArgument, "SVC needs matching points and labels");
  if (!(params.c > 0.0) || !(params.gamma > 0.0)) {
    fail(ErrorCode::InvalidArgument, "SVC C and gamma must be positive");
  }
  const double c = params.c;
  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);
  auto q = [&](std::size_t i, std::size_t j) {
    return static_cast<double>(y[i] * y[j]) * rbf(x[i], x[j], params.gamma);
  };
  auto at_upper = [&](std::size_t i) { return alpha[i] >= c; };
  auto at_lower = [&](std::size_t i) { return alpha[i] <= 0.0; };

  std::vector<double> qi(n);
  std::vector<double> qj(n);
  for (std::size_t iter = 0; iter < params.max_iterations; ++iter) {
    // First index: maximal violator in I_up.
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (y[t] == 1 ? !at_upper(t) : !at_lower(t)) {
        const double v = -static_cast<double>(y[t]) * grad[t];
        if (v >= gmax) {
          gmax = v;
          i = t;
        }
      }
    }
    if (i == n) break;
    for (std::size_t t = 0; t < n; ++t) qi[t] = q(i, t);

    // Second index: largest objective decrease in I_low.
    double gmax2 = -std::numeric_limits<double>::infinity();
    double best_obj = std::numeric_limits<double>::infinity();
    std::size_t j = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (y[t] == 1 ? !at_lower(t) : !at_upper(t)) {
        const double v = static_cast<double>(y[t]) * grad[t];
        gmax2 = std::max(gmax2, v);
        const double diff = gmax + v;
        if (diff > 0.0) {
          // K_ii + K_tt - 2 K_it with an RBF kernel (K_ii = 1).
          const double quad = 2.0 - 2.0 * static_cast<double>(y[i] * y[t]) * qi[t];
          const double obj = -(diff * diff) / (quad > 0.0 ? quad : kTau);
          if (obj <= best_obj) {
            best_obj = obj;
            j = t;
          }
        }
      }
    }
    if (gmax + gmax2 < params.tolerance || j == n) break;
    for (std::size_t t = 0; t < n; ++t) qj[t] = q(j, t);

    const double old_ai = alpha[i];
    const double old_aj = alpha[j];
    if (y[i] != y[j]) {
      double quad = 2.0 + 2.0 * qi[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else if (alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = c + diff;
      }
    } else {
      double quad = 2.0 - 2.0 * qi[j];
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = sum;
        }
        if (alpha[i] < 0.0) {
          alpha[i] = 0.0;
          alpha[j] = sum;
        }
      }
    }
    const double dai = alpha[i] - old_ai;
    const double daj = alpha[j] - old_aj;
    for (std::size_t t = 0; t < n; ++t) grad[t] += qi[t] * dai + qj[t] * daj;
  }

  // Offset from free vectors, or the midpoint of the feasible interval.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double sum_free = 0.0;
  std::size_t n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = static_cast<double>(y[t]) * grad[t];
    if (at_upper(t)) {
      if (y[t] == -1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (at_lower(t)) {
      if (y[t] == 1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  BinarySvc out;
  out.gamma = params.gamma;
  if (n_free > 0) {
    out.rho = sum_free / static_cast<double>(n_free);
  } else if (std::isfinite(ub) && std::isfinite(lb)) {
    out.rho = 0.5 * (ub + lb);
  } else {
    out.rho = std::isfinite(ub) ? ub : (std::isfinite(lb) ? lb : 0.0);
  }
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0.0) {
      out.support.push_back(x[t]);
      out.coef.push_back(alpha[t] * static_cast<double>(y[t]));
    }
  }
  return out;
}

RegionModel RegionModel::fit(std::vector<Point> points, std::vector<Representation> labels,
                             ClassifierKind kind, const KnnParams& knn, const SvcParams& svc) {
  if (points.empty()) fail(ErrorCode::InvalidArgument, "region classifier needs at least one labelled point");
  if (points.size() != labels.size()) fail(ErrorCode::InvalidArgument, "points and labels differ in count");
  if (knn.k == 0) fail(ErrorCode::InvalidArgument, "KNN k must be positive");
  const Eigen::Index dims = points.front().size();
  for (const auto& p : points) {
    if (p.size() != dims) fail(ErrorCode::Dimension, "training points have mixed dimensions");
  }

  RegionModel model;
  model.kind_ = kind;
  model.knn_ = knn;
  model.svc_ = svc;
  model.points_ = std::move(points);
  model.labels_ = std::move(labels);
  model.classes_ = model.labels_;
  std::sort(model.classes_.begin(), model.classes_.end());
  model.classes_.erase(std::unique(model.classes_.begin(), model.classes_.end()), model.classes_.end());

  Eigen::VectorXd lo = model.points_.front();
  Eigen::VectorXd hi = model.points_.front();
  for (const auto& p : model.points_) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  model.offset_ = 0.5 * (lo + hi);
  model.half_range_ = (0.5 * (hi - lo)).unaryExpr([](double v) { return v > 0.0 ? v : 1.0; });

  if (kind == ClassifierKind::CSVC && model.classes_.size() > 1) {
    std::vector<Eigen::VectorXd> scaled;
    scaled.reserve(model.points_.size());
    for (const auto& p : model.points_) scaled.push_back(model.scale(p));
    for (std::size_t a = 0; a < model.classes_.size(); ++a) {
      for (std::size_t b = a + 1; b < model.classes_.size(); ++b) {
        std::vector<Eigen::VectorXd> x;
        std::vector<int> y;
        for (std::size_t i = 0; i < model.labels_.size(); ++i) {
          if (model.labels_[i] == model.classes_[a]) {
            x.push_back(scaled[i]);
            y.push_back(1);
          } else if (model.labels_[i] == model.classes_[b]) {
            x.push_back(scaled[i]);
            y.push_back(-1);
          }
        }
        model.machines_.push_back(train_binary_svc(x, y, svc));
      }
    }
  }
  return model;
}

RegionModel RegionModel::fit(const SimilarityMap& map, ClassifierKind kind, const KnnParams& knn,
                             const SvcParams& svc) {
  std::vector<Point> points;
  std::vector<Representation> labels;
  for (std::size_t p = 0; p < map.grid.size(); ++p) {
    if (p < map.flagged.size() && map.flagged[p]) continue;
    points.push_back(map.grid.points[p]);
    labels.push_back(map.best_label[p]);
  }
  return fit(std::move(points), std::move(labels), kind, knn, svc);
}

Eigen::VectorXd RegionModel::scale(const Point& p) const {
  return (p - offset_).cwiseQuotient(half_range_);
}

Representation RegionModel::predict(const Point& point) const {
  if (point.size() != points_.front().size()) {
    fail(ErrorCode::Dimension, "query point dimension does not match the region model");
  }
  if (classes_.size() == 1) return classes_.front();
  return kind_ == ClassifierKind::KNN ? predict_knn(point) : predict_svc(point);
}

Representation RegionModel::predict_knn(const Point& point) const {
  std::vector<std::pair<double, std::size_t>> by_distance;
  by_distance.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) by_distance.emplace_back((points_[i] - point).norm(), i);
  const std::size_t k = std::min(knn_.k, by_distance.size());
  std::partial_sort(by_distance.begin(), by_distance.begin() + static_cast<std::ptrdiff_t>(k),
                    by_distance.end());

  constexpr std::size_t kReps = std::size(kAllRepresentations);
  std::array<std::size_t, kReps> votes{};
  std::array<double, kReps> weight{};
  for (std::size_t n = 0; n < k; ++n) {
    const auto [dist, idx] = by_distance[n];
    const auto label = static_cast<std::size_t>(labels_[idx]);
    ++votes[label];
    weight[label] += dist > 0.0 ? 1.0 / dist : std::numeric_limits<double>::infinity();
  }
  std::size_t best = static_cast<std::size_t>(classes_.front());
  for (Representation rep : classes_) {
    const auto r = static_cast<std::size_t>(rep);
    if (votes[r] > votes[best] || (votes[r] == votes[best] && weight[r] > weight[best])) best = r;
  }
  return static_cast<Representation>(best);
}

Representation RegionModel::predict_svc(const Point& point) const {
  const Eigen::VectorXd x = scale(point);
  std::vector<std::size_t> votes(classes_.size(), 0);
  std::size_t m = 0;
  for (std::size_t a = 0; a < classes_.size(); ++a) {
    for (std::size_t b = a + 1; b < classes_.size(); ++b) {
      ++votes[machines_[m++].decision(x) > 0.0 ? a : b];
    }
  }
  std::size_t best = 0;
  for (std::size_t a = 1; a < classes_.size(); ++a) {
    if (votes[a] > votes[best]) best = a;
  }
  return classes_[best];
}

}  // namespace samlfd
