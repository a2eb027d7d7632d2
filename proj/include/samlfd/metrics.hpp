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
#include <string>
#include <vector>

#include "samlfd/trajectory.hpp"

namespace samlfd {

enum class MetricId {
  Area,
  CurvatureComparison,
  CurveLength,
  DTW,
  EndpointConvergence,
  Frechet,
  Hausdorff,
  PCM,
  SEA,
  SSE,
  TotalDistance,
};

inline constexpr MetricId kAllMetrics[] = {
    MetricId::Area,      MetricId::CurvatureComparison, MetricId::CurveLength,
    MetricId::DTW,       MetricId::EndpointConvergence, MetricId::Frechet,
    MetricId::Hausdorff, MetricId::PCM,                 MetricId::SEA,
    MetricId::SSE,       MetricId::TotalDistance,
};

/// Stable lowercase identifier ("frechet", "totaldist", ...).
const char* to_string(MetricId metric) noexcept;
/// Human-readable name used in report tables.
const char* display_name(MetricId metric) noexcept;
MetricId parse_metric(const std::string& id);
/// Comma separated ids; an empty string selects every metric.
std::vector<MetricId> parse_metric_list(const std::string& csv);
std::string valid_metric_ids();

struct MetricOptions {
  /// Fraction of trailing samples averaged by EndpointConvergence.
  double endpoint_fraction = 0.10;
};

/// Dissimilarity between two curves of the same dimension. Zero for identical
/// inputs. Every metric except PCM is symmetric in its arguments.
double distance(MetricId metric, const Trajectory& a, const Trajectory& b,
                const MetricOptions& options = {});

/// Min-max maps distances to similarities: the smallest distance becomes 1 and
/// the largest 0; all values become 1 when they are equal. Non-finite entries
/// map to 0 and do not take part in the min/max.
std::vector<double> normalize_similarities(std::span<const double> distances);

namespace metrics {

double frechet(const SampleMatrix& a, const SampleMatrix& b);
double dtw(const SampleMatrix& a, const SampleMatrix& b);
double hausdorff(const SampleMatrix& a, const SampleMatrix& b);
double sse(const SampleMatrix& a, const SampleMatrix& b);
double total_distance(const SampleMatrix& a, const SampleMatrix& b);
/// Sum over t of the area of quadrilateral (a_t, a_t+1, b_t+1, b_t), taken
/// as the mean of its two triangulations.
double swept_error_area(const SampleMatrix& a, const SampleMatrix& b);
/// Menger curvature of each consecutive triple; zero for degenerate triples.
std::vector<double> menger_curvature(const SampleMatrix& a);
double curvature_comparison(const SampleMatrix& a, const SampleMatrix& b);
double endpoint_convergence(const SampleMatrix& a, const SampleMatrix& b, double fraction);
/// Maps `a` (arc-length parameterised) onto the best-matching stretch of `b`
/// when `a` is no longer than `b`, otherwise the roles swap.
double partial_curve_mapping(const SampleMatrix& a, const SampleMatrix& b);

}  // namespace metrics

}  // namespace samlfd
