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

#include "samlfd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "samlfd/error.hpp"

namespace samlfd {

const char* to_string(MetricId metric) noexcept {
  switch (metric) {
    case MetricId::Area: return "area";
    case MetricId::CurvatureComparison: return "curvature";
    case MetricId::CurveLength: return "curvelength";
    case MetricId::DTW: return "dtw";
    case MetricId::EndpointConvergence: return "endpoint";
    case MetricId::Frechet: return "frechet";
    case MetricId::Hausdorff: return "hausdorff";
    case MetricId::PCM: return "pcm";
    case MetricId::SEA: return "sea";
    case MetricId::SSE: return "sse";
    case MetricId::TotalDistance: return "totaldist";
  }
  return "unknown";
}

const char* display_name(MetricId metric) noexcept {
  switch (metric) {
    case MetricId::Area: return "Area";
    case MetricId::CurvatureComparison: return "Curvature Comparison";
    case MetricId::CurveLength: return "Curve Length";
    case MetricId::DTW: return "DTW";
    case MetricId::EndpointConvergence: return "Endpoint Convergence";
    case MetricId::Frechet: return "Frechet";
    case MetricId::Hausdorff: return "Hausdorff";
    case MetricId::PCM: return "PCM";
    case MetricId::SEA: return "SEA";
    case MetricId::SSE: return "SSE";
    case MetricId::TotalDistance: return "Total Distance";
  }
  return "unknown";
}

std::string valid_metric_ids() {
  std::string out;
  for (MetricId m : kAllMetrics) {
    if (!out.empty()) out += ", ";
    out += to_string(m);
  }
  return out;
}

MetricId parse_metric(const std::string& id) {
  for (MetricId m : kAllMetrics) {
    if (id == to_string(m)) return m;
  }
  fail(ErrorCode::InvalidArgument, "unknown metric '" + id + "' (valid: " + valid_metric_ids() + ")");
}

std::vector<MetricId> parse_metric_list(const std::string& csv) {
  std::vector<MetricId> out;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(parse_metric(item));
  }
  if (out.empty()) out.assign(std::begin(kAllMetrics), std::end(kAllMetrics));
  return out;
}

namespace metrics {

namespace {

// Summed in coordinate order so results do not depend on vectorisation.
double point_distance(const SampleMatrix& a, Eigen::Index i, const SampleMatrix& b, Eigen::Index j) {
  double sq = 0.0;
  for (Eigen::Index d = 0; d < a.cols(); ++d) {
    const double diff = a(i, d) - b(j, d);
    sq += diff * diff;
  }
  return std::sqrt(sq);
}

double triangle_area(const Eigen::RowVectorXd& p, const Eigen::RowVectorXd& q,
                     const Eigen::RowVectorXd& r) {
  const Eigen::RowVectorXd u = q - p;
  const Eigen::RowVectorXd v = r - p;
  if (u.size() == 2) return 0.5 * std::abs(u(0) * v(1) - u(1) * v(0));
  const Eigen::Vector3d c = Eigen::Vector3d(u(0), u(1), u(2)).cross(Eigen::Vector3d(v(0), v(1), v(2)));
  return 0.5 * c.norm();
}

std::vector<double> cumulative_length(const SampleMatrix& a) {
  std::vector<double> cum(static_cast<std::size_t>(a.rows()), 0.0);
  for (Eigen::Index i = 1; i < a.rows(); ++i) cum[i] = cum[i - 1] + (a.row(i) - a.row(i - 1)).norm();
  return cum;
}

// Point at arc length `s` along `a`, with `seg` as a forward-only cursor.
Eigen::RowVectorXd point_at(const SampleMatrix& a, const std::vector<double>& cum, double s,
                            Eigen::Index& seg) {
  const Eigen::Index n = a.rows();
  while (seg + 2 < n && cum[seg + 1] < s) ++seg;
  const double len = cum[seg + 1] - cum[seg];
  const double frac = len > 0.0 ? std::clamp((s - cum[seg]) / len, 0.0, 1.0) : 0.0;
  return (1.0 - frac) * a.row(seg) + frac * a.row(seg + 1);
}

}  // namespace

double frechet(const SampleMatrix& a, const SampleMatrix& b) {
  const Eigen::Index n = a.rows();
  const Eigen::Index m = b.rows();
  Eigen::MatrixXd ca(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double d = point_distance(a, i, b, j);
      if (i == 0 && j == 0) {
        ca(i, j) = d;
      } else if (i == 0) {
        ca(i, j) = std::max(ca(i, j - 1), d);
      } else if (j == 0) {
        ca(i, j) = std::max(ca(i - 1, j), d);
      } else {
        ca(i, j) = std::max(std::min({ca(i - 1, j), ca(i - 1, j - 1), ca(i, j - 1)}), d);
      }
    }
  }
  return ca(n - 1, m - 1);
}

double dtw(const SampleMatrix& a, const SampleMatrix& b) {
  const Eigen::Index n = a.rows();
  const Eigen::Index m = b.rows();
  Eigen::MatrixXd acc(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const double d = point_distance(a, i, b, j);
      if (i == 0 && j == 0) {
        acc(i, j) = d;
      } else if (i == 0) {
        acc(i, j) = acc(i, j - 1) + d;
      } else if (j == 0) {
        acc(i, j) = acc(i - 1, j) + d;
      } else {
        acc(i, j) = d + std::min({acc(i - 1, j), acc(i - 1, j - 1), acc(i, j - 1)});
      }
    }
  }
  return acc(n - 1, m - 1);
}

double hausdorff(const SampleMatrix& a, const SampleMatrix& b) {
  auto directed = [](const SampleMatrix& p, const SampleMatrix& q) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < q.rows(); ++j) nearest = std::min(nearest, point_distance(p, i, q, j));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

double sse(const SampleMatrix& a, const SampleMatrix& b) { return (a - b).squaredNorm(); }

double total_distance(const SampleMatrix& a, const SampleMatrix& b) {
  return (a - b).rowwise().norm().sum();
}

double swept_error_area(const SampleMatrix& a, const SampleMatrix& b) {
  double total = 0.0;
  for (Eigen::Index t = 0; t + 1 < a.rows(); ++t) {
    // Both diagonal splits, averaged; they differ when the quadrilateral is
    // not convex and a single split would make the metric order dependent.
    total += 0.5 * (triangle_area(a.row(t), a.row(t + 1), b.row(t + 1)) +
                    triangle_area(a.row(t), b.row(t + 1), b.row(t)));
    total += 0.5 * (triangle_area(a.row(t), a.row(t + 1), b.row(t)) +
                    triangle_area(a.row(t + 1), b.row(t + 1), b.row(t)));
  }
  return total;
}

std::vector<double> menger_curvature(const SampleMatrix& a) {
  std::vector<double> out;
  if (a.rows() < 3) return out;
  out.reserve(static_cast<std::size_t>(a.rows() - 2));
  for (Eigen::Index i = 1; i + 1 < a.rows(); ++i) {
    const double sides = (a.row(i) - a.row(i - 1)).norm() * (a.row(i + 1) - a.row(i)).norm() *
                         (a.row(i + 1) - a.row(i - 1)).norm();
    const double area = triangle_area(a.row(i - 1), a.row(i), a.row(i + 1));
    out.push_back(sides > 0.0 ? 4.0 * area / sides : 0.0);
  }
  return out;
}

double curvature_comparison(const SampleMatrix& a, const SampleMatrix& b) {
  const auto ka = menger_curvature(a);
  const auto kb = menger_curvature(b);
  double total = 0.0;
  for (std::size_t i = 0; i < ka.size(); ++i) total += std::abs(ka[i] - kb[i]);
  return total;
}

double endpoint_convergence(const SampleMatrix& a, const SampleMatrix& b, double fraction) {
  const Eigen::Index n = a.rows();
  const auto window = std::clamp<Eigen::Index>(
      static_cast<Eigen::Index>(std::ceil(fraction * static_cast<double>(n) - 1e-9)), 1, n);
  return (a.bottomRows(window) - b.bottomRows(window)).rowwise().norm().mean();
}

double partial_curve_mapping(const SampleMatrix& a, const SampleMatrix& b) {
  const auto cum_a = cumulative_length(a);
  const auto cum_b = cumulative_length(b);
  const bool a_short = cum_a.back() <= cum_b.back();
  const SampleMatrix& shorter = a_short ? a : b;
  const SampleMatrix& longer = a_short ? b : a;
  const auto& cum_s = a_short ? cum_a : cum_b;
  const auto& cum_l = a_short ? cum_b : cum_a;
  const double slack = cum_l.back() - cum_s.back();

  std::vector<double> offsets{0.0};
  for (double c : cum_l) {
    if (c > 0.0 && c < slack) offsets.push_back(c);
  }
  if (slack > 0.0) offsets.push_back(slack);

  double best = std::numeric_limits<double>::infinity();
  for (double offset : offsets) {
    Eigen::Index seg = 0;
    double cost = 0.0;
    for (Eigen::Index i = 0; i < shorter.rows() && cost < best; ++i) {
      cost += (shorter.row(i) - point_at(longer, cum_l, offset + cum_s[i], seg)).norm();
    }
    best = std::min(best, cost);
  }
  return best;
}

}  // namespace metrics

namespace {

// Index-aligned metrics compare samples pairwise, so unequal lengths are
// brought to the longer of the two.
std::pair<SampleMatrix, SampleMatrix> aligned(const Trajectory& a, const Trajectory& b) {
  if (a.size() == b.size()) return {a.samples(), b.samples()};
  const std::size_t len = std::max(a.size(), b.size());
  return {resample_uniform(a, len).samples(), resample_uniform(b, len).samples()};
}

}  // namespace

double distance(MetricId metric, const Trajectory& a, const Trajectory& b,
                const MetricOptions& options) {
  if (a.dims() != b.dims()) {
    fail(ErrorCode::Dimension, "cannot compare a " + std::to_string(a.dims()) + "-D curve with a " +
                                   std::to_string(b.dims()) + "-D curve");
  }
  switch (metric) {
    case MetricId::Frechet: return metrics::frechet(a.samples(), b.samples());
    case MetricId::DTW: return metrics::dtw(a.samples(), b.samples());
    case MetricId::Hausdorff: return metrics::hausdorff(a.samples(), b.samples());
    case MetricId::CurveLength: return std::abs(arc_length(a) - arc_length(b));
    case MetricId::PCM: return metrics::partial_curve_mapping(a.samples(), b.samples());
    case MetricId::Area: {
      const std::size_t len = std::max(a.size(), b.size());
      return metrics::swept_error_area(resample_arc_length(a, len).samples(),
                                       resample_arc_length(b, len).samples());
    }
    case MetricId::SSE: {
      auto [pa, pb] = aligned(a, b);
      return metrics::sse(pa, pb);
    }
    case MetricId::TotalDistance: {
      auto [pa, pb] = aligned(a, b);
      return metrics::total_distance(pa, pb);
    }
    case MetricId::SEA: {
      auto [pa, pb] = aligned(a, b);
      return metrics::swept_error_area(pa, pb);
    }
    case MetricId::CurvatureComparison: {
      if (a.size() < 3 || b.size() < 3) {
        fail(ErrorCode::InvalidArgument, "curvature comparison needs at least 3 samples per curve");
      }
      auto [pa, pb] = aligned(a, b);
      return metrics::curvature_comparison(pa, pb);
    }
    case MetricId::EndpointConvergence: {
      if (!(options.endpoint_fraction > 0.0 && options.endpoint_fraction <= 1.0)) {
        fail(ErrorCode::InvalidArgument, "endpoint fraction must lie in (0, 1]");
      }
      auto [pa, pb] = aligned(a, b);
      return metrics::endpoint_convergence(pa, pb, options.endpoint_fraction);
    }
  }
  fail(ErrorCode::InvalidArgument, "unknown metric");
}

std::vector<double> normalize_similarities(std::span<const double> distances) {
  if (distances.empty()) fail(ErrorCode::InvalidArgument, "cannot normalize an empty distance set");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double d : distances) {
    if (!std::isfinite(d)) continue;
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  if (!std::isfinite(lo)) fail(ErrorCode::InvalidArgument, "no finite distance to normalize");
  std::vector<double> out;
  out.reserve(distances.size());
  for (double d : distances) {
    if (!std::isfinite(d)) {
      out.push_back(0.0);
    } else if (hi == lo) {
      out.push_back(1.0);
    } else {
      out.push_back((hi - d) / (hi - lo));
    }
  }
  return out;
}

}  // namespace samlfd
