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
#include <span>
#include <string>
#include <vector>

#include "samlfd/dataset_io.hpp"
#include "samlfd/metrics.hpp"
#include "samlfd/representations.hpp"

namespace samlfd {

/// Which of JA and LTE reproduced a grid cell more closely.
enum class BiasOutcome { JA, LTE, Inconclusive, Excluded };
/// JA means the metric rewards convergence; LTE means it rewards shape.
enum class BiasDecision { JA, LTE, Either };

const char* to_string(BiasOutcome outcome) noexcept;
const char* to_string(BiasDecision decision) noexcept;

struct ShapeOutcomes {
  std::string shape;
  /// One outcome per grid point, grid order.
  std::vector<BiasOutcome> cells;
};

struct BiasRecord {
  MetricId metric = MetricId::Frechet;
  /// Percentages over the non-excluded cells; they sum to 100.
  double ja_share = 0.0;
  double lte_share = 0.0;
  double inconclusive_share = 0.0;
  BiasDecision decision = BiasDecision::Either;
  std::size_t counted = 0;
  std::size_t excluded = 0;
  std::vector<ShapeOutcomes> shapes;
  std::vector<std::string> diagnostics;
};

struct BiasStudyConfig {
  std::size_t resolution = 9;
  /// Relative gap |dJA - dLTE| / max(dJA, dLTE) at or below which a cell is
  /// inconclusive.
  double tie_margin = 0.10;
  double extent_fraction = 0.25;
  /// Fraction in (0, 1) a share has to exceed for a JA or LTE decision.
  double decision_threshold = 0.5;
  RepresentationConfig representation;
  MetricOptions metric;
  unsigned workers = 1;
};

BiasOutcome classify_cell(double d_ja, double d_lte, double tie_margin);

/// JA when ja_share exceeds the threshold and the LTE share, LTE likewise,
/// Either otherwise. `threshold` is a fraction; shares are percentages.
BiasDecision categorize_metric(const BiasRecord& record, double threshold = 0.5);

/// Evaluates JA and LTE on a grid around each shape's initial point and tallies
/// per-cell outcomes for every requested metric. Reproductions are shared
/// between metrics. Throws Computation if every cell of a metric fails.
std::vector<BiasRecord> run_bias_study(std::span<const NamedTrajectory> corpus,
                                       std::span<const MetricId> metrics,
                                       const BiasStudyConfig& config = {});
BiasRecord run_bias_study(std::span<const NamedTrajectory> corpus, MetricId metric,
                          const BiasStudyConfig& config = {});

/// Header "metric,name,ja,lte,inconclusive,decision,counted,excluded".
std::string bias_table_csv(std::span<const BiasRecord> records);
/// Columns Metric, JA, LTE, Inconclusive, Decision with shares as percentages.
std::string bias_table_markdown(std::span<const BiasRecord> records);

}  // namespace samlfd
