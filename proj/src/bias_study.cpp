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


#include "samlfd/bias_study.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

#include "samlfd/engine.hpp"
#include "samlfd/error.hpp"

namespace samlfd {

const char* to_string(BiasOutcome outcome) noexcept {
  switch (outcome) {
    case BiasOutcome::JA: return "ja";
    case BiasOutcome::LTE: return "lte";
    case BiasOutcome::Inconclusive: return "inconclusive";
    case BiasOutcome::Excluded: return "excluded";
  }
  return "?";
}

const char* to_string(BiasDecision decision) noexcept {
  switch (decision) {
    case BiasDecision::JA: return "JA";
    case BiasDecision::LTE: return "LTE";
    case BiasDecision::Either: return "Either";
  }
  return "?";
}

BiasOutcome classify_cell(double d_ja, double d_lte, double tie_margin) {
  if (!std::isfinite(d_ja) || !std::isfinite(d_lte)) return BiasOutcome::Excluded;
  const double larger = std::max(d_ja, d_lte);
  if (larger <= 0.0) return BiasOutcome::Inconclusive;
  if (std::abs(d_ja - d_lte) / larger <= tie_margin) return BiasOutcome::Inconclusive;
  return d_ja < d_lte ? BiasOutcome::JA : BiasOutcome::LTE;
}

BiasDecision categorize_metric(const BiasRecord& record, double threshold) {
  const double bar = 100.0 * threshold;
  if (record.ja_share > bar && record.ja_share > record.lte_share) return BiasDecision::JA;
  if (record.lte_share > bar && record.lte_share > record.ja_share) return BiasDecision::LTE;
  return BiasDecision::Either;
}

namespace {

void validate(std::span<const NamedTrajectory> corpus, const BiasStudyConfig& config) {
  if (corpus.empty()) fail(ErrorCode::InvalidArgument, "bias study needs at least one shape");
  if (!(config.tie_margin > 0.0 && config.tie_margin < 1.0)) {
    fail(ErrorCode::InvalidArgument, "tie margin must lie in (0, 1)");
  }
  if (!(config.decision_threshold > 0.0 && config.decision_threshold < 1.0)) {
    fail(ErrorCode::InvalidArgument, "decision threshold must lie in (0, 1)");
  }
  if (config.resolution < 2) fail(ErrorCode::InvalidArgument, "grid resolution must be at least 2");
}

struct CellPair {
  std::optional<Trajectory> ja;
  std::optional<Trajectory> lte;
  std::string error;
};

}  // namespace

std::vector<BiasRecord> run_bias_study(std::span<const NamedTrajectory> corpus,
                                       std::span<const MetricId> metrics,
                                       const BiasStudyConfig& config) {
  validate(corpus, config);
  if (metrics.empty()) fail(ErrorCode::InvalidArgument, "bias study needs at least one metric");

  std::vector<BiasRecord> records(metrics.size());
  std::vector<std::array<std::size_t, 4>> tallies(metrics.size(), {0, 0, 0, 0});
  for (std::size_t m = 0; m < metrics.size(); ++m) records[m].metric = metrics[m];

  const Representation pair[] = {Representation::JA, Representation::LTE};
  for (const NamedTrajectory& shape : corpus) {
    const Trajectory& demo = shape.trajectory;
    const ReproducerSet reproducers(demo, pair, config.representation);
    const Meshgrid grid =
        default_meshgrid(demo, ConstraintKind::Initial, config.resolution, config.extent_fraction);

    std::vector<CellPair> cells(grid.size());
    parallel_for(grid.size(), config.workers, [&](std::size_t p) {
      const BoundaryConstraint c = BoundaryConstraint::initial(grid.points[p]);
      try {
        cells[p].ja = reproducers.reproduce(Representation::JA, c);
        cells[p].lte = reproducers.reproduce(Representation::LTE, c);
      } catch (const std::exception& e) {
        cells[p].error = e.what();
      }
    });

    for (std::size_t m = 0; m < metrics.size(); ++m) {
      ShapeOutcomes outcomes{shape.name, std::vector<BiasOutcome>(grid.size(), BiasOutcome::Excluded)};
      std::vector<std::string> errors(grid.size());
      parallel_for(grid.size(), config.workers, [&](std::size_t p) {
        const CellPair& cell = cells[p];
        if (!cell.ja || !cell.lte) {
          errors[p] = cell.error;
          return;
        }
        try {
          const double d_ja = distance(metrics[m], *cell.ja, demo, config.metric);
          const double d_lte = distance(metrics[m], *cell.lte, demo, config.metric);
          outcomes.cells[p] = classify_cell(d_ja, d_lte, config.tie_margin);
          if (outcomes.cells[p] == BiasOutcome::Excluded) errors[p] = "non-finite distance";
        } catch (const std::exception& e) {
          errors[p] = e.what();
        }
      });
      for (std::size_t p = 0; p < grid.size(); ++p) {
        ++tallies[m][static_cast<std::size_t>(outcomes.cells[p])];
        if (!errors[p].empty()) {
          records[m].diagnostics.push_back(shape.name + " point " + std::to_string(p) + ": " + errors[p]);
        }
      }
      records[m].shapes.push_back(std::move(outcomes));
    }
  }

  for (std::size_t m = 0; m < metrics.size(); ++m) {
    BiasRecord& r = records[m];
    const auto& t = tallies[m];
    r.excluded = t[static_cast<std::size_t>(BiasOutcome::Excluded)];
    r.counted = t[0] + t[1] + t[2];
    if (r.counted == 0) {
      fail(ErrorCode::Computation,
           std::string("every cell failed for metric ") + to_string(r.metric) +
               (r.diagnostics.empty() ? "" : ": " + r.diagnostics.front()));
    }
    const double total = static_cast<double>(r.counted);
    r.ja_share = 100.0 * static_cast<double>(t[0]) / total;
    r.lte_share = 100.0 * static_cast<double>(t[1]) / total;
    r.inconclusive_share = 100.0 * static_cast<double>(t[2]) / total;
    r.decision = categorize_metric(r, config.decision_threshold);
  }
  return records;
}

BiasRecord run_bias_study(std::span<const NamedTrajectory> corpus, MetricId metric,
                          const BiasStudyConfig& config) {
  const MetricId one[] = {metric};
  return std::move(run_bias_study(corpus, one, config).front());
}

namespace {

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string bias_table_csv(std::span<const BiasRecord> records) {
  std::ostringstream out;
  out << "metric,name,ja,lte,inconclusive,decision,counted,excluded\n";
  for (const BiasRecord& r : records) {
    out << to_string(r.metric) << ',' << display_name(r.metric) << ',' << percent(r.ja_share) << ','
        << percent(r.lte_share) << ',' << percent(r.inconclusive_share) << ',' << to_string(r.decision)
        << ',' << r.counted << ',' << r.excluded << '\n';
  }
  return out.str();
}

std::string bias_table_markdown(std::span<const BiasRecord> records) {
  std::ostringstream out;
  out << "| Metric | JA | LTE | Inconclusive | Decision |\n";
  out << "|---|---:|---:|---:|---|\n";
  for (const BiasRecord& r : records) {
    out << "| " << display_name(r.metric) << " | " << percent(r.ja_share) << "% | " << percent(r.lte_share)
        << "% | " << percent(r.inconclusive_share) << "% | " << to_string(r.decision) << " |\n";
  }
  return out.str();
}

}  // namespace samlfd
