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

// One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "samlfd/bias_study.hpp"
#include "samlfd/dataset_io.hpp"
#include "samlfd/engine.hpp"
#include "samlfd/metrics.hpp"
#include "samlfd/representations.hpp"

using namespace samlfd;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

Trajectory shape(const std::string& name) { return bundled_shape(name).trajectory; }

double rms_over_diag(const Trajectory& a, const Trajectory& b) {
  return oracle::rms(a.samples(), b.samples()) / b.bbox_diagonal();
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool identical(const SimilarityMap& a, const SimilarityMap& b) {
  if (a.raw.size() != b.raw.size() || a.best_label != b.best_label || a.flagged != b.flagged) return false;
  for (Eigen::Index i = 0; i < a.raw.size(); ++i) {
    if (!same_bits(a.raw.data()[i], b.raw.data()[i]) || !same_bits(a.scores.data()[i], b.scores.data()[i])) {
      return false;
    }
  }
  for (std::size_t p = 0; p < a.best_score.size(); ++p) {
    if (!same_bits(a.best_score[p], b.best_score[p])) return false;
  }
  return true;
}

SimilarityMap evaluate(const std::string& name, MetricId metric, ConstraintKind kind, std::size_t res,
                       unsigned workers = 1) {
  const auto demo = shape(name);
  GridOptions options;
  options.workers = workers;
  return evaluate_grid(demo, default_meshgrid(demo, kind, res), kAllRepresentations, metric, kind, options);
}

// ---------------------------------------------------------------------------

Outcome bias_decisions() {
  Outcome out;
  const auto corpus = bundled_corpus();
  BiasStudyConfig cfg;
  cfg.resolution = 9;
  cfg.tie_margin = 0.10;
  cfg.workers = std::max(1u, std::thread::hardware_concurrency());
  const auto t0 = std::chrono::steady_clock::now();
  const auto records = run_bias_study(corpus, kAllMetrics, cfg);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::map<MetricId, const BiasRecord*> by_metric;
  for (const auto& r : records) by_metric[r.metric] = &r;
  const std::pair<MetricId, BiasDecision> expected[] = {
      {MetricId::CurvatureComparison, BiasDecision::LTE}, {MetricId::TotalDistance, BiasDecision::JA},
      {MetricId::DTW, BiasDecision::JA},                  {MetricId::SSE, BiasDecision::JA},
      {MetricId::SEA, BiasDecision::JA},                  {MetricId::Area, BiasDecision::JA}};
  for (const auto& [metric, decision] : expected) {
    const BiasRecord& r = *by_metric.at(metric);
    const double share = decision == BiasDecision::JA ? r.ja_share : r.lte_share;
    out.detail << to_string(metric) << "=" << to_string(r.decision) << "(" << share << "%) ";
    out.require(r.decision == decision && share >= 80.0, std::string(to_string(metric)) + " decision/share");
  }
  const BiasRecord& fr = *by_metric.at(MetricId::Frechet);
  out.detail << "frechet=" << to_string(fr.decision) << "(inconclusive " << fr.inconclusive_share << "%) ";
  out.require(fr.decision == BiasDecision::Either && fr.inconclusive_share >= 60.0, "frechet inconclusive");
  out.detail << "runtime " << seconds << " s";
  out.require(seconds < 300.0, "runtime under 5 min");
  return out;
}

Outcome delta_property() {
  Outcome out;
  std::mt19937_64 rng(41);
  const auto names = bundled_shape_names();
  std::size_t sessions = 0;
  for (int i = 0; i < 12; ++i) {
    const auto& name = names[rng() % names.size()];
    const MetricId metric = kAllMetrics[rng() % std::size(kAllMetrics)];
    const ConstraintKind kind = rng() % 2 ? ConstraintKind::Initial : ConstraintKind::Final;
    const auto map = evaluate(name, metric, kind, 5);
    for (Representation rep : kAllRepresentations) {
      out.require(accumulated_similarity_difference(map, rep) >= 0.0, name + "/" + to_string(metric));
    }
    ++sessions;
  }
  const auto map = evaluate("writing", MetricId::Hausdorff, ConstraintKind::Initial, 9);
  const double ja = accumulated_similarity_difference(map, Representation::JA);
  const double lte = accumulated_similarity_difference(map, Representation::LTE);
  const double dmp = accumulated_similarity_difference(map, Representation::DMP);
  out.require(ja >= 0.0 && lte >= 0.0 && dmp >= 0.0, "writing/hausdorff non-negative");
  out.require(ja != lte && lte != dmp && ja != dmp, "writing/hausdorff strict ordering");
  out.detail << sessions << " random sessions non-negative; writing/hausdorff delta ja=" << ja << " lte=" << lte
             << " dmp=" << dmp;
  return out;
}

Outcome metric_oracles() {
  Outcome out;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> len(2, 6);
  std::size_t pairs = 0;
  for (Eigen::Index dims : {2, 3}) {
    for (int i = 0; i < 100; ++i) {
      const auto a = oracle::random_curve(rng, len(rng), dims);
      const auto b = oracle::random_curve(rng, len(rng), dims);
      out.require(metrics::frechet(a, b) == oracle::frechet(a, b), "frechet");
      out.require(metrics::dtw(a, b) == oracle::dtw(a, b), "dtw");
      out.require(metrics::hausdorff(a, b) == oracle::hausdorff(a, b), "hausdorff");
      ++pairs;
    }
  }
  out.detail << pairs << " random pairs, exact equality for frechet, dtw, hausdorff";
  return out;
}

Outcome representation_contracts() {
  Outcome out;
  double lte_identity = 0.0;
  for (const auto& name : bundled_shape_names()) {
    const auto demo = shape(name);
    const auto rep = LteModel(demo).reproduce(BoundaryConstraint::both(demo.front(), demo.back()));
    lte_identity = std::max(lte_identity, (rep.samples() - demo.samples()).cwiseAbs().maxCoeff());
  }
  out.require(lte_identity <= 1e-9, "LTE identity");

  SampleMatrix line(50, 2);
  for (Eigen::Index i = 0; i < 50; ++i) line.row(i) << static_cast<double>(i) / 49.0, 0.0;
  const Trajectory line_demo(line);
  const Eigen::RowVector2d s(0.0, 1.0), g(1.0, 2.0);
  const auto lte_line = LteModel(line_demo).reproduce(BoundaryConstraint::both(s.transpose(), g.transpose()));
  const double lte_oracle = (lte_line.samples() - oracle::lte(line, s, g)).cwiseAbs().maxCoeff();
  out.require(lte_oracle <= 1e-8, "LTE straight line vs oracle");

  const auto sshape = shape("sshape");
  std::vector<double> sweep;
  for (double lambda : {1.0, 10.0, 100.0}) {
    const auto rep =
        JaModel(sshape, JaConfig{lambda}).reproduce(BoundaryConstraint::both(sshape.front(), sshape.back()));
    sweep.push_back(rms_over_diag(rep, sshape));
  }
  out.require(sweep[0] > sweep[1] && sweep[1] > sweep[2], "JA lambda sweep monotone");

  double worst_self = 0.0;
  for (const auto& name : bundled_shape_names()) {
    const auto demo = shape(name);
    const auto rep = dmp_fit(demo).reproduce(BoundaryConstraint::both(demo.front(), demo.back()));
    worst_self = std::max(worst_self, rms_over_diag(rep, demo));
  }
  out.require(worst_self < 0.03, "DMP self-reconstruction");

  // Displaced starts drawn from the default generalization region around the
  // S-shape's initial point.
  const auto dmp = dmp_fit(sshape);
  const double diag = sshape.bbox_diagonal();
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-0.25, 0.25);
  double worst_goal = 0.0;
  int within = 0;
  for (int i = 0; i < 20; ++i) {
    Point start = sshape.front();
    start(0) += u(rng) * diag;
    start(1) += u(rng) * diag;
    const auto rep = dmp.reproduce(BoundaryConstraint::initial(start));
    const double err = (rep.back() - sshape.back()).norm() / diag;
    worst_goal = std::max(worst_goal, err);
    within += err <= 0.01;
  }
  out.require(within == 20, "DMP goal convergence for 20 displaced starts");

  out.detail << "LTE identity " << lte_identity << "; LTE line " << lte_oracle << "; JA RMS/diag " << sweep[0]
             << " > " << sweep[1] << " > " << sweep[2] << "; DMP self RMS/diag max " << worst_self
             << "; DMP goal error/diag max " << worst_goal << " (" << within << "/20 within 1%)";
  return out;
}

Outcome behavioural_contrast() {
  Outcome out;
  const auto demo = shape("sshape");
  const double diag = demo.bbox_diagonal();
  Point start = demo.front();
  start(0) += 0.2 * diag;
  start(1) -= 0.15 * diag;
  const auto c = BoundaryConstraint::initial(start);
  const auto ja = JaModel(demo).reproduce(c);
  const auto lte = LteModel(demo).reproduce(c);
  const double curv_ja = distance(MetricId::CurvatureComparison, ja, demo);
  const double curv_lte = distance(MetricId::CurvatureComparison, lte, demo);
  const double end_ja = distance(MetricId::EndpointConvergence, ja, demo);
  const double end_lte = distance(MetricId::EndpointConvergence, lte, demo);
  out.require(curv_lte < curv_ja, "LTE wins curvature");
  out.require(end_ja < end_lte, "JA wins endpoint convergence");
  out.detail << "curvature lte " << curv_lte << " < ja " << curv_ja << "; endpoint ja " << end_ja << " < lte "
             << end_lte;
  return out;
}

Outcome determinism() {
  Outcome out;
  std::mt19937_64 rng(3);
  const auto names = bundled_shape_names();
  const unsigned hw = std::max(2u, std::thread::hardware_concurrency());
  for (int i = 0; i < 3; ++i) {
    const auto& name = names[rng() % names.size()];
    const MetricId metric = kAllMetrics[rng() % std::size(kAllMetrics)];
    const auto sequential = evaluate(name, metric, ConstraintKind::Initial, 9, 1);
    for (unsigned workers : {2u, 4u, hw}) {
      out.require(identical(sequential, evaluate(name, metric, ConstraintKind::Initial, 9, workers)),
                  name + " with " + std::to_string(workers) + " workers");
    }
    out.detail << name << "/" << to_string(metric) << " ";
  }
  out.detail << "bit-identical for 1, 2, 4 and " << hw << " workers";
  return out;
}

Outcome normalization_properties() {
  Outcome out;
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> value(0.0, 100.0);
  std::uniform_int_distribution<int> count(2, 50);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> d(static_cast<std::size_t>(count(rng)));
    for (double& v : d) v = value(rng);
    const double lo = *std::min_element(d.begin(), d.end());
    const double hi = *std::max_element(d.begin(), d.end());
    const auto s = normalize_similarities(d);
    for (std::size_t k = 0; k < d.size(); ++k) out.require(s[k] == (hi - d[k]) / (hi - lo), "closed form");
  }

  const auto names = bundled_shape_names();
  std::uniform_real_distribution<double> gap(0.001, 5.0);
  for (int i = 0; i < 10; ++i) {
    const auto& name = names[rng() % names.size()];
    const MetricId metric = kAllMetrics[rng() % std::size(kAllMetrics)];
    const auto map = evaluate(name, metric, ConstraintKind::Initial, 5);
    std::vector<double> values;
    for (Eigen::Index k = 0; k < map.raw.size(); ++k) {
      if (std::isfinite(map.raw.data()[k])) values.push_back(map.raw.data()[k]);
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (int m = 0; m < 10; ++m) {
      // Strictly increasing image of the sorted distinct distances.
      std::map<double, double> image;
      double acc = gap(rng);
      for (double v : values) {
        image[v] = acc;
        acc += gap(rng);
      }
      Eigen::MatrixXd moved = map.raw;
      for (Eigen::Index k = 0; k < moved.size(); ++k) {
        if (std::isfinite(moved.data()[k])) moved.data()[k] = image.at(moved.data()[k]);
      }
      const auto remapped = assemble_similarity_map(map.grid, map.metric, map.constraint, map.reps, moved, {});
      out.require(remapped.best_label == map.best_label, name + "/" + to_string(metric));
    }
  }
  out.detail << "1000 random inputs match (max-d)/(max-min); labels unchanged under 10 monotone maps x 10 sessions";
  return out;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"metric-bias decisions", bias_decisions},
      {"accumulated similarity difference", delta_property},
      {"metric oracle equivalence", metric_oracles},
      {"representation contracts", representation_contracts},
      {"behavioural contrast", behavioural_contrast},
      {"engine determinism", determinism},
      {"normalization and argmax", normalization_properties},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "threw: " << e.what();
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
