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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "samlfd/trajectory.hpp"

namespace samlfd {

/// Single-demonstration representations. Declaration order is the tie-break
/// precedence used everywhere a winner is picked.
enum class Representation { JA, LTE, DMP };

inline constexpr Representation kAllRepresentations[] = {Representation::JA, Representation::LTE,
                                                         Representation::DMP};

const char* to_string(Representation rep) noexcept;
Representation parse_representation(const std::string& label);
/// Parses a comma separated list, sorts it into precedence order and drops
/// duplicates. Throws on unknown labels or an empty list.
std::vector<Representation> parse_representation_list(const std::string& csv);

// ---------------------------------------------------------------------------
// Laplacian trajectory editing

struct LteConfig {
  double constraint_weight = 1e6;
};

/// Preserves the demonstration's second-difference (Laplacian) coordinates
/// while pinning the endpoints. The stacked system [L; mu*E] X = [Delta; mu*C]
/// is factored once; because the solution is linear in the endpoint values,
/// every reproduction is the demo-endpoint solution plus two endpoint response
/// columns scaled by the endpoint displacement.
class LteModel {
 public:
  explicit LteModel(Trajectory demo, LteConfig config = {});

  const Trajectory& demo() const noexcept { return demo_; }
  const LteConfig& config() const noexcept { return config_; }
  /// (T-2) x n Laplacian coordinates of the demonstration.
  const SampleMatrix& delta() const noexcept { return delta_; }

  Trajectory reproduce(const BoundaryConstraint& constraint) const;

 private:
  Trajectory demo_;
  LteConfig config_;
  SampleMatrix delta_;
  SampleMatrix base_;
  Eigen::VectorXd start_response_;
  Eigen::VectorXd goal_response_;
};

// ---------------------------------------------------------------------------
// Jerk-accuracy model

struct JaConfig {
  /// Accuracy weight; the deviation term is weighted by lambda^6.
  double lambda = 20.0;
  double constraint_weight = 1e6;
};

/// Discrete minimiser of  h*sum |D3 X|^2 + lambda^6 * h*sum |X - X_demo|^2
/// with D3 the third finite difference divided by h^3. Endpoints are pinned by
/// weighted rows, as for LTE.
class JaModel {
 public:
  explicit JaModel(Trajectory demo, JaConfig config = {});

  const Trajectory& demo() const noexcept { return demo_; }
  const JaConfig& config() const noexcept { return config_; }

  Trajectory reproduce(const BoundaryConstraint& constraint) const;

 private:
  Trajectory demo_;
  JaConfig config_;
  SampleMatrix base_;
  Eigen::VectorXd start_response_;
  Eigen::VectorXd goal_response_;
};

// ---------------------------------------------------------------------------
// Dynamic movement primitives

struct DmpConfig {
  double stiffness = 100.0;
  /// Canonical decay; exp(-4.6054) ~= 0.01 at the end of the movement.
  double alpha_s = 4.6054;
  std::size_t num_basis = 50;
  /// Temporal scale; the demonstration's duration when unset.
  std::optional<double> tau;
};

class DmpModel {
 public:
  const Trajectory& demo() const noexcept { return demo_; }
  const DmpConfig& config() const noexcept { return config_; }
  double stiffness() const noexcept { return config_.stiffness; }
  double damping() const noexcept { return damping_; }
  double tau() const noexcept { return tau_; }
  const Eigen::VectorXd& centers() const noexcept { return centers_; }
  const Eigen::VectorXd& widths() const noexcept { return widths_; }
  /// num_basis x n
  const Eigen::MatrixXd& weights() const noexcept { return weights_; }
  /// Sum of squared residuals between the forcing target and the fitted
  /// forcing term over all samples and dimensions.
  double fit_residual() const noexcept { return fit_residual_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Phase value at time t.
  double phase(double t) const;
  /// Learned forcing term f(s).
  Eigen::RowVectorXd forcing(double s) const;

  /// Integrates the transformation system with explicit Euler at the
  /// demonstration's step. A missing start or goal defaults to the demo's.
  Trajectory reproduce(const BoundaryConstraint& constraint) const;

 private:
  friend DmpModel dmp_fit(const Trajectory& demo, const DmpConfig& config);
  DmpModel(Trajectory demo, DmpConfig config);

  Trajectory demo_;
  DmpConfig config_;
  double damping_ = 0.0;
  double tau_ = 1.0;
  Eigen::VectorXd centers_;
  Eigen::VectorXd widths_;
  Eigen::MatrixXd weights_;
  Eigen::RowVectorXd initial_velocity_;
  double fit_residual_ = 0.0;
  std::vector<std::string> warnings_;
};

/// Locally weighted regression of the forcing term from one demonstration.
DmpModel dmp_fit(const Trajectory& demo, const DmpConfig& config = {});

// ---------------------------------------------------------------------------

struct RepresentationConfig {
  LteConfig lte;
  JaConfig ja;
  DmpConfig dmp;
};

/// The fitted models for one demonstration. Immutable after construction, so
/// reproduce() may be called concurrently.
class ReproducerSet {
 public:
  ReproducerSet(const Trajectory& demo, std::span<const Representation> reps,
                const RepresentationConfig& config = {});

  const std::vector<Representation>& representations() const noexcept { return reps_; }
  Trajectory reproduce(Representation rep, const BoundaryConstraint& constraint) const;

 private:
  std::vector<Representation> reps_;
  std::optional<LteModel> lte_;
  std::optional<JaModel> ja_;
  std::optional<DmpModel> dmp_;
};

}  // namespace samlfd
