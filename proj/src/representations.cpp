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

#include "samlfd/representations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "samlfd/banded_lsq.hpp"
#include "samlfd/error.hpp"

namespace samlfd {

const char* to_string(Representation rep) noexcept {
  switch (rep) {
    case Representation::JA: return "ja";
    case Representation::LTE: return "lte";
    case Representation::DMP: return "dmp";
  }
  return "unknown";
}

Representation parse_representation(const std::string& label) {
  for (Representation rep : kAllRepresentations) {
    if (label == to_string(rep)) return rep;
  }
  fail(ErrorCode::InvalidArgument, "unknown representation '" + label + "' (valid: ja, lte, dmp)");
}

std::vector<Representation> parse_representation_list(const std::string& csv) {
  std::vector<Representation> reps;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    reps.push_back(parse_representation(item));
  }
  if (reps.empty()) fail(ErrorCode::InvalidArgument, "representation list is empty");
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  return reps;
}

namespace {

struct EndpointSolution {
  SampleMatrix base;
  Eigen::VectorXd start_response;
  Eigen::VectorXd goal_response;
};

// Adds the two weighted endpoint rows. RHS layout: n demo columns, then the
// unit start and goal columns used to recover the endpoint responses.
void add_endpoint_rows(BandedLeastSquares& solver, const Trajectory& demo, double weight) {
  const auto n = static_cast<Eigen::Index>(demo.dims());
  const auto last = static_cast<Eigen::Index>(demo.size()) - 1;
  std::vector<double> rhs(static_cast<std::size_t>(n + 2), 0.0);
  const std::array<double, 1> coeff{weight};

  for (Eigen::Index d = 0; d < n; ++d) rhs[d] = weight * demo.samples()(0, d);
  rhs[n] = weight;
  rhs[n + 1] = 0.0;
  solver.add_row(0, coeff, rhs);

  for (Eigen::Index d = 0; d < n; ++d) rhs[d] = weight * demo.samples()(last, d);
  rhs[n] = 0.0;
  rhs[n + 1] = weight;
  solver.add_row(last, coeff, rhs);
}

EndpointSolution split_solution(const Eigen::MatrixXd& x, Eigen::Index n) {
  EndpointSolution out;
  out.base = x.leftCols(n);
  out.start_response = x.col(n);
  out.goal_response = x.col(n + 1);
  return out;
}

Trajectory apply_endpoints(const Trajectory& demo, const SampleMatrix& base,
                           const Eigen::VectorXd& start_response,
                           const Eigen::VectorXd& goal_response,
                           const BoundaryConstraint& constraint) {
  auto [start, goal] = constraint.resolve(demo);
  const Eigen::RowVectorXd start_shift = (start - demo.front()).transpose();
  const Eigen::RowVectorXd goal_shift = (goal - demo.back()).transpose();
  SampleMatrix out = base + start_response * start_shift + goal_response * goal_shift;
  if (!out.allFinite()) {
    fail(ErrorCode::Computation, "reproduction is not finite; the endpoint system is ill-conditioned");
  }
  return Trajectory(std::move(out), demo.duration());
}

void check_weight(double w, const char* what) {
  if (!std::isfinite(w) || w <= 0.0) {
    fail(ErrorCode::InvalidArgument, std::string(what) + " must be positive and finite");
  }
}

// Second-order central differences, one-sided at the ends.
SampleMatrix gradient(const SampleMatrix& y, double h) {
  const Eigen::Index t = y.rows();
  SampleMatrix dy(t, y.cols());
  dy.row(0) = (y.row(1) - y.row(0)) / h;
  dy.row(t - 1) = (y.row(t - 1) - y.row(t - 2)) / h;
  for (Eigen::Index k = 1; k + 1 < t; ++k) dy.row(k) = (y.row(k + 1) - y.row(k - 1)) / (2.0 * h);
  return dy;
}

}  // namespace

// ---------------------------------------------------------------------------

LteModel::LteModel(Trajectory demo, LteConfig config)
    : demo_(std::move(demo)), config_(config), delta_(0, demo_.dims()) {
  check_weight(config_.constraint_weight, "LTE constraint weight");
  const auto t = static_cast<Eigen::Index>(demo_.size());
  const auto n = static_cast<Eigen::Index>(demo_.dims());
  const auto& x = demo_.samples();

  delta_.resize(std::max<Eigen::Index>(t - 2, 0), n);
  for (Eigen::Index i = 1; i + 1 < t; ++i) delta_.row(i - 1) = x.row(i - 1) - 2.0 * x.row(i) + x.row(i + 1);

  BandedLeastSquares solver(t, 3, n + 2);
  add_endpoint_rows(solver, demo_, config_.constraint_weight);
  const std::array<double, 3> laplacian{1.0, -2.0, 1.0};
  std::vector<double> rhs(static_cast<std::size_t>(n + 2), 0.0);
  for (Eigen::Index i = 1; i + 1 < t; ++i) {
    for (Eigen::Index d = 0; d < n; ++d) rhs[d] = delta_(i - 1, d);
    solver.add_row(i - 1, laplacian, rhs);
  }
  auto sol = split_solution(solver.solve(), n);
  base_ = std::move(sol.base);
  start_response_ = std::move(sol.start_response);
  goal_response_ = std::move(sol.goal_response);
}

Trajectory LteModel::reproduce(const BoundaryConstraint& constraint) const {
  return apply_endpoints(demo_, base_, start_response_, goal_response_, constraint);
}

// ---------------------------------------------------------------------------

JaModel::JaModel(Trajectory demo, JaConfig config) : demo_(std::move(demo)), config_(config) {
  check_weight(config_.lambda, "JA lambda");
  check_weight(config_.constraint_weight, "JA constraint weight");
  const auto t = static_cast<Eigen::Index>(demo_.size());
  const auto n = static_cast<Eigen::Index>(demo_.dims());
  const auto& x = demo_.samples();

  // Both integrals are Riemann sums with step h; dividing the whole objective
  // by h^-5 leaves unit third differences and an accuracy weight (lambda*h)^3.
  const double accuracy = std::pow(config_.lambda * demo_.step(), 3);

  BandedLeastSquares solver(t, 4, n + 2);
  add_endpoint_rows(solver, demo_, config_.constraint_weight);
  std::vector<double> rhs(static_cast<std::size_t>(n + 2), 0.0);
  const std::array<double, 4> jerk{-1.0, 3.0, -3.0, 1.0};
  for (Eigen::Index i = 0; i + 3 < t; ++i) solver.add_row(i, jerk, rhs);
  const std::array<double, 1> acc{accuracy};
  for (Eigen::Index i = 0; i < t; ++i) {
    for (Eigen::Index d = 0; d < n; ++d) rhs[d] = accuracy * x(i, d);
    solver.add_row(i, acc, rhs);
  }
  auto sol = split_solution(solver.solve(), n);
  base_ = std::move(sol.base);
  start_response_ = std::move(sol.start_response);
  goal_response_ = std::move(sol.goal_response);
}

Trajectory JaModel::reproduce(const BoundaryConstraint& constraint) const {
  return apply_endpoints(demo_, base_, start_response_, goal_response_, constraint);
}

// ---------------------------------------------------------------------------

DmpModel::DmpModel(Trajectory demo, DmpConfig config)
    : demo_(std::move(demo)), config_(std::move(config)) {}

double DmpModel::phase(double t) const { return std::exp(-config_.alpha_s * t / tau_); }

Eigen::RowVectorXd DmpModel::forcing(double s) const {
  const Eigen::ArrayXd psi = (-widths_.array() * (s - centers_.array()).square()).exp();
  const double norm = psi.sum();
  Eigen::RowVectorXd f = Eigen::RowVectorXd::Zero(weights_.cols());
  if (norm <= 0.0) return f;
  f = (psi.matrix().transpose() * weights_) * (s / norm);
  return f;
}

DmpModel dmp_fit(const Trajectory& demo, const DmpConfig& config) {
  check_weight(config.stiffness, "DMP stiffness");
  check_weight(config.alpha_s, "DMP alpha_s");
  if (config.num_basis < 2) fail(ErrorCode::InvalidArgument, "DMP needs at least 2 basis functions");
  if (config.tau) check_weight(*config.tau, "DMP tau");

  DmpModel model(demo, config);
  const double k = config.stiffness;
  model.damping_ = 2.0 * std::sqrt(k);
  model.tau_ = config.tau.value_or(demo.duration());
  const double tau = model.tau_;
  const double d = model.damping_;

  const auto nb = static_cast<Eigen::Index>(config.num_basis);
  model.centers_.resize(nb);
  model.widths_.resize(nb);
  for (Eigen::Index i = 0; i < nb; ++i) {
    const double ti = static_cast<double>(i) / static_cast<double>(nb - 1);
    model.centers_(i) = std::exp(-config.alpha_s * ti);
  }
  // Neighbouring Gaussians cross at half activation.
  for (Eigen::Index i = 0; i + 1 < nb; ++i) {
    const double gap = model.centers_(i) - model.centers_(i + 1);
    model.widths_(i) = 4.0 * std::log(2.0) / (gap * gap);
  }
  model.widths_(nb - 1) = model.widths_(nb - 2);

  if (demo.size() < config.num_basis) {
    model.warnings_.push_back("demonstration has fewer samples (" + std::to_string(demo.size()) +
                              ") than basis functions (" + std::to_string(config.num_basis) + ")");
  }
  const auto& x = demo.samples();
  if (((x.rowwise() - x.row(0)).rowwise().norm().maxCoeff()) == 0.0) {
    model.warnings_.push_back("demonstration has zero displacement; forcing weights are zero");
  }

  const double h = demo.step();
  const SampleMatrix xd = gradient(x, h);
  const SampleMatrix xdd = gradient(xd, h);
  model.initial_velocity_ = tau * xd.row(0);

  const Eigen::Index t = x.rows();
  const Eigen::RowVectorXd x0 = x.row(0);
  const Eigen::RowVectorXd g = x.row(t - 1);
  Eigen::VectorXd s(t);
  SampleMatrix target(t, x.cols());
  for (Eigen::Index i = 0; i < t; ++i) {
    s(i) = model.phase(static_cast<double>(i) * h);
    target.row(i) = (tau * tau * xdd.row(i) + d * tau * xd.row(i)) / k - (g - x.row(i)) + (g - x0) * s(i);
  }

  model.weights_ = Eigen::MatrixXd::Zero(nb, x.cols());
  for (Eigen::Index b = 0; b < nb; ++b) {
    const Eigen::ArrayXd psi = (-model.widths_(b) * (s.array() - model.centers_(b)).square()).exp();
    const double denom = (psi * s.array().square()).sum();
    if (denom <= 1e-300) continue;
    for (Eigen::Index dim = 0; dim < x.cols(); ++dim) {
      const double numer = (psi * s.array() * target.col(dim).array()).sum();
      model.weights_(b, dim) = numer / denom;
    }
  }

  double residual = 0.0;
  for (Eigen::Index i = 0; i < t; ++i) residual += (target.row(i) - model.forcing(s(i))).squaredNorm();
  model.fit_residual_ = residual;
  return model;
}

Trajectory DmpModel::reproduce(const BoundaryConstraint& constraint) const {
  auto [start, goal] = constraint.resolve(demo_);
  const Eigen::RowVectorXd x0 = start.transpose();
  const Eigen::RowVectorXd g = goal.transpose();
  const auto t = static_cast<Eigen::Index>(demo_.size());
  const double h = demo_.step();
  const double k = config_.stiffness;

  // Explicit Euler with too large a step grows geometrically long before it
  // overflows, so a state this far from the goal also counts as divergence.
  const double bound = 1e6 * (demo_.bbox_diagonal() + (g - x0).norm() + 1.0);

  SampleMatrix out(t, demo_.dims());
  Eigen::RowVectorXd x = x0;
  Eigen::RowVectorXd v = initial_velocity_;
  out.row(0) = x;
  for (Eigen::Index i = 0; i + 1 < t; ++i) {
    const double s = phase(static_cast<double>(i) * h);
    const Eigen::RowVectorXd accel =
        (k * (g - x) - damping_ * v - k * (g - x0) * s + k * forcing(s)) / tau_;
    x += (h / tau_) * v;
    v += h * accel;
    if (!x.allFinite() || !v.allFinite() || (x - g).norm() > bound) {
      std::ostringstream msg;
      msg << "DMP integration diverged at step " << i << " (h=" << h << ", tau=" << tau_
          << ", K=" << k << "); reduce the step or stiffness";
      fail(ErrorCode::Computation, msg.str());
    }
    out.row(i + 1) = x;
  }
  return Trajectory(std::move(out), demo_.duration());
}

// ---------------------------------------------------------------------------

ReproducerSet::ReproducerSet(const Trajectory& demo, std::span<const Representation> reps,
                             const RepresentationConfig& config)
    : reps_(reps.begin(), reps.end()) {
  if (reps_.empty()) fail(ErrorCode::InvalidArgument, "no representations configured");
  std::sort(reps_.begin(), reps_.end());
  reps_.erase(std::unique(reps_.begin(), reps_.end()), reps_.end());
  for (Representation rep : reps_) {
    switch (rep) {
      case Representation::LTE: lte_.emplace(demo, config.lte); break;
      case Representation::JA: ja_.emplace(demo, config.ja); break;
      case Representation::DMP: dmp_.emplace(dmp_fit(demo, config.dmp)); break;
    }
  }
}

Trajectory ReproducerSet::reproduce(Representation rep, const BoundaryConstraint& constraint) const {
  switch (rep) {
    case Representation::LTE:
      if (lte_) return lte_->reproduce(constraint);
      break;
    case Representation::JA:
      if (ja_) return ja_->reproduce(constraint);
      break;
    case Representation::DMP:
      if (dmp_) return dmp_->reproduce(constraint);
      break;
  }
  fail(ErrorCode::NotFound, std::string("representation '") + to_string(rep) + "' is not configured");
}

}  // namespace samlfd
