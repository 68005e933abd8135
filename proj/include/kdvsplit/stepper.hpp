// Copyright 2026 The kdvsplit Authors. All Rights Reserved.
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


// Time integration: Peaceman-Rachford splitting with the endpoint line kept in
// the dispersive stages and the remainder g* in a Crank-Nicolson advection
// stage, closed by discrete transparent boundary conditions.

#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "kdvsplit/assembly.hpp"
#include "kdvsplit/banded.hpp"
#include "kdvsplit/interval.hpp"
#include "kdvsplit/orthopoly.hpp"
#include "kdvsplit/petrov_galerkin.hpp"
#include "kdvsplit/transforms.hpp"
#include "kdvsplit/ztbc.hpp"

namespace kdvsplit::stepper {

/// f(x, d): the d-th x-derivative of a scalar function, d in {0, 1}.
using ScalarFunction = std::function<double(double x, int derivative)>;

struct Discretization {
  Interval interval;
  int N = 0;
  int M = 0;
  double T = 0.0;

  double tau() const { return T / M; }
  /// Throws std::invalid_argument unless a < b, N >= 8, M >= 1, T > 0.
  void validate() const;
};

struct AdvectionField {
  ScalarFunction g;
  Interval interval;
  double g_a = 0.0;
  double g_b = 0.0;
  assembly::DeclaredForm form;

  /// Throws std::invalid_argument when a polynomial declaration does not fit
  /// the sampled g to 1e-10.
  static AdvectionField make(ScalarFunction g, const Interval& interval,
                             assembly::DeclaredForm form);

  double p_g(double x) const;
  double g_star(double x) const;
  double g_star_dx(double x) const;
  /// max |d_x g*| over `samples` equispaced points of [a, b].
  double max_abs_gstar_dx(int samples) const;
  assembly::EndpointLine line() const { return {g_a, g_b}; }
};

/// Everything that depends only on (N, tau, g, interval): quadrature rules,
/// bases, matrices and their factorizations.
struct Operators {
  Discretization disc;
  pg::BoundaryData boundary;  // physical units
  orthopoly::QuadratureRule dispersive;
  orthopoly::QuadratureRule gauss;
  pg::BasisCoeffs basis;
  BandedMatrix Md, Sd, Ma;
  assembly::AdvectionStiffness Sa;
  assembly::TransitionMatrices transition;
  assembly::DifferentiationPair diff;
  transforms::TransformPlan plan;
  std::vector<double> g_star_nodes;  // g* at the Gauss nodes

  BandedMatrix explicit_t;  // (M^d - tau/2 S^d)^T
  std::shared_ptr<const BandedLU> md_t;        // (M^d)^T
  std::shared_ptr<const BandedLU> implicit_t;  // (M^d + tau/2 S^d)^T
  // Advection stage: (M^a + tau/2 S^a)^T x = (M^a - tau/2 S^a)^T y.
  BandedMatrix adv_rhs_banded;
  std::shared_ptr<const BandedLU> adv_lhs_banded;
  Eigen::MatrixXd adv_rhs_dense;
  std::shared_ptr<const Eigen::PartialPivLU<Eigen::MatrixXd>> adv_lhs_dense;

  // Endpoint functionals on Legendre coefficients: u(a), d_y u(a), u(b).
  std::vector<double> left_value, left_slope, right_value;
};

Operators build_operators(const Discretization& disc, const AdvectionField& field,
                          const ztbc::BoundaryKernels& kernels);

struct SpectralState {
  int step = 0;
  std::vector<double> u_h;  // dispersive-space coefficients, length N - 2
  pg::LiftPolynomial lift;
  // Boundary traces for steps 0..step: u(a), d_x u(a), u(b).
  std::vector<double> trace_u_a;
  std::vector<double> trace_ux_a;
  std::vector<double> trace_u_b;
};

/// tau ||d_x g*||_inf / 4; the splitting is provably stable when this is < 1.
struct StabilityGuard {
  double max_gstar_dx = 0.0;
  double ratio = 0.0;
  bool satisfied() const { return ratio < 1.0; }
};

/// Precomputed evaluation of Legendre series and their x-derivatives at a
/// fixed set of physical points.
struct PointEvaluator {
  int rows = 0;
  int cols = 0;
  std::vector<double> table;  // rows x cols, s^d L_n^{(d)}(y_i)
};

class Solver {
 public:
  Solver(const Discretization& disc, const AdvectionField& field,
         ztbc::BoundaryKernels kernels);

  const Operators& operators() const { return ops_; }
  const ztbc::BoundaryKernels& kernels() const { return kernels_; }
  const StabilityGuard& guard() const { return guard_; }

  /// Galerkin projection of u0 onto the dispersive space. Throws
  /// SupportViolation if |u0| exceeds 1e-12 at either endpoint.
  SpectralState initialize(const ScalarFunction& u0) const;

  /// Advances the state by one step. Failures surface as StepError naming
  /// the stage.
  void step(SpectralState& state) const;

  /// Legendre coefficients (length N + 1, reference variable) of u^m.
  std::vector<double> legendre_coefficients(const SpectralState& state) const;

  PointEvaluator evaluator(std::span<const double> points, int derivative = 0) const;
  std::vector<double> reconstruct(const SpectralState& state, const PointEvaluator& ev) const;
  std::vector<double> reconstruct(const SpectralState& state, std::span<const double> points,
                                  int derivative = 0) const;

 private:
  // <q, psi_j>^d for a quadratic with reference Legendre coefficients q.
  std::vector<double> quadratic_against_dual(const std::array<double, 3>& q) const;
  // Legendre coefficients of p_g d_x p for the lift p.
  std::array<double, 3> advected_lift(const pg::LiftPolynomial& p) const;
  void append_traces(SpectralState& state) const;

  Discretization disc_;
  AdvectionField field_;
  ztbc::BoundaryKernels kernels_;
  Operators ops_;
  StabilityGuard guard_;
};

struct RunOptions {
  std::vector<double> snapshot_times;
  std::vector<double> grid;
  /// Keep the grid values of every step 0..M (needed for the error norms).
  bool record_every_step = false;
};

struct Snapshot {
  double t = 0.0;
  int step = 0;
  std::vector<double> values;
};

struct RunResult {
  std::vector<Snapshot> snapshots;
  std::vector<std::vector<double>> steps;  // filled when record_every_step
  std::vector<double> norms;               // l2 norm on the grid, per step
  SpectralState final_state;
  StabilityGuard guard;
};

/// Snapshot times are rounded to the nearest step.
RunResult run(const Solver& solver, const ScalarFunction& u0, const RunOptions& options);

}  // namespace kdvsplit::stepper
