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


#include "kdvsplit/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "kdvsplit/errors.hpp"
#include "kdvsplit/simd/kernels.hpp"

namespace kdvsplit::stepper {

namespace {

template <class F>
void staged(int step, const char* stage, F&& f) {
  try {
    f();
  } catch (const StepError&) {
    throw;
  } catch (const std::exception& e) {
    throw StepError(step, stage, e.what());
  }
}

bool close(double x, double y, double rel) {
  return std::abs(x - y) <= rel * std::max(1.0, std::max(std::abs(x), std::abs(y)));
}

}  // namespace

void Discretization::validate() const {
  if (!(interval.a < interval.b)) throw std::invalid_argument("interval needs a < b");
  if (N < 8) throw std::invalid_argument("N must be >= 8");
  if (M < 1) throw std::invalid_argument("M must be >= 1");
  if (!(T > 0.0)) throw std::invalid_argument("T must be > 0");
}

AdvectionField AdvectionField::make(ScalarFunction g, const Interval& interval,
                                    assembly::DeclaredForm form) {
  AdvectionField f;
  f.g = std::move(g);
  f.interval = interval;
  f.g_a = f.g(interval.a, 0);
  f.g_b = f.g(interval.b, 0);
  f.form = form;

  if (form.kind == assembly::DeclaredForm::Kind::kPolynomial) {
    if (form.degree < 0) throw std::invalid_argument("polynomial degree must be >= 0");
    const int n = form.degree;
    const int samples = 4 * (n + 1) + 8;
    Eigen::MatrixXd v(samples, n + 1);
    Eigen::VectorXd rhs(samples);
    double scale = 1.0;
    for (int i = 0; i < samples; ++i) {
      const double y = -std::cos(std::numbers::pi * (i + 0.5) / samples);
      for (int k = 0; k <= n; ++k) v(i, k) = orthopoly::legendre(k, y);
      rhs(i) = f.g(interval.to_physical(y), 0);
      scale = std::max(scale, std::abs(rhs(i)));
    }
    const Eigen::VectorXd coef = v.colPivHouseholderQr().solve(rhs);
    const double misfit = (v * coef - rhs).cwiseAbs().maxCoeff();
    if (misfit > 1e-10 * scale) {
      std::ostringstream os;
      os << "g does not fit a polynomial of declared degree " << n << " (misfit " << misfit
         << ")";
      throw std::invalid_argument(os.str());
    }
  }
  return f;
}

double AdvectionField::p_g(double x) const {
  return g_a + (g_b - g_a) * (x - interval.a) / (interval.b - interval.a);
}

double AdvectionField::g_star(double x) const { return g(x, 0) - p_g(x); }

double AdvectionField::g_star_dx(double x) const {
  return g(x, 1) - (g_b - g_a) / (interval.b - interval.a);
}

double AdvectionField::max_abs_gstar_dx(int samples) const {
  samples = std::max(samples, 2);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = interval.a + (interval.b - interval.a) * i / (samples - 1);
    worst = std::max(worst, std::abs(g_star_dx(x)));
  }
  return worst;
}

Operators build_operators(const Discretization& disc, const AdvectionField& field,
                          const ztbc::BoundaryKernels& kernels) {
  disc.validate();
  const double tau = disc.tau();
  if (kernels.steps() < disc.M) {
    throw std::invalid_argument("boundary kernels cover fewer steps than M");
  }
  if (!close(kernels.tau, tau, 1e-12)) {
    throw std::invalid_argument("boundary kernels were computed for a different tau");
  }
  if (!close(kernels.g_a, field.g_a, 1e-12) || !close(kernels.g_b, field.g_b, 1e-12)) {
    throw std::invalid_argument("boundary kernels were computed for different g_a, g_b");
  }

  const int N = disc.N;
  const double s = disc.interval.scale();
  Operators ops;
  ops.disc = disc;
  ops.boundary = {kernels.y1[0], kernels.y2[0], kernels.y3[0],
                  kernels.y4[0], field.g_a,     field.g_b};
  ops.dispersive = orthopoly::dispersive_rule(N);
  ops.gauss = orthopoly::gauss_legendre_rule(N);
  ops.basis = pg::make_basis(N, pg::to_reference(ops.boundary, disc.interval));

  ops.Md = assembly::mass_dispersive(ops.basis, ops.dispersive);
  ops.Sd = assembly::stiffness_dispersive(ops.basis, ops.dispersive, field.line(), s);
  ops.Ma = assembly::mass_advection(ops.gauss);
  ops.g_star_nodes.resize(N + 1);
  for (int k = 0; k <= N; ++k) {
    ops.g_star_nodes[k] = field.g_star(disc.interval.to_physical(ops.gauss.nodes[k]));
  }
  ops.Sa = assembly::stiffness_advection(ops.gauss, ops.g_star_nodes, s, field.form);
  ops.transition = assembly::transition_matrices(ops.basis, ops.dispersive, ops.gauss);
  ops.diff = assembly::differentiation_pair(ops.gauss);
  ops.plan = transforms::make_plan(ops.gauss);

  const double h = 0.5 * tau;
  ops.explicit_t = BandedMatrix::combine(1.0, ops.Md, -h, ops.Sd).transposed();
  ops.md_t = std::make_shared<const BandedLU>(ops.Md.transposed());
  ops.implicit_t =
      std::make_shared<const BandedLU>(BandedMatrix::combine(1.0, ops.Md, h, ops.Sd).transposed());

  using Kind = assembly::AdvectionStiffness::Kind;
  if (ops.Sa.kind == Kind::kBanded) {
    ops.adv_rhs_banded = BandedMatrix::combine(1.0, ops.Ma, -h, ops.Sa.banded).transposed();
    ops.adv_lhs_banded = std::make_shared<const BandedLU>(
        BandedMatrix::combine(1.0, ops.Ma, h, ops.Sa.banded).transposed());
  } else if (ops.Sa.kind == Kind::kDense) {
    const Eigen::MatrixXd ma = ops.Ma.to_dense();
    ops.adv_rhs_dense = (ma - h * ops.Sa.dense).transpose();
    auto lu = std::make_shared<Eigen::PartialPivLU<Eigen::MatrixXd>>(
        Eigen::MatrixXd((ma + h * ops.Sa.dense).transpose()));
    if (!(lu->rcond() > 1e-14)) {
      throw FactorizationError("advection matrix M^a + tau/2 S^a is numerically singular");
    }
    ops.adv_lhs_dense = std::move(lu);
  }

  ops.left_value.resize(N + 1);
  ops.left_slope.resize(N + 1);
  ops.right_value.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    ops.left_value[n] = orthopoly::legendre_endpoint(n, 0, -1);
    ops.left_slope[n] = orthopoly::legendre_endpoint(n, 1, -1);
    ops.right_value[n] = orthopoly::legendre_endpoint(n, 0, 1);
  }
  return ops;
}

Solver::Solver(const Discretization& disc, const AdvectionField& field,
               ztbc::BoundaryKernels kernels)
    : disc_(disc), field_(field), kernels_(std::move(kernels)) {
  ops_ = build_operators(disc_, field_, kernels_);
  guard_.max_gstar_dx = field_.max_abs_gstar_dx(10 * disc_.N);
  guard_.ratio = disc_.tau() * guard_.max_gstar_dx / 4.0;
  if (!guard_.satisfied()) {
    std::cerr << "warning: stability guard tau*||d_x g*||/4 = " << guard_.ratio
              << " is not below 1\n";
  }
}

std::vector<double> Solver::quadratic_against_dual(const std::array<double, 3>& q) const {
  const int n = ops_.basis.size();
  std::vector<double> v(n, 0.0);
  for (int j = 0; j <= std::min(2, n - 1); ++j) {
    const auto c = pg::basis_legendre(ops_.basis.dual[j]);
    for (int i = j; i <= 2; ++i) v[j] += q[i] * c[i - j] * 2.0 / (2 * i + 1);
  }
  return v;
}

std::array<double, 3> Solver::advected_lift(const pg::LiftPolynomial& p) const {
  const double s = disc_.interval.scale();
  const double c = 0.5 * (field_.g_a + field_.g_b);
  const double d = 0.5 * (field_.g_b - field_.g_a);
  const auto& l = p.legendre;
  return {s * (c * l[1] + d * l[2]), s * (3.0 * c * l[2] + d * l[1]), s * 2.0 * d * l[2]};
}

std::vector<double> Solver::legendre_coefficients(const SpectralState& state) const {
  const int N = disc_.N;
  std::vector<double> c(N + 1, 0.0);
  for (int k = 0; k < ops_.basis.size(); ++k) {
    const auto t = pg::basis_legendre(ops_.basis.trial[k]);
    for (int i = 0; i < 4; ++i) c[k + i] += state.u_h[k] * t[i];
  }
  for (int i = 0; i < 3; ++i) c[i] += state.lift.legendre[i];
  return c;
}

void Solver::append_traces(SpectralState& state) const {
  const std::vector<double> c = legendre_coefficients(state);
  state.trace_u_a.push_back(simd::dot(ops_.left_value, c));
  state.trace_ux_a.push_back(disc_.interval.scale() * simd::dot(ops_.left_slope, c));
  state.trace_u_b.push_back(simd::dot(ops_.right_value, c));
}

SpectralState Solver::initialize(const ScalarFunction& u0) const {
  const double ua = u0(disc_.interval.a, 0), ub = u0(disc_.interval.b, 0);
  if (!(std::abs(ua) <= 1e-12 && std::abs(ub) <= 1e-12)) {
    std::ostringstream os;
    os << "initial value must vanish at the boundary (u0(a) = " << ua << ", u0(b) = " << ub
       << ")";
    throw SupportViolation(os.str());
  }
  const auto& rule = ops_.dispersive;
  std::vector<double> values(rule.nodes.size());
  for (std::size_t l = 0; l < values.size(); ++l) {
    values[l] = u0(disc_.interval.to_physical(rule.nodes[l]), 0);
  }
  const double slope = u0(disc_.interval.b, 1) / disc_.interval.scale();
  const assembly::NodalBasis psi = assembly::dual_on_rule(ops_.basis, rule);

  const int n = ops_.basis.size();
  std::vector<double> rhs(n);
  for (int j = 0; j < n; ++j) {
    rhs[j] = orthopoly::inner_product(rule, {values, slope},
                                      {psi.values[j], psi.right_derivative[j]});
  }
  SpectralState state;
  state.step = 0;
  state.u_h = ops_.md_t->solve(rhs);
  append_traces(state);
  return state;
}

void Solver::step(SpectralState& state) const {
  const int m = state.step;
  const int next = m + 1;
  if (m >= kernels_.steps()) {
    throw StepError(next, "history", "boundary kernels do not reach this step");
  }
  const int N = disc_.N;
  const double h = 0.5 * disc_.tau();
  const auto& ops = ops_;

  // (i) explicit dispersive half step; the lift of u^m is kept for u*.
  std::vector<double> u_star;
  staged(next, "explicit-dispersive", [&] {
    std::vector<double> rhs = ops.explicit_t.multiply(state.u_h);
    const auto p = quadratic_against_dual(advected_lift(state.lift));
    for (std::size_t j = 0; j < p.size(); ++j) rhs[j] -= h * p[j];
    u_star = ops.md_t->solve(rhs);
  });

  // (ii) Legendre coefficients of u* = u*_h + p_2^m.
  std::vector<double> ua(N + 1);
  staged(next, "transition-to-advection", [&] {
    std::vector<double> ip = ops.transition.da.multiply_transpose(u_star);
    for (int j = 0; j < 3; ++j) ip[j] += state.lift.legendre[j] * 2.0 / (2 * j + 1);
    for (int j = 0; j <= N; ++j) ua[j] = ip[j] / ops.Ma(j, j);
  });

  // (iii) Crank-Nicolson advection with g*.
  staged(next, "advection", [&] {
    using Kind = assembly::AdvectionStiffness::Kind;
    if (ops.Sa.kind == Kind::kBanded) {
      ua = ops.adv_lhs_banded->solve(ops.adv_rhs_banded.multiply(ua));
    } else if (ops.Sa.kind == Kind::kDense) {
      const Eigen::Map<const Eigen::VectorXd> y(ua.data(), N + 1);
      const Eigen::VectorXd x = ops.adv_lhs_dense->solve(ops.adv_rhs_dense * y);
      ua.assign(x.data(), x.data() + N + 1);
    }
  });

  // (iv) dispersive inner products of u^{m+1/2}.
  std::vector<double> rhs;
  staged(next, "transition-to-dispersive",
         [&] { rhs = ops.transition.ad.multiply_transpose(ua); });

  // (v) boundary history, lift and implicit dispersive half step.
  staged(next, "boundary-history", [&] {
    const double h1 = -(ztbc::history_convolution(kernels_.y1, state.trace_ux_a, m) +
                        ztbc::history_convolution(kernels_.y2, state.trace_u_a, m));
    const double h2 = ztbc::history_convolution(kernels_.y3, state.trace_u_b, m);
    const double h3 = ztbc::history_convolution(kernels_.y4, state.trace_u_b, m);
    state.lift = pg::lift_polynomial(h1, h2, h3, ops.boundary, disc_.interval);
  });
  staged(next, "implicit-dispersive", [&] {
    const auto p2 = quadratic_against_dual(state.lift.legendre);
    const auto p = quadratic_against_dual(advected_lift(state.lift));
    for (std::size_t j = 0; j < p.size(); ++j) rhs[j] -= p2[j] + h * p[j];
    state.u_h = ops.implicit_t->solve(rhs);
  });

  // (vi) traces of u^{m+1}.
  state.step = next;
  append_traces(state);
  const double last = state.trace_u_a.back() + state.trace_ux_a.back() + state.trace_u_b.back();
  if (!std::isfinite(last)) throw StepError(next, "traces", "non-finite boundary trace");
}

PointEvaluator Solver::evaluator(std::span<const double> points, int derivative) const {
  if (derivative < 0 || derivative > 3) {
    throw std::invalid_argument("evaluator: derivative order must be 0..3");
  }
  const int N = disc_.N;
  const double s = disc_.interval.scale();
  const double sd = std::pow(s, derivative);
  const double slack = 1e-12 * (disc_.interval.b - disc_.interval.a);
  PointEvaluator ev;
  ev.rows = static_cast<int>(points.size());
  ev.cols = N + 1;
  ev.table.resize(static_cast<std::size_t>(ev.rows) * ev.cols);
  for (int i = 0; i < ev.rows; ++i) {
    const double x = points[i];
    if (x < disc_.interval.a - slack || x > disc_.interval.b + slack) {
      throw std::invalid_argument("evaluation point outside [a, b]");
    }
    const double y = std::clamp(disc_.interval.to_reference(x), -1.0, 1.0);
    const auto tab = orthopoly::legendre_table(N, y, derivative);
    for (int n = 0; n <= N; ++n) {
      ev.table[static_cast<std::size_t>(i) * ev.cols + n] = sd * tab(derivative, n);
    }
  }
  return ev;
}

std::vector<double> Solver::reconstruct(const SpectralState& state,
                                        const PointEvaluator& ev) const {
  const std::vector<double> c = legendre_coefficients(state);
  std::vector<double> out(ev.rows);
  simd::gemv(ev.table, ev.rows, ev.cols, c, out);
  return out;
}

std::vector<double> Solver::reconstruct(const SpectralState& state,
                                        std::span<const double> points, int derivative) const {
  return reconstruct(state, evaluator(points, derivative));
}

RunResult run(const Solver& solver, const ScalarFunction& u0, const RunOptions& options) {
  const auto& disc = solver.operators().disc;
  const double tau = disc.tau();
  std::vector<std::pair<int, double>> wanted;
  for (double t : options.snapshot_times) {
    if (t < -1e-12 || t > disc.T * (1.0 + 1e-12)) {
      throw std::invalid_argument("snapshot time outside [0, T]");
    }
    wanted.emplace_back(static_cast<int>(std::lround(t / tau)), t);
  }

  RunResult result;
  result.guard = solver.guard();
  const PointEvaluator ev = solver.evaluator(options.grid);
  SpectralState state = solver.initialize(u0);

  auto record = [&](int m) {
    std::vector<double> values = solver.reconstruct(state, ev);
    double norm2 = 0.0;
    for (double v : values) norm2 += v * v;
    result.norms.push_back(std::sqrt(norm2));
    for (const auto& [step, t] : wanted) {
      if (step == m) result.snapshots.push_back({t, m, values});
    }
    if (options.record_every_step) result.steps.push_back(std::move(values));
  };

  record(0);
  for (int m = 0; m < disc.M; ++m) {
    solver.step(state);
    record(m + 1);
  }
  result.final_state = std::move(state);
  return result;
}

}  // namespace kdvsplit::stepper
