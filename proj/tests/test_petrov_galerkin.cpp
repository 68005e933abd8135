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


#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "kdvsplit/errors.hpp"
#include "kdvsplit/orthopoly.hpp"
#include "kdvsplit/petrov_galerkin.hpp"
#include "kdvsplit/ztbc.hpp"
#include "support/oracles.hpp"

using namespace kdvsplit;
using namespace kdvsplit::pg;
using orthopoly::legendre;

namespace {

const Interval kInterval{-6.0, 6.0};

// Physical leading kernel entries for exterior speeds (g_a, g_b) and step tau.
BoundaryData physical_data(double g_a, double g_b, double tau) {
  const auto k = ztbc::compute_kernels(g_a, g_b, tau, 1);
  return {k.y1[0], k.y2[0], k.y3[0], k.y4[0], g_a, g_b};
}

// Boundary functional applied to L_n, from recurrence-evaluated endpoint
// derivatives. `which` selects one of the six relations.
enum class Rel { kT1, kT2, kT3, kD1, kD2, kD3 };
double functional(Rel which, int n, const BoundaryData& r) {
  auto L = [n](double y, int d) { return legendre(n, y, d); };
  switch (which) {
    case Rel::kT1: return L(-1, 2) + r.y1 * L(-1, 1) + (r.g_a + r.y2) * L(-1, 0);
    case Rel::kT2: return L(1, 1) - r.y3 * L(1, 0);
    case Rel::kT3: return L(1, 2) - r.y4 * L(1, 0);
    case Rel::kD1: return L(1, 2) - r.y3 * L(1, 1) + (r.g_b + r.y4) * L(1, 0);
    case Rel::kD2: return L(-1, 1) + r.y1 * L(-1, 0);
    case Rel::kD3: return L(-1, 2) - r.y2 * L(-1, 0);
  }
  return 0.0;
}

// Generic system for the triple of index j: row i applies relation rels[i]
// to L_{j+1..j+3}, right-hand side applies it to -L_j.
std::array<double, 3> generic_solve(int j, const BoundaryData& r, const Rel (&rels)[3]) {
  std::array<std::array<double, 3>, 3> a{};
  std::array<double, 3> b{};
  for (int i = 0; i < 3; ++i) {
    for (int c = 0; c < 3; ++c) a[i][c] = functional(rels[i], j + 1 + c, r);
    b[i] = -functional(rels[i], j, r);
  }
  return oracle::cramer(a, b);
}

constexpr Rel kTrial[3] = {Rel::kT1, Rel::kT2, Rel::kT3};
constexpr Rel kDual[3] = {Rel::kD1, Rel::kD2, Rel::kD3};

void check_triple(const BasisTriple& t, const std::array<double, 3>& ref, double tol) {
  CHECK(std::abs(t.alpha - ref[0]) <= tol * std::max(1.0, std::abs(ref[0])));
  CHECK(std::abs(t.beta - ref[1]) <= tol * std::max(1.0, std::abs(ref[1])));
  CHECK(std::abs(t.gamma - ref[2]) <= tol * std::max(1.0, std::abs(ref[2])));
}

// Derivative of order d of a Legendre series in y.
double series(const std::array<double, 4>& c, int j, double y, int d) {
  double v = 0.0;
  for (int i = 0; i < 4; ++i) v += c[i] * legendre(j + i, y, d);
  return v;
}

}  // namespace

TEST_CASE("printed systems agree with generic endpoint-functional systems") {
  for (const auto& phys : {physical_data(6, 6, 1.0 / 4096), physical_data(1, 5, 1.0 / 4096),
                           physical_data(0.5, 0.5, 1.0 / 32)}) {
    const auto ref = to_reference(phys, kInterval);
    for (int j = 0; j <= 61; ++j) {
      check_triple(trial_coeffs(j, ref), generic_solve(j, ref, kTrial), 1e-9);
      check_triple(dual_coeffs(j, ref), generic_solve(j, ref, kDual), 1e-9);
      // The printed matrices themselves solve to the same triples.
      const auto ts = trial_system(j, ref);
      const auto ds = dual_system(j, ref);
      const auto tx = solve3(ts.a, ts.b);
      const auto dx = solve3(ds.a, ds.b);
      REQUIRE(tx.has_value());
      REQUIRE(dx.has_value());
      check_triple({(*tx)[0], (*tx)[1], (*tx)[2]}, generic_solve(j, ref, kTrial), 1e-9);
      check_triple({(*dx)[0], (*dx)[1], (*dx)[2]}, generic_solve(j, ref, kDual), 1e-9);
    }
  }
}

TEST_CASE("homogeneous data: trial triple for j = 0") {
  const BoundaryData zero{};
  check_triple(trial_coeffs(0, zero), generic_solve(0, zero, kTrial), 1e-12);
  check_triple(dual_coeffs(0, zero), generic_solve(0, zero, kDual), 1e-12);
}

TEST_CASE("produced basis functions satisfy their boundary relations") {
  const auto phys = physical_data(1, 5, 1.0 / 4096);
  const auto r = to_reference(phys, kInterval);
  const auto basis = make_basis(48, r);
  REQUIRE(basis.size() == 46);
  for (int j = 0; j < basis.size(); ++j) {
    const auto& t = basis.trial[j];
    const auto& d = basis.dual[j];
    for (double res : trial_residuals(j, t, r)) CHECK(std::abs(res) < 1e-8);
    for (double res : dual_residuals(j, d, r)) CHECK(std::abs(res) < 1e-8);
    const double v1 = eval_basis(j, t, 1.0, 1), v0 = eval_basis(j, t, 1.0, 0);
    CHECK(std::abs(v1 - r.y3 * v0) <= 1e-8 * (std::abs(v1) + std::abs(r.y3 * v0)));
    const double w1 = eval_basis(j, d, -1.0, 1), w0 = eval_basis(j, d, -1.0, 0);
    CHECK(std::abs(w1 + r.y1 * w0) <= 1e-8 * (std::abs(w1) + std::abs(r.y1 * w0)));
  }
}

TEST_CASE("duality identity and vanishing boundary terms") {
  // Example 2 exterior speeds; the identity is written in the reference
  // variable with the mapped endpoint line G(y).
  const auto phys = physical_data(1, 5, 1.0 / 4096);
  const auto r = to_reference(phys, kInterval);
  auto G = [&](double y) { return r.g_a + 0.5 * (r.g_b - r.g_a) * (y + 1.0); };
  const double Gy = 0.5 * (r.g_b - r.g_a);
  const auto rule = oracle::gauss_newton(80);

  std::mt19937 rng(17);
  std::uniform_int_distribution<int> pick(0, 40);
  std::vector<std::pair<int, int>> pairs{{2, 5}};
  for (int i = 0; i < 20; ++i) pairs.emplace_back(pick(rng), pick(rng));

  for (const auto& [k, j] : pairs) {
    const auto pk = basis_legendre(trial_coeffs(k, r));
    const auto qj = basis_legendre(dual_coeffs(j, r));
    auto phi = [&](double y, int d) { return series(pk, k, y, d); };
    auto psi = [&](double y, int d) { return series(qj, j, y, d); };
    const double lhs = oracle::integrate(
        rule, [&](double y) { return (G(y) * phi(y, 1) + phi(y, 3)) * psi(y, 0); });
    const double rhs = -oracle::integrate(rule, [&](double y) {
      return phi(y, 0) * (Gy * psi(y, 0) + G(y) * psi(y, 1) + psi(y, 3));
    });
    const double scale = oracle::integrate(rule, [&](double y) {
      return std::abs(G(y) * phi(y, 1) * psi(y, 0)) + std::abs(phi(y, 3) * psi(y, 0));
    });
    CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, scale));

    // [G phi psi + phi'' psi - phi' psi' + phi psi''] at each endpoint.
    for (double y : {-1.0, 1.0}) {
      const double terms[] = {G(y) * phi(y, 0) * psi(y, 0), phi(y, 2) * psi(y, 0),
                              -phi(y, 1) * psi(y, 1), phi(y, 0) * psi(y, 2)};
      double sum = 0.0, mag = 0.0;
      for (double t : terms) {
        sum += t;
        mag += std::abs(t);
      }
      CHECK(std::abs(sum) <= 1e-9 * std::max(1.0, mag));
    }
  }
}

TEST_CASE("basis triple depends smoothly on Y1") {
  const auto base = to_reference(physical_data(6, 6, 1.0 / 1024), kInterval);
  for (int j : {0, 5, 20}) {
    const auto x = trial_coeffs(j, base);
    // Analytic sensitivity: A dx/dY1 = d(b)/dY1 - d(A)/dY1 x, from the generic
    // system where only the first row depends on Y1.
    std::array<std::array<double, 3>, 3> a{};
    for (int i = 0; i < 3; ++i) {
      for (int c = 0; c < 3; ++c) a[i][c] = functional(kTrial[i], j + 1 + c, base);
    }
    const double xs[3] = {x.alpha, x.beta, x.gamma};
    double rhs0 = -legendre(j, -1.0, 1);
    for (int c = 0; c < 3; ++c) rhs0 -= legendre(j + 1 + c, -1.0, 1) * xs[c];
    const auto dx = oracle::cramer(a, {rhs0, 0.0, 0.0});

    const double h = 1e-6 * std::abs(base.y1);
    auto plus = base, minus = base;
    plus.y1 += h;
    minus.y1 -= h;
    const auto xp = trial_coeffs(j, plus), xm = trial_coeffs(j, minus);
    const double fd[3] = {(xp.alpha - xm.alpha) / (2 * h), (xp.beta - xm.beta) / (2 * h),
                          (xp.gamma - xm.gamma) / (2 * h)};
    for (int c = 0; c < 3; ++c) {
      CHECK(std::abs(fd[c] - dx[c]) <= 1e-6 * std::max(std::abs(dx[c]), 1e-12));
    }
  }
}

TEST_CASE("basis evaluation") {
  const BasisTriple zero{};
  for (int j : {0, 3, 9}) {
    for (double y : {-1.0, -0.3, 0.7}) {
      for (int d = 0; d <= 3; ++d) CHECK(eval_basis(j, zero, y, d) == doctest::Approx(legendre(j, y, d)));
    }
  }
  const auto r = to_reference(physical_data(6, 6, 1.0 / 4096), kInterval);
  const auto t = trial_coeffs(7, r);
  CHECK(t.gamma != 0.0);
  CHECK(basis_legendre(t)[3] == t.gamma);
  CHECK_THROWS_AS(eval_basis(7, t, 0.3, 5), std::invalid_argument);
  // Third derivative against a Richardson-extrapolated central difference.
  auto f = [&](double x) { return eval_basis(7, t, x, 0); };
  auto d3 = [&](double y, double h) {
    return (f(y + 2 * h) - 2 * f(y + h) + 2 * f(y - h) - f(y - 2 * h)) / (2 * h * h * h);
  };
  for (double y : {-0.5, 0.1, 0.6}) {
    const double h = 4e-3;
    const double fd3 = (4.0 * d3(y, h / 2) - d3(y, h)) / 3.0;
    const double exact = eval_basis(7, t, y, 3);
    CHECK(std::abs(fd3 - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("lift polynomial") {
  const auto phys = physical_data(6, 6, 1.0 / 4096);
  const auto zero = lift_polynomial(0, 0, 0, phys, kInterval);
  CHECK(zero.c0 == 0.0);
  CHECK(zero.c1 == 0.0);
  CHECK(zero.c2 == 0.0);

  std::mt19937 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = oracle::random_vector(rng, 3, -5.0, 5.0);
    const auto p = lift_polynomial(h[0], h[1], h[2], phys, kInterval);
    const auto rel = lift_relations(p, phys, kInterval);
    double hmax = 1.0;
    for (double v : h) hmax = std::max(hmax, std::abs(v));
    for (int i = 0; i < 3; ++i) CHECK(std::abs(rel[i] - h[i]) < 1e-10 * hmax);

    // Independent dense solve in physical monomials.
    const double a = kInterval.a, b = kInterval.b, G = phys.g_a + phys.y2;
    const std::array<std::array<double, 3>, 3> A{{
        {G, phys.y1 + G * a, 2.0 + 2.0 * phys.y1 * a + G * a * a},
        {-phys.y3, 1.0 - phys.y3 * b, 2.0 * b - phys.y3 * b * b},
        {-phys.y4, -phys.y4 * b, 2.0 - phys.y4 * b * b},
    }};
    const auto c = oracle::cramer(A, {h[0], h[1], h[2]});
    CHECK(std::abs(p.c0 - c[0]) <= 1e-9 * std::max(1.0, std::abs(c[0])));
    CHECK(std::abs(p.c1 - c[1]) <= 1e-9 * std::max(1.0, std::abs(c[1])));
    CHECK(std::abs(p.c2 - c[2]) <= 1e-9 * std::max(1.0, std::abs(c[2])));

    // Legendre form in the reference variable describes the same quadratic.
    for (double y : {-1.0, -0.2, 0.5, 1.0}) {
      const double x = kInterval.to_physical(y);
      const double leg = p.legendre[0] + p.legendre[1] * y + p.legendre[2] * legendre(2, y);
      CHECK(leg == doctest::Approx(p(x)).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("singular lift system surfaces") {
  CHECK_THROWS_AS(lift_polynomial(1, 2, 3, BoundaryData{}, kInterval), SingularLiftSystem);
}
