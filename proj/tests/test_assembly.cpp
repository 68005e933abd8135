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

#include "kdvsplit/assembly.hpp"
#include "kdvsplit/errors.hpp"
#include "kdvsplit/orthopoly.hpp"
#include "kdvsplit/petrov_galerkin.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace kdvsplit;
using namespace kdvsplit::assembly;
using orthopoly::legendre;

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

// Dense L2 products on an oversized Gauss rule.
struct DenseOracle {
  const pg::BasisCoeffs& basis;
  oracle::Rule rule = oracle::gauss_newton(160);

  double phi(int k, double y, int d) const { return pg::eval_basis(k, basis.trial[k], y, d); }
  double psi(int j, double y, int d) const { return pg::eval_basis(j, basis.dual[j], y, d); }

  Eigen::MatrixXd mass() const {
    const int n = basis.size();
    Eigen::MatrixXd m(n, n);
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        m(k, j) = oracle::integrate(rule, [&](double y) { return phi(k, y, 0) * psi(j, y, 0); });
      }
    }
    return m;
  }

  Eigen::MatrixXd stiffness(const EndpointLine& p, double s) const {
    const int n = basis.size();
    Eigen::MatrixXd m(n, n);
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        m(k, j) = oracle::integrate(rule, [&](double y) {
          return (p(y) * s * phi(k, y, 1) + s * s * s * phi(k, y, 3)) * psi(j, y, 0);
        });
      }
    }
    return m;
  }
};

}  // namespace

TEST_CASE("dispersive mass matrix") {
  const auto ops = fixture::operators(fixture::example1(), 32, 4096);
  const int n = ops.basis.size();
  CHECK(ops.Md.rows() == n);
  CHECK(ops.Md.cols() == n);
  CHECK(ops.Md.lower() == 3);
  CHECK(ops.Md.upper() == 3);
  for (int k = 0; k < n; ++k) CHECK(ops.Md(k, k) > 0.0);
  CHECK(ops.Md(0, 4) == 0.0);

  const Eigen::MatrixXd exact = DenseOracle{ops.basis}.mass();
  const double scale = max_abs(exact);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      if (k + j <= 2 * ops.basis.N - 8) CHECK(std::abs(ops.Md(k, j) - exact(k, j)) <= 1e-12 * scale);
      if (std::abs(k - j) > 3) CHECK(std::abs(exact(k, j)) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("dispersive stiffness matrix") {
  const double s = fixture::kInterval.scale();
  for (const auto& field : {fixture::example1(), fixture::example2()}) {
    const auto ops = fixture::operators(field, 32, 4096);
    const int n = ops.basis.size();
    CHECK(ops.Sd.lower() == 3);
    CHECK(ops.Sd.upper() == 3);
    const Eigen::MatrixXd exact = DenseOracle{ops.basis}.stiffness(field.line(), s);
    const double scale = max_abs(exact);
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        if (k + j <= 2 * ops.basis.N - 8) {
          CHECK(std::abs(ops.Sd(k, j) - exact(k, j)) <= 1e-11 * scale);
        }
        // Orthogonality above the band, duality identity below it.
        if (k + 3 < j) CHECK(std::abs(exact(k, j)) <= 1e-11 * scale);
        if (j + 3 < k && k + j <= 2 * ops.basis.N - 8) {
          CHECK(std::abs(exact(k, j)) <= 1e-11 * scale);
        }
      }
    }
  }
}

TEST_CASE("advection mass matrix") {
  for (int N : {8, 32, 64}) {
    const auto m = mass_advection(orthopoly::gauss_legendre_rule(N));
    CHECK(m.rows() == N + 1);
    CHECK(m.lower() == 0);
    CHECK(m.upper() == 0);
    for (int k = 0; k <= N; ++k) CHECK(std::abs(m(k, k) - 2.0 / (2 * k + 1)) <= 1e-13);
    CHECK(std::abs(m(0, 0) - 2.0) <= 1e-14);
    CHECK(std::abs(m(3, 3) - 2.0 / 7.0) <= 1e-14);
  }
}

TEST_CASE("advection stiffness matrix") {
  const double s = fixture::kInterval.scale();
  SUBCASE("example 1: zero") {
    const auto ops = fixture::operators(fixture::example1(), 32, 64);
    CHECK(ops.Sa.kind == AdvectionStiffness::Kind::kZero);
    CHECK(ops.Sa.to_dense(33).isZero(0.0));
  }
  SUBCASE("example 2: banded, matches dense quadrature") {
    const auto field = fixture::example2();
    const auto ops = fixture::operators(field, 32, 64);
    REQUIRE(ops.Sa.kind == AdvectionStiffness::Kind::kBanded);
    CHECK(ops.Sa.banded.lower() <= 6);
    CHECK(ops.Sa.banded.upper() <= 6);
    const auto rule = oracle::gauss_newton(80);
    const int N = 32;
    Eigen::MatrixXd exact(N + 1, N + 1);
    for (int k = 0; k <= N; ++k) {
      for (int j = 0; j <= N; ++j) {
        exact(k, j) = s * oracle::integrate(rule, [&](double y) {
          return field.g_star(fixture::kInterval.to_physical(y)) * legendre(k, y, 1) *
                 legendre(j, y, 0);
        });
      }
    }
    const double scale = max_abs(exact);
    const Eigen::MatrixXd got = ops.Sa.to_dense(N + 1);
    // Gauss quadrature is exact while deg g* + (k - 1) + j <= 2N + 1.
    for (int k = 0; k <= N; ++k) {
      for (int j = 0; j <= N; ++j) {
        if (k + j + 2 <= 2 * N + 1) CHECK(std::abs(got(k, j) - exact(k, j)) <= 1e-12 * scale);
      }
    }
    // Bandwidth scan of the exact matrix.
    for (int k = 0; k <= N; ++k) {
      for (int j = 0; j <= N; ++j) {
        if (std::abs(k - j) > 6) CHECK(std::abs(exact(k, j)) <= 1e-12 * scale);
      }
    }
  }
  SUBCASE("example 3: dense with finite row sums") {
    const auto ops = fixture::operators(fixture::example3(), 32, 64);
    REQUIRE(ops.Sa.kind == AdvectionStiffness::Kind::kDense);
    CHECK(ops.Sa.dense.rows() == 33);
    for (int k = 0; k <= 32; ++k) CHECK(std::isfinite(ops.Sa.dense.row(k).sum()));
  }
  SUBCASE("false polynomial declarations are rejected") {
    const auto ops = fixture::operators(fixture::example3(), 32, 64);
    CHECK_THROWS_AS(stiffness_advection(ops.gauss, ops.g_star_nodes, s, DeclaredForm::polynomial(3)),
                    BandwidthViolation);
    CHECK_THROWS_AS(stiffness_advection(ops.gauss, ops.g_star_nodes, s, DeclaredForm::polynomial(1)),
                    BandwidthViolation);
  }
}

TEST_CASE("transition matrices") {
  const int N = 32;
  const auto ops = fixture::operators(fixture::example2(), N, 4096);
  const auto& da = ops.transition.da;
  const auto& ad = ops.transition.ad;
  const int n = ops.basis.size();
  CHECK(da.rows() == n);
  CHECK(da.cols() == N + 1);
  CHECK(ad.rows() == N + 1);
  CHECK(ad.cols() == n);
  for (int k = 0; k < n; ++k) CHECK(std::abs(da(k, k) - 2.0 / (2 * k + 1)) <= 1e-13);
  CHECK(da(0, 5) == 0.0);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j <= N; ++j) {
      if (j - k < 0 || j - k > 3) CHECK(da(k, j) == 0.0);
    }
  }
  for (int k = 0; k <= N; ++k) {
    for (int j = 0; j < n; ++j) {
      const bool band = k - j >= 0 && k - j <= 3;
      if (!band && !(k == N && j == N - 4)) CHECK(ad(k, j) == 0.0);
    }
  }

  // M^ad against exact integrals inside the dispersive rule's exactness window.
  const auto rule = oracle::gauss_newton(80);
  for (int k = 0; k <= N; ++k) {
    for (int j = std::max(0, k - 4); j <= std::min(n - 1, k); ++j) {
      if (k + j + 3 > 2 * N - 2) continue;
      const double exact = oracle::integrate(rule, [&](double y) {
        return legendre(k, y) * pg::eval_basis(j, ops.basis.dual[j], y, 0);
      });
      CHECK(std::abs(ad(k, j) - exact) <= 1e-12);
    }
  }

  // Round trip: dispersive coefficients -> Legendre coefficients via
  // (M^a)^{-1} (M^da)^T, then pointwise evaluation at the Gauss nodes.
  std::mt19937 rng(5);
  const auto c = oracle::random_vector(rng, n, -1.0, 1.0);
  const auto projected = da.multiply_transpose(c);
  for (const double y : ops.gauss.nodes) {
    double direct = 0.0, series = 0.0;
    for (int k = 0; k < n; ++k) direct += c[k] * pg::eval_basis(k, ops.basis.trial[k], y, 0);
    for (int j = 0; j <= N; ++j) series += projected[j] / ops.Ma(j, j) * legendre(j, y);
    CHECK(std::abs(direct - series) <= 1e-10);
  }
}

TEST_CASE("spectral differentiation pair") {
  const double s = fixture::kInterval.scale();
  for (int N : {8, 16, 32, 64}) {
    const auto pair = differentiation_pair(orthopoly::gauss_legendre_rule(N));
    CHECK(pair.F.lower() == 1);
    CHECK(pair.F.upper() == 0);
    CHECK(pair.G.lower() == 2);
    CHECK(pair.G.upper() == 0);

    std::vector<double> e0(N + 1, 0.0);
    e0[0] = 1.0;
    for (double d : pair.derivative(e0)) CHECK(std::abs(d) <= 1e-14);

    // u(x) = x^3 on [-6, 6]: x = 6y, so u = 216 y^3 = 216 (2/5 L3 + 3/5 L1).
    std::vector<double> cube(N + 1, 0.0);
    cube[1] = 216.0 * 0.6;
    cube[3] = 216.0 * 0.4;
    auto d = pair.derivative(cube);
    for (double& v : d) v *= s;
    // 3x^2 = 108 y^2 = 108 (2/3 L2 + 1/3 L0).
    std::vector<double> want(N + 1, 0.0);
    want[0] = 36.0;
    want[2] = 72.0;
    for (int k = 0; k <= N; ++k) CHECK(std::abs(d[k] - want[k]) <= 1e-11 * 72.0);

    // Random series against the derivative recurrence.
    std::mt19937 rng(N);
    const auto a = oracle::random_vector(rng, N + 1, -1.0, 1.0);
    const auto got = pair.derivative(a);
    for (int k = 0; k <= N; ++k) {
      double ref = 0.0;
      for (int m = k + 1; m <= N; m += 2) ref += a[m];
      ref *= 2 * k + 1;
      CHECK(std::abs(got[k] - ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("advection Crank-Nicolson matrix is nonsingular for every experiment") {
  for (const auto& field : {fixture::example1(), fixture::example2(), fixture::example3()}) {
    for (int N : {16, 32, 64}) {
      const auto ops = fixture::operators(field, N, 4096);
      if (ops.Sa.kind == AdvectionStiffness::Kind::kDense) {
        REQUIRE(ops.adv_lhs_dense);
        CHECK(std::abs(ops.adv_lhs_dense->determinant()) > 0.0);
      } else if (ops.Sa.kind == AdvectionStiffness::Kind::kZero) {
        // The stage reduces to M^a, which is diagonal and positive.
        for (int k = 0; k <= N; ++k) CHECK(ops.Ma(k, k) > 0.0);
      } else {
        REQUIRE(ops.adv_lhs_banded);
        std::vector<double> b(N + 1, 1.0);
        for (double v : ops.adv_lhs_banded->solve(b)) CHECK(std::isfinite(v));
      }
    }
  }
}

TEST_CASE("assembly is bit-stable across repetitions") {
  const auto field = fixture::example3();
  const auto a = fixture::operators(field, 24, 256);
  const auto b = fixture::operators(field, 24, 256);
  CHECK(a.Md.to_dense() == b.Md.to_dense());
  CHECK(a.Sd.to_dense() == b.Sd.to_dense());
  CHECK(a.Sa.dense == b.Sa.dense);
  CHECK(a.transition.da.to_dense() == b.transition.da.to_dense());
  CHECK(a.transition.ad.to_dense() == b.transition.ad.to_dense());
}

TEST_CASE("banded assertions reject a mismatched rule") {
  const auto ops = fixture::operators(fixture::example1(), 16, 64);
  CHECK_THROWS_AS(mass_dispersive(ops.basis, orthopoly::dispersive_rule(20)), std::invalid_argument);
}
