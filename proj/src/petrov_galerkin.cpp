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


#include "kdvsplit/petrov_galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "kdvsplit/errors.hpp"
#include "kdvsplit/orthopoly.hpp"

namespace kdvsplit::pg {

namespace {

// (j)_k = j (j+1) ... (j+k-1)
double poch(int j, int k) {
  double p = 1.0;
  for (int i = 0; i < k; ++i) p *= j + i;
  return p;
}

// d-th derivative of L_j + t.alpha L_{j+1} + ... at y = side.
double endpoint(int j, const BasisTriple& t, int d, int side) {
  using orthopoly::legendre_endpoint;
  return legendre_endpoint(j, d, side) + t.alpha * legendre_endpoint(j + 1, d, side) +
         t.beta * legendre_endpoint(j + 2, d, side) +
         t.gamma * legendre_endpoint(j + 3, d, side);
}

// Same with all coefficients in absolute value, for residual scaling.
double endpoint_abs(int j, const BasisTriple& t, int d) {
  using orthopoly::legendre_endpoint;
  return std::abs(legendre_endpoint(j, d, 1)) +
         std::abs(t.alpha * legendre_endpoint(j + 1, d, 1)) +
         std::abs(t.beta * legendre_endpoint(j + 2, d, 1)) +
         std::abs(t.gamma * legendre_endpoint(j + 3, d, 1));
}

double scaled(double value, double scale) { return scale > 0.0 ? value / scale : value; }

BasisTriple solve_triple(int j, const TripleSystem& sys, const char* which) {
  const auto x = solve3(sys.a, sys.b);
  if (!x) {
    std::ostringstream os;
    os << which << " system for j = " << j << " is singular (det "
       << determinant(sys.a) << ", norm " << norm_inf(sys.a) << ")";
    throw SingularBasisSystem(os.str());
  }
  return {(*x)[0], (*x)[1], (*x)[2]};
}

void check_residuals(int j, const Vec3& r, const char* which) {
  constexpr double tol = 1e-9;
  for (int i = 0; i < 3; ++i) {
    if (!(std::abs(r[i]) <= tol)) {
      std::ostringstream os;
      os << which << " basis function " << j << " misses boundary relation " << i + 1
         << " (scaled residual " << r[i] << ")";
      throw SingularBasisSystem(os.str());
    }
  }
}

}  // namespace

BoundaryData to_reference(const BoundaryData& p, const Interval& interval) {
  const double s = interval.scale();
  return {p.y1 / s, p.y2 / (s * s), p.y3 / s, p.y4 / (s * s), p.g_a / (s * s),
          p.g_b / (s * s)};
}

TripleSystem trial_system(int j, const BoundaryData& r) {
  const double ga = r.g_a + r.y2;
  TripleSystem s;
  s.a[0] = {-ga + r.y1 * poch(j + 1, 2) / 2 - poch(j, 4) / 8,
            ga - r.y1 * poch(j + 2, 2) / 2 + poch(j + 1, 4) / 8,
            -ga + r.y1 * poch(j + 3, 2) / 2 - poch(j + 2, 4) / 8};
  s.a[1] = {-r.y4 + poch(j, 4) / 8, -r.y4 + poch(j + 1, 4) / 8,
            -r.y4 + poch(j + 2, 4) / 8};
  s.a[2] = {-r.y3 + poch(j + 1, 2) / 2, -r.y3 + poch(j + 2, 2) / 2,
            -r.y3 + poch(j + 3, 2) / 2};
  s.b = {-ga + r.y1 * poch(j, 2) / 2 - poch(j - 1, 4) / 8, r.y4 - poch(j - 1, 4) / 8,
         r.y3 - poch(j, 2) / 2};
  return s;
}

TripleSystem dual_system(int j, const BoundaryData& r) {
  const double gb = r.g_b + r.y4;
  TripleSystem s;
  s.a[0] = {gb - r.y3 * poch(j + 1, 2) / 2 + poch(j, 4) / 8,
            gb - r.y3 * poch(j + 2, 2) / 2 + poch(j + 1, 4) / 8,
            gb - r.y3 * poch(j + 3, 2) / 2 + poch(j + 2, 4) / 8};
  s.a[1] = {r.y2 - poch(j, 4) / 8, -r.y2 + poch(j + 1, 4) / 8, r.y2 - poch(j + 2, 4) / 8};
  s.a[2] = {-r.y1 + poch(j + 1, 2) / 2, r.y1 - poch(j + 2, 2) / 2,
            -r.y1 + poch(j + 3, 2) / 2};
  s.b = {-gb + r.y3 * poch(j, 2) / 2 - poch(j - 1, 4) / 8, r.y2 - poch(j - 1, 4) / 8,
         -r.y1 + poch(j, 2) / 2};
  return s;
}

Vec3 trial_residuals(int j, const BasisTriple& t, const BoundaryData& r) {
  const double ga = r.g_a + r.y2;
  const double u0 = endpoint(j, t, 0, -1), u1 = endpoint(j, t, 1, -1),
               u2 = endpoint(j, t, 2, -1);
  const double v0 = endpoint(j, t, 0, 1), v1 = endpoint(j, t, 1, 1),
               v2 = endpoint(j, t, 2, 1);
  const double a0 = endpoint_abs(j, t, 0), a1 = endpoint_abs(j, t, 1),
               a2 = endpoint_abs(j, t, 2);
  return {scaled(u2 + r.y1 * u1 + ga * u0, a2 + std::abs(r.y1) * a1 + std::abs(ga) * a0),
          scaled(v1 - r.y3 * v0, a1 + std::abs(r.y3) * a0),
          scaled(v2 - r.y4 * v0, a2 + std::abs(r.y4) * a0)};
}

Vec3 dual_residuals(int j, const BasisTriple& t, const BoundaryData& r) {
  const double gb = r.g_b + r.y4;
  const double u0 = endpoint(j, t, 0, -1), u1 = endpoint(j, t, 1, -1),
               u2 = endpoint(j, t, 2, -1);
  const double v0 = endpoint(j, t, 0, 1), v1 = endpoint(j, t, 1, 1),
               v2 = endpoint(j, t, 2, 1);
  const double a0 = endpoint_abs(j, t, 0), a1 = endpoint_abs(j, t, 1),
               a2 = endpoint_abs(j, t, 2);
  return {scaled(v2 - r.y3 * v1 + gb * v0, a2 + std::abs(r.y3) * a1 + std::abs(gb) * a0),
          scaled(u1 + r.y1 * u0, a1 + std::abs(r.y1) * a0),
          scaled(u2 - r.y2 * u0, a2 + std::abs(r.y2) * a0)};
}

BasisTriple trial_coeffs(int j, const BoundaryData& ref) {
  if (j < 0) throw std::invalid_argument("trial_coeffs: negative index");
  const BasisTriple t = solve_triple(j, trial_system(j, ref), "trial");
  check_residuals(j, trial_residuals(j, t, ref), "trial");
  return t;
}

BasisTriple dual_coeffs(int j, const BoundaryData& ref) {
  if (j < 0) throw std::invalid_argument("dual_coeffs: negative index");
  const BasisTriple t = solve_triple(j, dual_system(j, ref), "dual");
  check_residuals(j, dual_residuals(j, t, ref), "dual");
  return t;
}

std::array<double, 4> basis_legendre(const BasisTriple& t) {
  return {1.0, t.alpha, t.beta, t.gamma};
}

double eval_basis(int j, const BasisTriple& t, double y, int derivative) {
  if (derivative < 0 || derivative > 4) {
    throw std::invalid_argument("eval_basis: derivative order must be 0..4");
  }
  const auto tab = orthopoly::legendre_table(j + 3, y, derivative);
  return tab(derivative, j) + t.alpha * tab(derivative, j + 1) +
         t.beta * tab(derivative, j + 2) + t.gamma * tab(derivative, j + 3);
}

BasisCoeffs make_basis(int N, const BoundaryData& ref) {
  if (N < 4) throw std::invalid_argument("make_basis: N must be >= 4");
  BasisCoeffs basis;
  basis.N = N;
  basis.boundary = ref;
  basis.trial.reserve(N - 2);
  basis.dual.reserve(N - 2);
  for (int j = 0; j <= N - 3; ++j) {
    basis.trial.push_back(trial_coeffs(j, ref));
    basis.dual.push_back(dual_coeffs(j, ref));
  }
  return basis;
}

double LiftPolynomial::operator()(double x, int derivative) const {
  switch (derivative) {
    case 0: return c0 + x * (c1 + x * c2);
    case 1: return c1 + 2.0 * c2 * x;
    case 2: return 2.0 * c2;
    default: return 0.0;
  }
}

LiftPolynomial lift_polynomial(double h1, double h2, double h3, const BoundaryData& phys,
                               const Interval& interval) {
  // Solve for p(y) = A + B y + C y^2 on the reference interval, where the
  // three rows are much better balanced than in physical monomials.
  const BoundaryData r = to_reference(phys, interval);
  const double s = interval.scale();
  const double ga = r.g_a + r.y2;
  Mat3 a;
  a[0] = {ga, r.y1 - ga, 2.0 - 2.0 * r.y1 + ga};
  a[1] = {-r.y3, 1.0 - r.y3, 2.0 - r.y3};
  a[2] = {-r.y4, -r.y4, 2.0 - r.y4};
  const Vec3 rhs = {h1 / (s * s), h2 / s, h3 / (s * s)};
  const auto x = solve3(a, rhs);
  if (!x) {
    std::ostringstream os;
    os << "boundary-lift system is singular (det " << determinant(a) << ", norm "
       << norm_inf(a) << ")";
    throw SingularLiftSystem(os.str());
  }
  const double A = (*x)[0], B = (*x)[1], C = (*x)[2];

  // y = (x - m) / h
  const double m = 0.5 * (interval.a + interval.b);
  const double h = 0.5 * (interval.b - interval.a);
  LiftPolynomial p;
  p.c2 = C / (h * h);
  p.c1 = B / h - 2.0 * p.c2 * m;
  p.c0 = A - p.c1 * m - p.c2 * m * m;
  p.legendre = {A + C / 3.0, B, 2.0 * C / 3.0};
  return p;
}

Vec3 lift_relations(const LiftPolynomial& p, const BoundaryData& r, const Interval& iv) {
  const double a = iv.a, b = iv.b;
  return {p(a, 2) + r.y1 * p(a, 1) + (r.g_a + r.y2) * p(a, 0), p(b, 1) - r.y3 * p(b, 0),
          p(b, 2) - r.y4 * p(b, 0)};
}

}  // namespace kdvsplit::pg
