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


// Dual Petrov-Galerkin basis for the dispersive space and the quadratic
// boundary lift. Everything here lives on the reference interval [-1, 1];
// boundary data arrive in physical units and are rescaled once.

#pragma once

#include <array>
#include <vector>

#include "kdvsplit/interval.hpp"
#include "kdvsplit/small_solve.hpp"

namespace kdvsplit::pg {

/// Leading kernel entries Y^0 and the exterior advection constants, in
/// physical units.
struct BoundaryData {
  double y1 = 0.0;
  double y2 = 0.0;
  double y3 = 0.0;
  double y4 = 0.0;
  double g_a = 0.0;
  double g_b = 0.0;
};

/// The same data after the map to [-1, 1]: first-derivative coefficients
/// divided by s, zeroth-order ones by s^2, with s = 2 / (b - a).
BoundaryData to_reference(const BoundaryData& physical, const Interval& interval);

/// phi_j = L_j + alpha L_{j+1} + beta L_{j+2} + gamma L_{j+3}.
struct BasisTriple {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// Linear system for the trial triple of index j (rows: left condition,
/// right second-derivative condition, right first-derivative condition).
struct TripleSystem {
  Mat3 a{};
  Vec3 b{};
};
TripleSystem trial_system(int j, const BoundaryData& ref);
TripleSystem dual_system(int j, const BoundaryData& ref);

/// Throw SingularBasisSystem when |det A| < 1e-12 ||A||^3 or when the solved
/// function misses a boundary relation by more than 1e-9 of its scale.
BasisTriple trial_coeffs(int j, const BoundaryData& ref);
BasisTriple dual_coeffs(int j, const BoundaryData& ref);

/// Residuals of the three trial (resp. dual) boundary relations, each divided
/// by the sum of the magnitudes of its terms.
Vec3 trial_residuals(int j, const BasisTriple& t, const BoundaryData& ref);
Vec3 dual_residuals(int j, const BasisTriple& t, const BoundaryData& ref);

/// Value of the basis function or one of its y-derivatives (order 0..4).
double eval_basis(int j, const BasisTriple& t, double y, int derivative = 0);

/// Legendre coefficients of basis function j, length j + 4.
std::array<double, 4> basis_legendre(const BasisTriple& t);

struct BasisCoeffs {
  int N = 0;
  BoundaryData boundary;  // reference units
  std::vector<BasisTriple> trial;
  std::vector<BasisTriple> dual;

  int size() const { return N - 2; }
};

BasisCoeffs make_basis(int N, const BoundaryData& ref);

/// Quadratic p(x) = c0 + c1 x + c2 x^2 in physical x, together with its
/// Legendre coefficients in the reference variable.
struct LiftPolynomial {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::array<double, 3> legendre{};

  /// Physical-space value or x-derivative (order 0..2).
  double operator()(double x, int derivative = 0) const;
};

/// Solves the three inhomogeneous boundary relations for the quadratic.
/// Throws SingularLiftSystem under the same determinant guard.
LiftPolynomial lift_polynomial(double h1, double h2, double h3,
                               const BoundaryData& physical, const Interval& interval);

/// Left-hand sides of the three relations evaluated for p.
Vec3 lift_relations(const LiftPolynomial& p, const BoundaryData& physical,
                    const Interval& interval);

}  // namespace kdvsplit::pg
