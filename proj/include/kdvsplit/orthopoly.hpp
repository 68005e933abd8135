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

// Legendre and Jacobi polynomials on [-1, 1] and the two quadrature rules the
// Galerkin inner products are built from.

#pragma once

#include <optional>
#include <span>
#include <vector>

namespace kdvsplit::orthopoly {

/// L_n^{(derivative)}(x) by the three-term recurrence, derivative in 0..n.
double legendre(int n, double x, int derivative = 0);

/// Rows d = 0..max_order, columns n = 0..n_max: the d-th derivative of L_n
/// at x. Row-major, (max_order + 1) x (n_max + 1).
struct LegendreTable {
  int n_max = 0;
  int max_order = 0;
  std::vector<double> data;

  double operator()(int order, int n) const {
    return data[static_cast<std::size_t>(order) * (n_max + 1) + n];
  }
};

LegendreTable legendre_table(int n_max, double x, int max_order);

/// Closed form for the derivatives at x = +1 (side > 0) or x = -1
/// (side < 0): L_n^{(k)}(+-1) = (+-1)^{n-k} (n-k+1)_{2k} / (2^k k!).
double legendre_endpoint(int n, int derivative, int side);

/// Jacobi polynomial P_n^{(alpha, beta)}(x) and its first derivative.
double jacobi(int n, double alpha, double beta, double x);
double jacobi_derivative(int n, double alpha, double beta, double x);

/// Roots of P_n^{(alpha, beta)}, strictly increasing. Eigenvalues of the
/// symmetric tridiagonal Jacobi matrix (implicit QL), `max_sweeps` bounding
/// the QL iterations per eigenvalue. Throws EigenSolveError on
/// non-convergence or when a root fails the residual check.
std::vector<double> jacobi_roots(double alpha, double beta, int n,
                                 int max_sweeps = 60);

/// Gauss-Jacobi nodes together with the Golub-Welsch weights for the weight
/// (1-x)^alpha (1+x)^beta.
struct GaussJacobi {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussJacobi gauss_jacobi(double alpha, double beta, int n, int max_sweeps = 60);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  /// Weight on d/dy(u v) at y = +1. Present only for the dispersive rule.
  std::optional<double> endpoint_derivative_weight;
  int exactness_degree = 0;
};

/// N + 1 Gauss-Legendre points (roots of L_{N+1}); exact through 2N + 1.
QuadratureRule gauss_legendre_rule(int N);

/// Nodes -1, the N - 2 roots of P^{(2,1)}_{N-2}, +1, plus a derivative weight
/// at +1. Weights solve the moment system for L_0..L_N and are then checked
/// exact through degree 2N - 2. Requires N >= 4.
QuadratureRule dispersive_rule(int N);

/// A function given by its values at the rule's nodes and, for rules with an
/// endpoint derivative weight, its derivative at y = +1.
struct NodalValues {
  std::span<const double> values;
  double right_derivative = 0.0;
};

double inner_product(const QuadratureRule& rule, const NodalValues& u,
                     const NodalValues& v);

/// Quadrature of a single function.
double integrate(const QuadratureRule& rule, const NodalValues& f);

}  // namespace kdvsplit::orthopoly
