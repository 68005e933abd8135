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


// Galerkin matrices for the dispersive and advection stages, the transition
// matrices between the two coefficient spaces, and the spectral
// differentiation pair. All inner products are taken on [-1, 1].

#pragma once

#include <Eigen/Dense>
#include <memory>
#include <span>
#include <vector>

#include "kdvsplit/banded.hpp"
#include "kdvsplit/orthopoly.hpp"
#include "kdvsplit/petrov_galerkin.hpp"

namespace kdvsplit::assembly {

/// Relative size below which an entry outside a declared band counts as 0.
inline constexpr double kBandTolerance = 1e-10;

/// p_g(y) = g_a + (g_b - g_a)(y + 1)/2, the endpoint line of the advection
/// coefficient written in the reference variable.
struct EndpointLine {
  double g_a = 0.0;
  double g_b = 0.0;

  double operator()(double y) const { return g_a + 0.5 * (g_b - g_a) * (y + 1.0); }
  double slope() const { return 0.5 * (g_b - g_a); }
};

/// Values of each basis function at the rule's nodes plus its y-derivative at
/// y = +1, one entry per basis index.
struct NodalBasis {
  std::vector<std::vector<double>> values;
  std::vector<double> right_derivative;
};

NodalBasis trial_on_rule(const pg::BasisCoeffs& basis, const orthopoly::QuadratureRule& rule);
NodalBasis dual_on_rule(const pg::BasisCoeffs& basis, const orthopoly::QuadratureRule& rule);

/// M^d_{kj} = <phi_k, psi_j>^d, 7-diagonal.
BandedMatrix mass_dispersive(const pg::BasisCoeffs& basis,
                             const orthopoly::QuadratureRule& rule);

/// S^d_{kj} = <p_g d_x phi_k + d_x^3 phi_k, psi_j>^d with d_x = s d_y,
/// 7-diagonal.
BandedMatrix stiffness_dispersive(const pg::BasisCoeffs& basis,
                                  const orthopoly::QuadratureRule& rule,
                                  const EndpointLine& p_g, double s);

/// M^a_{kk} = <L_k, L_k>^a, diagonal.
BandedMatrix mass_advection(const orthopoly::QuadratureRule& gauss);

/// How the caller describes g*: a polynomial of known degree or a general
/// smooth function.
struct DeclaredForm {
  enum class Kind { kPolynomial, kGeneral };
  Kind kind = Kind::kGeneral;
  int degree = 0;

  static DeclaredForm polynomial(int n) { return {Kind::kPolynomial, n}; }
  static DeclaredForm general() { return {Kind::kGeneral, 0}; }
};

/// S^a_{kj} = <g* d_x L_k, L_j>^a. Zero for a polynomial g* of degree <= 1
/// (it vanishes at both ends), banded with half-width n for degree n, dense
/// otherwise.
struct AdvectionStiffness {
  enum class Kind { kZero, kBanded, kDense };
  Kind kind = Kind::kZero;
  BandedMatrix banded;
  Eigen::MatrixXd dense;

  Eigen::MatrixXd to_dense(int n) const;
};

AdvectionStiffness stiffness_advection(const orthopoly::QuadratureRule& gauss,
                                       std::span<const double> g_star_at_nodes,
                                       double s, DeclaredForm form);

/// M^da_{kj} = <phi_k, L_j>^a (j - k in 0..3) and M^ad_{kj} = <L_k, psi_j>^d
/// (k - j in 0..3, plus the single entry (N, N-4) that the dispersive rule
/// cannot resolve exactly).
struct TransitionMatrices {
  BandedMatrix da;
  BandedMatrix ad;
};

TransitionMatrices transition_matrices(const pg::BasisCoeffs& basis,
                                       const orthopoly::QuadratureRule& dispersive,
                                       const orthopoly::QuadratureRule& gauss);

/// F_{kj} = <L_k', L_j - L_{j+2}>^a and G_{kj} = <L_k, L_j - L_{j+2}>^a.
/// derivative() returns the Legendre coefficients of d_y u from those of u
/// by solving G^T d = F^T u.
struct DifferentiationPair {
  BandedMatrix F;
  BandedMatrix G;
  std::shared_ptr<const BandedLU> gt;

  std::vector<double> derivative(std::span<const double> coeffs) const;
};

DifferentiationPair differentiation_pair(const orthopoly::QuadratureRule& gauss);

}  // namespace kdvsplit::assembly
