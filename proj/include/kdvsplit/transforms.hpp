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


// Direct discrete Legendre transform pair on the Gauss-Legendre nodes and the
// collocation evaluation of g* d_x u.

#pragma once

#include <span>
#include <vector>

#include "kdvsplit/assembly.hpp"
#include "kdvsplit/orthopoly.hpp"

namespace kdvsplit::transforms {

struct TransformPlan {
  int N = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  /// forward[k * (N + 1) + n] = L_n(y_k)
  std::vector<double> forward;
  /// inverse[n * (N + 1) + k] = (n + 1/2) w_k L_n(y_k)
  std::vector<double> inverse;
};

TransformPlan make_plan(const orthopoly::QuadratureRule& gauss);

/// Coefficients to nodal values.
std::vector<double> dlt(const TransformPlan& plan, std::span<const double> coeffs);

/// Nodal values to coefficients.
std::vector<double> idlt(const TransformPlan& plan, std::span<const double> values);

/// Legendre coefficients of the degree-N projection of g* d_x u, where u has
/// Legendre coefficients `coeffs` and d_x = s d_y.
std::vector<double> apply_gstar_dx(const TransformPlan& plan,
                                   const assembly::DifferentiationPair& diff,
                                   std::span<const double> g_star_at_nodes,
                                   std::span<const double> coeffs, double s);

}  // namespace kdvsplit::transforms
