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


#include "kdvsplit/transforms.hpp"

#include "kdvsplit/errors.hpp"
#include "kdvsplit/simd/kernels.hpp"

namespace kdvsplit::transforms {

TransformPlan make_plan(const orthopoly::QuadratureRule& gauss) {
  TransformPlan p;
  p.N = static_cast<int>(gauss.nodes.size()) - 1;
  p.nodes = gauss.nodes;
  p.weights = gauss.weights;
  const int n1 = p.N + 1;
  p.forward.resize(static_cast<std::size_t>(n1) * n1);
  p.inverse.resize(static_cast<std::size_t>(n1) * n1);
  for (int k = 0; k < n1; ++k) {
    const auto tab = orthopoly::legendre_table(p.N, p.nodes[k], 0);
    for (int n = 0; n < n1; ++n) {
      p.forward[static_cast<std::size_t>(k) * n1 + n] = tab(0, n);
      p.inverse[static_cast<std::size_t>(n) * n1 + k] = (n + 0.5) * p.weights[k] * tab(0, n);
    }
  }
  return p;
}

std::vector<double> dlt(const TransformPlan& plan, std::span<const double> coeffs) {
  const auto n1 = static_cast<std::size_t>(plan.N) + 1;
  if (coeffs.size() != n1) throw LengthMismatch("dlt: expected N + 1 coefficients");
  std::vector<double> out(n1);
  simd::gemv(plan.forward, n1, n1, coeffs, out);
  return out;
}

std::vector<double> idlt(const TransformPlan& plan, std::span<const double> values) {
  const auto n1 = static_cast<std::size_t>(plan.N) + 1;
  if (values.size() != n1) throw LengthMismatch("idlt: expected N + 1 values");
  std::vector<double> out(n1);
  simd::gemv(plan.inverse, n1, n1, values, out);
  return out;
}

std::vector<double> apply_gstar_dx(const TransformPlan& plan,
                                   const assembly::DifferentiationPair& diff,
                                   std::span<const double> g_star,
                                   std::span<const double> coeffs, double s) {
  const auto n1 = static_cast<std::size_t>(plan.N) + 1;
  if (g_star.size() != n1) throw LengthMismatch("apply_gstar_dx: g* sample count");
  std::vector<double> values = dlt(plan, diff.derivative(coeffs));
  for (std::size_t k = 0; k < n1; ++k) values[k] *= s * g_star[k];
  return idlt(plan, values);
}

}  // namespace kdvsplit::transforms
