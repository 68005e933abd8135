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


// The three experiment advection fields on [-6, 6], defined independently of
// the harness registry.

#pragma once

#include <cmath>

#include "kdvsplit/stepper.hpp"
#include "kdvsplit/ztbc.hpp"

namespace fixture {

inline const kdvsplit::Interval kInterval{-6.0, 6.0};

inline kdvsplit::stepper::AdvectionField example1() {
  return kdvsplit::stepper::AdvectionField::make(
      [](double, int d) { return d == 0 ? 6.0 : 0.0; }, kInterval,
      kdvsplit::assembly::DeclaredForm::polynomial(0));
}

// g(x) = 3 + x - x^3 / 54.
inline kdvsplit::stepper::AdvectionField example2() {
  return kdvsplit::stepper::AdvectionField::make(
      [](double x, int d) { return d == 0 ? 3.0 + x - x * x * x / 54.0 : 1.0 - x * x / 18.0; },
      kInterval, kdvsplit::assembly::DeclaredForm::polynomial(3));
}

// Gaussian bumps at -6, 0, 6 shifted down by 1/2.
inline kdvsplit::stepper::AdvectionField example3() {
  return kdvsplit::stepper::AdvectionField::make(
      [](double x, int d) {
        double v = 0.0;
        for (double c : {-6.0, 0.0, 6.0}) {
          const double e = std::exp(-(x - c) * (x - c));
          v += d == 0 ? e : -2.0 * (x - c) * e;
        }
        return d == 0 ? v - 0.5 : v;
      },
      kInterval, kdvsplit::assembly::DeclaredForm::general());
}

inline kdvsplit::ztbc::BoundaryKernels kernels(const kdvsplit::stepper::AdvectionField& f,
                                               double tau, int M) {
  return kdvsplit::ztbc::compute_kernels(f.g_a, f.g_b, tau, M);
}

inline kdvsplit::stepper::Operators operators(const kdvsplit::stepper::AdvectionField& f, int N,
                                              int M, double T = 1.0) {
  const kdvsplit::stepper::Discretization disc{kInterval, N, M, T};
  return kdvsplit::stepper::build_operators(disc, f, kernels(f, T / M, M));
}

}  // namespace fixture
