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

// Whole-line solution of u_t + g u_x + u_xxx = 0 for constant g:
//
//   u(t, x) = (1/2pi) integral u0^(k) e^{i(kx - (gk - k^3)t)} dk,
//
// evaluated with the trapezoidal rule on [-K, K]. K and the sample density
// are doubled until two successive answers agree.

#pragma once

#include <span>
#include <vector>

#include "kdvsplit/harness/functions.hpp"

namespace kdvsplit::harness {

class FourierReference {
 public:
  /// Chooses K and the spacing by refinement at t = t_max on `points`.
  /// Throws NonConstantAdvection unless advection.constant is set, and
  /// NumericalError (stage fourier-reference) if refinement does not reach
  /// `tolerance`.
  FourierReference(const Advection& advection, const InitialValue& initial,
                   std::span<const double> points, double t_max, double tolerance = 1e-11);

  /// Values at the construction points. Safe to call concurrently.
  std::vector<double> values(double t) const;

  double cutoff() const { return cutoff_; }
  int samples() const { return static_cast<int>(k_.size()); }
  /// Max difference between the last two refinement levels.
  double refinement_gap() const { return gap_; }

 private:
  double g_ = 0.0;
  double cutoff_ = 0.0;
  double gap_ = 0.0;
  std::size_t points_ = 0;
  std::vector<double> k_;
  // values = A cos(omega t) + B sin(omega t), row-major points x samples.
  std::vector<double> a_, b_;
};

}  // namespace kdvsplit::harness
