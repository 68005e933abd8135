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

// Error measures and convergence-rate fits.

#pragma once

#include <span>
#include <vector>

namespace kdvsplit::harness {

/// J + 1 equispaced points of [a, b], both endpoints included.
std::vector<double> equispaced_grid(double a, double b, int J = 128);

/// sqrt(sum (u - r)^2 / sum r^2). Throws LengthMismatch on a size mismatch.
double relative_l2(std::span<const double> u, std::span<const double> r);

struct ErrorNorms {
  std::vector<double> per_step;  // err^m for m = 0..M
  double aggregate = 0.0;        // sqrt(tau sum_{m=1}^M (err^m)^2)
};

/// numeric[m] and reference[m] hold grid values at step m = 0..M.
/// Throws LengthMismatch when step counts or grid sizes differ.
ErrorNorms error_norms(const std::vector<std::vector<double>>& numeric,
                       const std::vector<std::vector<double>>& reference, double tau);

/// alpha_i = -ln(e_{i+1}/e_i) / (N_{i+1}^2 - N_i^2). Throws
/// std::invalid_argument unless Ns increase strictly and errors are positive.
std::vector<double> alpha_slopes(std::span<const double> errors, std::span<const int> Ns);

/// beta_i = -ln(e_{i+1}/e_i) / ln(M_{i+1}/M_i), same preconditions.
std::vector<double> beta_slopes(std::span<const double> errors, std::span<const int> Ms);

}  // namespace kdvsplit::harness
