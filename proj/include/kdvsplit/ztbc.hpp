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

// Discrete transparent boundary conditions for the Crank-Nicolson exterior
// problem u_t + g u_x + u_xxx = 0 with constant g.
//
// For |z| > 1 the Z-transformed exterior equation has characteristic
// polynomial lambda^3 + g lambda + c(z), c(z) = (2/tau)(1 - 1/z)/(1 + 1/z),
// with exactly one root of negative real part. The boundary kernels are the
// inverse Z-transforms
//
//   y1 = Z^{-1}[lambda_1],  y2 = Z^{-1}[lambda_1^2]   (left,  g = g_a)
//   y3 = Z^{-1}[sigma_1],   y4 = Z^{-1}[sigma_1^2]    (right, g = g_b)
//
// evaluated with the trapezoidal rule on the circle |z| = r.

#pragma once

#include <array>
#include <complex>
#include <filesystem>
#include <span>
#include <vector>

namespace kdvsplit::ztbc {

using Complex = std::complex<double>;

/// Roots of lambda^3 + g lambda + c (companion-matrix eigenvalues, one Newton
/// polish each).
std::array<Complex, 3> characteristic_roots(double g, Complex c);

/// The root with negative real part. Throws SignPatternViolation unless
/// exactly one root lies left of -1e-10.
Complex decaying_root(const std::array<Complex, 3>& roots);

/// c(z) for step size tau.
Complex cayley_symbol(double tau, Complex z);

/// lambda_1(z) for exterior advection g.
Complex decaying_root_at(double g, double tau, Complex z);

/// Contour parameters. Zero selects the defaults:
/// K = max(4 (M + 1), 1024) and r = eps^{-1/(2K)}.
struct ContourOptions {
  int sample_count = 0;
  double radius = 0.0;
};

struct BoundaryKernels {
  std::vector<double> y1, y2, y3, y4;  // length M + 1 each
  double tau = 0.0;
  double g_a = 0.0;
  double g_b = 0.0;
  double contour_radius = 0.0;
  int sample_count = 0;
  /// max |Im| / max |entry| over the stored entries, worst of the four.
  double imag_residue = 0.0;
  /// Worst relative mismatch of the forward Z-transform of y1 and y3 against
  /// lambda_1 and sigma_1 at probe points of radius 1.1.
  double forward_residual = 0.0;

  int steps() const { return static_cast<int>(y1.size()) - 1; }
};

/// Throws KernelAccuracyError when the imaginary residue exceeds 1e-8 or the
/// forward residual exceeds 1e-7.
BoundaryKernels compute_kernels(double g_a, double g_b, double tau, int M,
                                ContourOptions options = {});

/// sum_{k=1}^{m+1} kernel[k] * trace[m+1-k]. Needs trace.size() >= m + 1 and
/// kernel.size() >= m + 2; throws LengthMismatch otherwise.
double history_convolution(std::span<const double> kernel,
                           std::span<const double> trace, int m);

/// Kernel cache as CSV. See README for the layout.
void write_kernel_cache(const BoundaryKernels& kernels,
                        const std::filesystem::path& path);
BoundaryKernels read_kernel_cache(const std::filesystem::path& path);

}  // namespace kdvsplit::ztbc
