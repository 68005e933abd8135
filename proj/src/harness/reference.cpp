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

#include "kdvsplit/harness/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kdvsplit/errors.hpp"
#include "kdvsplit/simd/kernels.hpp"

namespace kdvsplit::harness {
namespace {

struct Quadrature {
  std::vector<double> k;
  std::vector<double> w;  // trapezoid weight / (2 pi), doubled for k > 0
};

// The real part of the integrand is even in k, so [-K, K] folds onto [0, K].
Quadrature half_line(double cutoff, int intervals) {
  Quadrature q;
  const double h = cutoff / intervals;
  q.k.resize(intervals + 1);
  q.w.resize(intervals + 1);
  for (int j = 0; j <= intervals; ++j) {
    q.k[j] = j * h;
    q.w[j] = (j == 0 ? 1.0 : 2.0) * h / (2.0 * std::numbers::pi);
  }
  return q;
}

std::vector<double> direct(const Quadrature& q, const InitialValue& init, double g,
                           std::span<const double> points, double t) {
  std::vector<double> out(points.size(), 0.0);
  for (std::size_t j = 0; j < q.k.size(); ++j) {
    const double k = q.k[j];
    const std::complex<double> u0 = init.fourier(k) * q.w[j];
    const double omega = g * k - k * k * k;
    for (std::size_t p = 0; p < points.size(); ++p) {
      out[p] += (u0 * std::polar(1.0, k * points[p] - omega * t)).real();
    }
  }
  return out;
}

}  // namespace

FourierReference::FourierReference(const Advection& advection, const InitialValue& initial,
                                   std::span<const double> points, double t_max,
                                   double tolerance)
    : points_(points.size()) {
  if (!advection.constant) {
    throw NonConstantAdvection("the Fourier reference needs a constant advection speed");
  }
  g_ = *advection.constant;

  double cutoff = 0.5 * initial.bandwidth;
  int intervals = 256;
  Quadrature q = half_line(cutoff, intervals);
  std::vector<double> previous = direct(q, initial, g_, points, t_max);
  bool converged = false;
  for (int level = 0; level < 8 && !converged; ++level) {
    cutoff *= 2.0;
    intervals *= 4;
    q = half_line(cutoff, intervals);
    std::vector<double> current = direct(q, initial, g_, points, t_max);
    gap_ = 0.0;
    for (std::size_t p = 0; p < points.size(); ++p) {
      gap_ = std::max(gap_, std::abs(current[p] - previous[p]));
    }
    converged = gap_ <= tolerance;
    previous = std::move(current);
  }
  if (!converged) {
    throw NumericalError("fourier-reference",
                         "trapezoidal refinement stalled at gap " + std::to_string(gap_));
  }

  // Drop the tail where the transform is below 1e-18 of its peak.
  double peak = 0.0;
  for (double k : q.k) peak = std::max(peak, std::abs(initial.fourier(k)));
  std::size_t n = q.k.size();
  while (n > 1 && std::abs(initial.fourier(q.k[n - 1])) < 1e-18 * peak) --n;
  cutoff_ = cutoff;
  k_.assign(q.k.begin(), q.k.begin() + n);
  q.w.resize(n);
  a_.assign(points_ * n, 0.0);
  b_.assign(points_ * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const std::complex<double> u0 = initial.fourier(k_[j]) * q.w[j];
    for (std::size_t p = 0; p < points_; ++p) {
      const double c = std::cos(k_[j] * points[p]);
      const double s = std::sin(k_[j] * points[p]);
      // Re[u0 e^{i(kx - wt)}] = (Re u0 c - Im u0 s) cos wt + (Re u0 s + Im u0 c) sin wt
      a_[p * n + j] = u0.real() * c - u0.imag() * s;
      b_[p * n + j] = u0.real() * s + u0.imag() * c;
    }
  }
}

std::vector<double> FourierReference::values(double t) const {
  const std::size_t n = k_.size();
  std::vector<double> c(n), s(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double omega = g_ * k_[j] - k_[j] * k_[j] * k_[j];
    c[j] = std::cos(omega * t);
    s[j] = std::sin(omega * t);
  }
  std::vector<double> out(points_), tmp(points_);
  simd::gemv(a_, points_, n, c, out);
  simd::gemv(b_, points_, n, s, tmp);
  for (std::size_t p = 0; p < points_; ++p) out[p] += tmp[p];
  return out;
}

}  // namespace kdvsplit::harness
