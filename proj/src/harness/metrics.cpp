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

#include "kdvsplit/harness/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "kdvsplit/errors.hpp"

namespace kdvsplit::harness {
namespace {

template <class Key, class Transform>
std::vector<double> slopes(std::span<const double> errors, std::span<const Key> keys,
                           Transform gap) {
  if (errors.size() != keys.size()) throw LengthMismatch("slopes: size mismatch");
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!(errors[i] > 0.0) || !std::isfinite(errors[i])) {
      throw std::invalid_argument("slopes: errors must be positive and finite");
    }
    if (i > 0 && !(keys[i] > keys[i - 1])) {
      throw std::invalid_argument("slopes: parameters must increase strictly");
    }
  }
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    out.push_back(-std::log(errors[i + 1] / errors[i]) / gap(keys[i], keys[i + 1]));
  }
  return out;
}

}  // namespace

std::vector<double> equispaced_grid(double a, double b, int J) {
  if (J < 1) throw std::invalid_argument("equispaced_grid: need J >= 1");
  std::vector<double> x(J + 1);
  for (int j = 0; j <= J; ++j) x[j] = a + (b - a) * j / J;
  x[J] = b;
  return x;
}

double relative_l2(std::span<const double> u, std::span<const double> r) {
  if (u.size() != r.size()) throw LengthMismatch("relative_l2: grid size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    num += (u[j] - r[j]) * (u[j] - r[j]);
    den += r[j] * r[j];
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
  return std::sqrt(num / den);
}

ErrorNorms error_norms(const std::vector<std::vector<double>>& numeric,
                       const std::vector<std::vector<double>>& reference, double tau) {
  if (numeric.size() != reference.size()) {
    throw LengthMismatch("error_norms: step counts differ");
  }
  ErrorNorms out;
  double sum = 0.0;
  for (std::size_t m = 0; m < numeric.size(); ++m) {
    const double e = relative_l2(numeric[m], reference[m]);
    out.per_step.push_back(e);
    if (m >= 1) sum += e * e;
  }
  out.aggregate = std::sqrt(tau * sum);
  return out;
}

std::vector<double> alpha_slopes(std::span<const double> errors, std::span<const int> Ns) {
  return slopes(errors, Ns, [](int n1, int n2) {
    return static_cast<double>(n2) * n2 - static_cast<double>(n1) * n1;
  });
}

std::vector<double> beta_slopes(std::span<const double> errors, std::span<const int> Ms) {
  return slopes(errors, Ms, [](int m1, int m2) {
    return std::log(static_cast<double>(m2) / static_cast<double>(m1));
  });
}

}  // namespace kdvsplit::harness
