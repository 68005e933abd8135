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


#include "kdvsplit/small_solve.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace kdvsplit {

double norm_inf(const Mat3& a) {
  double n = 0.0;
  for (const auto& row : a) {
    n = std::max(n, std::abs(row[0]) + std::abs(row[1]) + std::abs(row[2]));
  }
  return n;
}

double determinant(const Mat3& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

std::optional<Vec3> solve3(const Mat3& a, const Vec3& b, double rel_det_tol) {
  const double scale = norm_inf(a);
  if (!(std::abs(determinant(a)) >= rel_det_tol * scale * scale * scale) || scale == 0.0) {
    return std::nullopt;
  }
  Mat3 m = a;
  Vec3 r = b;
  for (int k = 0; k < 3; ++k) {
    int p = k;
    for (int i = k + 1; i < 3; ++i) {
      if (std::abs(m[i][k]) > std::abs(m[p][k])) p = i;
    }
    std::swap(m[k], m[p]);
    std::swap(r[k], r[p]);
    for (int i = k + 1; i < 3; ++i) {
      const double l = m[i][k] / m[k][k];
      for (int j = k; j < 3; ++j) m[i][j] -= l * m[k][j];
      r[i] -= l * r[k];
    }
  }
  Vec3 x{};
  for (int i = 2; i >= 0; --i) {
    double s = r[i];
    for (int j = i + 1; j < 3; ++j) s -= m[i][j] * x[j];
    x[i] = s / m[i][i];
  }
  return x;
}

}  // namespace kdvsplit
