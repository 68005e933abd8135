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

#pragma once

#include <array>
#include <optional>

namespace kdvsplit {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;

/// Row-sum norm.
double norm_inf(const Mat3& a);

double determinant(const Mat3& a);

/// Gaussian elimination with partial pivoting. Returns nullopt when
/// |det A| < rel_det_tol * ||A||_inf^3.
std::optional<Vec3> solve3(const Mat3& a, const Vec3& b, double rel_det_tol = 1e-12);

}  // namespace kdvsplit
