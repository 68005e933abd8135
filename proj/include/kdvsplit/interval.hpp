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

namespace kdvsplit {

/// Physical interval [a, b] and its affine map to the reference interval
/// [-1, 1]: x = ((b - a) y + (a + b)) / 2. A k-th x-derivative equals
/// scale()^k times the k-th y-derivative.
struct Interval {
  double a = -1.0;
  double b = 1.0;

  double scale() const { return 2.0 / (b - a); }
  double to_physical(double y) const { return 0.5 * ((b - a) * y + (a + b)); }
  double to_reference(double x) const { return (2.0 * x - (a + b)) / (b - a); }
};

}  // namespace kdvsplit
