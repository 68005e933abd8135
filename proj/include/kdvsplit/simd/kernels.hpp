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

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// where the target supports it, an AVX2+FMA version. The active table is
// chosen once at first use from the running CPU; setting the environment
// variable KDVSPLIT_FORCE_SCALAR=1 pins the scalar table.

#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace kdvsplit::simd {

enum class Isa { kScalar, kAvx2 };

struct KernelTable {
  Isa isa;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i a[i] * b[n - 1 - i]
  double (*dot_reverse)(const double* a, const double* b, std::size_t n);
  // y = A x with A row-major rows x cols
  void (*gemv)(const double* a, std::size_t rows, std::size_t cols,
               const double* x, double* y);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
};

bool isa_supported(Isa isa);
std::string_view isa_name(Isa isa);

/// Table selected for this process.
const KernelTable& kernels();

/// Explicit table, for equivalence tests. Throws std::runtime_error when the
/// CPU or the build lacks `isa`.
const KernelTable& kernels_for(Isa isa);

namespace detail {
const KernelTable& scalar_table();
const KernelTable* avx2_table();  // nullptr when not compiled in
}  // namespace detail

// Convenience wrappers over the active table.

double dot(std::span<const double> a, std::span<const double> b);
double dot_reverse(std::span<const double> a, std::span<const double> b);
void gemv(std::span<const double> a, std::size_t rows, std::size_t cols,
          std::span<const double> x, std::span<double> y);
void axpy(double alpha, std::span<const double> x, std::span<double> y);

}  // namespace kdvsplit::simd
