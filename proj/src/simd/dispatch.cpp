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

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kdvsplit/errors.hpp"
#include "kdvsplit/simd/kernels.hpp"

namespace kdvsplit::simd {

namespace detail {
#ifndef KDVSPLIT_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif
}  // namespace detail

namespace {

bool cpu_has_avx2() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

bool force_scalar() {
  const char* v = std::getenv("KDVSPLIT_FORCE_SCALAR");
  return v != nullptr && std::string(v) != "0" && std::string(v) != "";
}

const KernelTable& select() {
  if (!force_scalar() && isa_supported(Isa::kAvx2)) return *detail::avx2_table();
  return detail::scalar_table();
}

}  // namespace

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
      return detail::avx2_table() != nullptr && cpu_has_avx2();
  }
  return false;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable& kernels() {
  static const KernelTable& active = select();
  return active;
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::runtime_error("kernel set '" + std::string(isa_name(isa)) +
                             "' is not available on this machine");
  }
  return isa == Isa::kAvx2 ? *detail::avx2_table() : detail::scalar_table();
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw LengthMismatch("simd::dot: length mismatch");
  return kernels().dot(a.data(), b.data(), a.size());
}

double dot_reverse(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw LengthMismatch("simd::dot_reverse: length mismatch");
  }
  return kernels().dot_reverse(a.data(), b.data(), a.size());
}

void gemv(std::span<const double> a, std::size_t rows, std::size_t cols,
          std::span<const double> x, std::span<double> y) {
  if (a.size() != rows * cols || x.size() != cols || y.size() != rows) {
    throw LengthMismatch("simd::gemv: shape mismatch");
  }
  kernels().gemv(a.data(), rows, cols, x.data(), y.data());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw LengthMismatch("simd::axpy: length mismatch");
  kernels().axpy(alpha, x.data(), y.data(), x.size());
}

}  // namespace kdvsplit::simd
