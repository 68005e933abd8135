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

// String-keyed registry of advection coefficients and initial values.
//
// Advection kinds:
//   constant    params: c                g = c
//   polynomial  params: c0, c1, ..., cn  g = sum c_i x^i
//   gauss3      no params                g = e^{-(x+6)^2} + e^{-x^2} + e^{-(x-6)^2} - 1/2
// Initial kinds:
//   gaussian    params: center, width    u0 = e^{-((x - center)/width)^2}

#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kdvsplit/assembly.hpp"
#include "kdvsplit/harness/config.hpp"
#include "kdvsplit/stepper.hpp"

namespace kdvsplit::harness {

struct Advection {
  stepper::ScalarFunction g;
  assembly::DeclaredForm form;
  /// Set when g is constant.
  std::optional<double> constant;
};

struct InitialValue {
  stepper::ScalarFunction u0;
  /// Fourier transform u0^(k) = integral u0(x) e^{-ikx} dx.
  std::function<std::complex<double>(double k)> fourier;
  /// Wavenumber beyond which |u0^| < 1e-18 * max |u0^|.
  double bandwidth = 0.0;
};

/// Throw ConfigError (field g.kind / g.params or ic.kind / ic.params) for an
/// unknown kind or a bad parameter list.
Advection make_advection(const FunctionSpec& spec);
InitialValue make_initial(const FunctionSpec& spec);

std::vector<std::string> advection_kinds();
std::vector<std::string> initial_kinds();

}  // namespace kdvsplit::harness
