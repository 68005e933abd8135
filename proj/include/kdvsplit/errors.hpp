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

#include <stdexcept>
#include <string>

namespace kdvsplit {

/// Base class for every failure of a numerical stage. The CLI maps these to
/// exit code 2 and prints `stage()`.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

class EigenSolveError : public NumericalError {
 public:
  explicit EigenSolveError(const std::string& what)
      : NumericalError("eigensolve", what) {}
};

class QuadratureError : public NumericalError {
 public:
  explicit QuadratureError(const std::string& what)
      : NumericalError("quadrature", what) {}
};

class SignPatternViolation : public NumericalError {
 public:
  explicit SignPatternViolation(const std::string& what)
      : NumericalError("characteristic-roots", what) {}
};

class KernelAccuracyError : public NumericalError {
 public:
  explicit KernelAccuracyError(const std::string& what)
      : NumericalError("kernels", what) {}
};

class SingularBasisSystem : public NumericalError {
 public:
  explicit SingularBasisSystem(const std::string& what)
      : NumericalError("basis-coefficients", what) {}
};

class SingularLiftSystem : public NumericalError {
 public:
  explicit SingularLiftSystem(const std::string& what)
      : NumericalError("lift-polynomial", what) {}
};

class BandwidthViolation : public NumericalError {
 public:
  explicit BandwidthViolation(const std::string& what)
      : NumericalError("assembly", what) {}
};

class FactorizationError : public NumericalError {
 public:
  explicit FactorizationError(const std::string& what)
      : NumericalError("factorization", what) {}
};

class SupportViolation : public NumericalError {
 public:
  explicit SupportViolation(const std::string& what)
      : NumericalError("initialize", what) {}
};

class NonConstantAdvection : public NumericalError {
 public:
  explicit NonConstantAdvection(const std::string& what)
      : NumericalError("fourier-reference", what) {}
};

/// Wraps a failure raised inside one stage of a time step.
class StepError : public NumericalError {
 public:
  StepError(int step, const std::string& stage, const std::string& what)
      : NumericalError("step " + std::to_string(step) + " stage " + stage,
                       what),
        step_(step) {}

  int step() const noexcept { return step_; }

 private:
  int step_;
};

/// Input sequences or vectors whose lengths do not fit together.
class LengthMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& field, const std::string& what)
      : std::runtime_error(format(line, field, what)),
        line_(line),
        field_(field) {}

  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  static std::string format(int line, const std::string& field,
                            const std::string& what) {
    std::string out = "config";
    if (line > 0) out += " line " + std::to_string(line);
    if (!field.empty()) out += " field '" + field + "'";
    return out + ": " + what;
  }

  int line_;
  std::string field_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kdvsplit
