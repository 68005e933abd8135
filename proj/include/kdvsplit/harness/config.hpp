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

// Experiment configuration: flat `key = value` text, one entry per line,
// `#` starts a comment. Lists are comma separated.

#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace kdvsplit::harness {

/// A named function from the registry plus its numeric parameters.
struct FunctionSpec {
  std::string kind;
  std::vector<double> params;

  bool operator==(const FunctionSpec&) const = default;
};

struct ReferenceSpec {
  enum class Kind { kFourier, kSelf };
  Kind kind = Kind::kFourier;
  int N = 64;    // self only
  int M = 4096;  // self only

  bool operator==(const ReferenceSpec&) const = default;
};

struct ExperimentConfig {
  double a = -6.0;
  double b = 6.0;
  double T = 1.0;
  int N = 64;
  int M = 4096;
  FunctionSpec g;
  FunctionSpec ic;
  std::vector<double> snapshots;
  ReferenceSpec reference;
  std::string output_dir = "out";

  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses and validates. Required keys: a, b, T, N, M, g.kind, ic.kind.
/// Throws ConfigError carrying the line and key of the offending entry.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_string(const std::string& text);
/// Throws IoError when the file cannot be read.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(serialize(c)) == c and serializing the
/// result again reproduces the same text.
std::string serialize(const ExperimentConfig& config);

/// Range and registry checks shared by the parser and programmatic callers.
/// Throws ConfigError with line 0.
void validate(const ExperimentConfig& config);

/// 17 significant digits, shortest round-trip notation.
std::string format_double(double v);

}  // namespace kdvsplit::harness
