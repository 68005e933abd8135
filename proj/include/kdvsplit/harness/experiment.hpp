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

// Experiment plumbing: building solvers from a config, reference solutions,
// convergence sweeps and CSV/manifest output.

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kdvsplit/harness/config.hpp"
#include "kdvsplit/harness/functions.hpp"
#include "kdvsplit/harness/metrics.hpp"
#include "kdvsplit/harness/reference.hpp"
#include "kdvsplit/stepper.hpp"
#include "kdvsplit/ztbc.hpp"

namespace kdvsplit::harness {

/// Number of intervals of the error and snapshot grid.
inline constexpr int kGridIntervals = 128;

struct Problem {
  stepper::Discretization disc;
  Advection advection;
  InitialValue initial;
  stepper::AdvectionField field;
};

/// The config's problem at resolution (N, M).
Problem make_problem(const ExperimentConfig& config, int N, int M);

/// Kernels for the problem's boundary speeds and step size.
ztbc::BoundaryKernels problem_kernels(const Problem& problem);

struct Simulation {
  stepper::RunResult result;
  ztbc::BoundaryKernels kernels;
  double seconds = 0.0;
};

Simulation simulate(const Problem& problem, const stepper::RunOptions& options);

/// Reference values on a fixed grid, either the whole-line Fourier solution
/// or the same solver at (reference.N, reference.M).
class ReferenceSolution {
 public:
  ReferenceSolution(const ExperimentConfig& config, std::vector<double> grid);

  /// Values at t_m = m T / M for m = 0..M. A self reference needs M to
  /// divide reference.M; otherwise ConfigError on reference.M.
  std::vector<std::vector<double>> steps(int M) const;
  /// Values at time t. A self reference rounds t to its nearest step and
  /// throws ConfigError unless t lies on its time grid.
  std::vector<double> at(double t) const;

  const std::vector<double>& grid() const { return grid_; }
  std::string describe() const;

 private:
  ExperimentConfig config_;
  std::vector<double> grid_;
  std::unique_ptr<FourierReference> fourier_;
  std::vector<std::vector<double>> self_steps_;
};

struct ConvergenceRow {
  int N = 0;
  int M = 0;
  double error = 0.0;
  double seconds = 0.0;
};

struct ConvergenceTable {
  enum class Vary { kN, kM };
  Vary vary = Vary::kN;
  std::vector<ConvergenceRow> rows;
  std::vector<double> slopes;  // alpha for kN, beta for kM; one per pair
};

/// Runs one simulation per value (in parallel) and measures the aggregate
/// error against `reference`. Values must increase strictly.
ConvergenceTable converge(const ExperimentConfig& config, ConvergenceTable::Vary vary,
                          const std::vector<int>& values, const ReferenceSolution& reference);

/// Output of `run_experiment`.
struct RunReport {
  std::vector<std::filesystem::path> files;
  std::optional<double> aggregate_error;
  stepper::StabilityGuard guard;
  double seconds = 0.0;
};

/// Simulates the config, writes snapshot CSVs, the trace CSV, the per-step
/// error CSV and the manifest into config.output_dir. `with_reference`
/// controls whether the error CSV is produced.
RunReport run_experiment(const ExperimentConfig& config, bool with_reference = true);

/// Writes the table as CSV: `N,M,error,alpha` or `N,M,error,beta`.
void write_convergence_csv(const ConvergenceTable& table, const std::filesystem::path& path);

/// Writes x,u on the reference grid for each time, one file per time.
std::vector<std::filesystem::path> write_reference(const ExperimentConfig& config,
                                                   const std::vector<double>& times);

/// Throws IoError when the directory cannot be created.
void ensure_directory(const std::filesystem::path& dir);

/// File-name fragment for a time value.
std::string time_tag(double t);

}  // namespace kdvsplit::harness
