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

// Command-line driver. Exit codes: 0 success, 1 configuration or usage
// error, 2 numerical failure, 3 IO failure.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "kdvsplit/errors.hpp"
#include "kdvsplit/harness/config.hpp"
#include "kdvsplit/harness/experiment.hpp"
#include "kdvsplit/ztbc.hpp"

namespace {

using namespace kdvsplit;
using namespace kdvsplit::harness;

constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

int cmd_simulate(const std::string& path, bool no_reference) {
  const ExperimentConfig config = load_config(path);
  const RunReport report = run_experiment(config, !no_reference);
  std::printf("stability guard tau*max|d_x g*|/4 = %.6g (%s)\n", report.guard.ratio,
              report.guard.satisfied() ? "satisfied" : "violated");
  if (report.aggregate_error) std::printf("aggregate error = %.10e\n", *report.aggregate_error);
  for (const auto& f : report.files) std::printf("wrote %s\n", f.string().c_str());
  std::printf("wall clock %.3f s\n", report.seconds);
  return 0;
}

int cmd_converge(const std::string& path, const std::string& vary_name,
                 const std::vector<int>& values) {
  const ExperimentConfig config = load_config(path);
  const auto vary =
      vary_name == "N" ? ConvergenceTable::Vary::kN : ConvergenceTable::Vary::kM;
  const ReferenceSolution reference(config,
                                    equispaced_grid(config.a, config.b, kGridIntervals));
  const ConvergenceTable table = converge(config, vary, values, reference);
  ensure_directory(config.output_dir);
  const auto out = std::filesystem::path(config.output_dir) / ("convergence_" + vary_name + ".csv");
  write_convergence_csv(table, out);

  std::printf("reference: %s\n", reference.describe().c_str());
  std::printf("%6s %6s %16s %12s\n", "N", "M", "error", vary_name == "N" ? "alpha" : "beta");
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    std::printf("%6d %6d %16.4e", r.N, r.M, r.error);
    if (i > 0 && i - 1 < table.slopes.size()) std::printf(" %12.4e", table.slopes[i - 1]);
    std::printf("\n");
  }
  std::printf("wrote %s\n", out.string().c_str());
  return 0;
}

int cmd_kernels(const std::string& path, const std::string& dump) {
  const ExperimentConfig config = load_config(path);
  const Problem p = make_problem(config, config.N, config.M);
  const ztbc::BoundaryKernels k = problem_kernels(p);
  ztbc::write_kernel_cache(k, dump);
  std::printf("g_a = %.17g, g_b = %.17g, tau = %.17g, M = %d, r = %.17g, K = %d\n", k.g_a,
              k.g_b, k.tau, k.steps(), k.contour_radius, k.sample_count);
  std::printf("imaginary residue %.3e, forward residual %.3e\n", k.imag_residue,
              k.forward_residual);
  std::printf("wrote %s\n", dump.c_str());
  return 0;
}

int cmd_reference(const std::string& path, const std::vector<double>& times) {
  const ExperimentConfig config = load_config(path);
  for (double t : times) {
    if (t < 0.0 || t > config.T) throw ConfigError(0, "--times", "times must lie in [0, T]");
  }
  for (const auto& f : write_reference(config, times)) {
    std::printf("wrote %s\n", f.string().c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linearized KdV solver with discrete transparent boundary conditions"};
  app.require_subcommand(1);

  std::string config_path;
  bool no_reference = false;
  auto* sim = app.add_subcommand("simulate", "Run one simulation and write CSV output");
  sim->add_option("config", config_path, "Config file")->required();
  sim->add_flag("--no-reference", no_reference, "Skip the reference solution and error CSV");

  std::string vary;
  std::vector<int> values;
  auto* conv = app.add_subcommand("converge", "Convergence sweep over N or M");
  conv->add_option("config", config_path, "Config file")->required();
  conv->add_option("--vary", vary, "Parameter to vary")
      ->required()
      ->check(CLI::IsMember({"N", "M"}));
  conv->add_option("--values", values, "Increasing list of values")->required();

  std::string dump;
  auto* ker = app.add_subcommand("kernels", "Compute the boundary kernels and dump them");
  ker->add_option("config", config_path, "Config file")->required();
  ker->add_option("--dump", dump, "Output kernel cache path")->required();

  std::vector<double> times;
  auto* ref = app.add_subcommand("reference", "Write reference solutions at given times");
  ref->add_option("config", config_path, "Config file")->required();
  ref->add_option("--times", times, "Times in [0, T]")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sim) return cmd_simulate(config_path, no_reference);
    if (*conv) return cmd_converge(config_path, vary, values);
    if (*ker) return cmd_kernels(config_path, dump);
    if (*ref) return cmd_reference(config_path, times);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure in stage '" << e.stage() << "': " << e.what() << '\n';
    return kExitNumerical;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure in stage 'unknown': " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
