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

#include "kdvsplit/harness/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>
#include <sstream>

#include "kdvsplit/errors.hpp"
#include "kdvsplit/simd/kernels.hpp"

namespace kdvsplit::harness {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open for writing: " + path.string());
  return os;
}

void finish(std::ofstream& os, const std::filesystem::path& path) {
  os.flush();
  if (!os) throw IoError("failed writing " + path.string());
}

void write_xu(const std::filesystem::path& path, const std::vector<double>& x,
              const std::vector<double>& u) {
  auto os = open_output(path);
  os << "x,u\n";
  for (std::size_t j = 0; j < x.size(); ++j) {
    os << format_double(x[j]) << ',' << format_double(u[j]) << '\n';
  }
  finish(os, path);
}

// Exact integer ratio big / small, or nullopt.
std::optional<int> stride(int big, int small) {
  if (small <= 0 || big % small != 0) return std::nullopt;
  return big / small;
}

}  // namespace

std::string time_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
  }
}

Problem make_problem(const ExperimentConfig& config, int N, int M) {
  Problem p;
  p.disc = {{config.a, config.b}, N, M, config.T};
  try {
    p.disc.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, "", e.what());
  }
  p.advection = make_advection(config.g);
  p.initial = make_initial(config.ic);
  try {
    p.field = stepper::AdvectionField::make(p.advection.g, p.disc.interval, p.advection.form);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, "g.params", e.what());
  }
  return p;
}

ztbc::BoundaryKernels problem_kernels(const Problem& problem) {
  return ztbc::compute_kernels(problem.field.g_a, problem.field.g_b, problem.disc.tau(),
                               problem.disc.M);
}

Simulation simulate(const Problem& problem, const stepper::RunOptions& options) {
  const auto start = Clock::now();
  Simulation s;
  s.kernels = problem_kernels(problem);
  const stepper::Solver solver(problem.disc, problem.field, s.kernels);
  s.result = stepper::run(solver, problem.initial.u0, options);
  s.seconds = seconds_since(start);
  return s;
}

ReferenceSolution::ReferenceSolution(const ExperimentConfig& config, std::vector<double> grid)
    : config_(config), grid_(std::move(grid)) {
  if (config.reference.kind == ReferenceSpec::Kind::kFourier) {
    fourier_ = std::make_unique<FourierReference>(make_advection(config.g),
                                                  make_initial(config.ic), grid_, config.T);
    return;
  }
  const Problem p = make_problem(config, config.reference.N, config.reference.M);
  stepper::RunOptions opts;
  opts.grid = grid_;
  opts.record_every_step = true;
  self_steps_ = simulate(p, opts).result.steps;
}

std::vector<std::vector<double>> ReferenceSolution::steps(int M) const {
  std::vector<std::vector<double>> out;
  out.reserve(M + 1);
  if (fourier_) {
    for (int m = 0; m <= M; ++m) out.push_back(fourier_->values(config_.T * m / M));
    return out;
  }
  const auto k = stride(config_.reference.M, M);
  if (!k) {
    throw ConfigError(0, "reference.M",
                      "M = " + std::to_string(M) + " does not divide reference.M = " +
                          std::to_string(config_.reference.M));
  }
  for (int m = 0; m <= M; ++m) out.push_back(self_steps_[static_cast<std::size_t>(m) * *k]);
  return out;
}

std::vector<double> ReferenceSolution::at(double t) const {
  if (fourier_) return fourier_->values(t);
  const double pos = t / config_.T * config_.reference.M;
  const long m = std::lround(pos);
  if (std::abs(pos - m) > 1e-9 * config_.reference.M || m < 0 || m > config_.reference.M) {
    throw ConfigError(0, "snapshots",
                      "time " + format_double(t) + " is not on the reference time grid");
  }
  return self_steps_[m];
}

std::string ReferenceSolution::describe() const {
  std::ostringstream os;
  if (fourier_) {
    os << "fourier(cutoff=" << format_double(fourier_->cutoff())
       << ", samples=" << fourier_->samples()
       << ", refinement_gap=" << format_double(fourier_->refinement_gap()) << ")";
  } else {
    os << "self(N=" << config_.reference.N << ", M=" << config_.reference.M << ")";
  }
  return os.str();
}

ConvergenceTable converge(const ExperimentConfig& config, ConvergenceTable::Vary vary,
                          const std::vector<int>& values, const ReferenceSolution& reference) {
  if (values.empty()) throw ConfigError(0, "--values", "need at least one value");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) {
      throw ConfigError(0, "--values", "values must increase strictly");
    }
  }
  ConvergenceTable table;
  table.vary = vary;
  std::vector<Problem> problems;
  for (int v : values) {
    const int N = vary == ConvergenceTable::Vary::kN ? v : config.N;
    const int M = vary == ConvergenceTable::Vary::kM ? v : config.M;
    problems.push_back(make_problem(config, N, M));
  }
  // Reference slices are taken before the fan-out; workers only read them.
  std::map<int, std::vector<std::vector<double>>> refs;
  for (const Problem& p : problems) {
    if (!refs.contains(p.disc.M)) refs.emplace(p.disc.M, reference.steps(p.disc.M));
  }

  std::vector<std::future<ConvergenceRow>> cells;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    cells.push_back(std::async(std::launch::async, [&, i] {
      const Problem& p = problems[i];
      stepper::RunOptions opts;
      opts.grid = reference.grid();
      opts.record_every_step = true;
      const Simulation s = simulate(p, opts);
      ConvergenceRow row;
      row.N = p.disc.N;
      row.M = p.disc.M;
      row.error = error_norms(s.result.steps, refs.at(p.disc.M), p.disc.tau()).aggregate;
      row.seconds = s.seconds;
      return row;
    }));
  }
  for (auto& c : cells) table.rows.push_back(c.get());

  std::vector<double> errors;
  std::vector<int> keys;
  for (const auto& r : table.rows) {
    errors.push_back(r.error);
    keys.push_back(vary == ConvergenceTable::Vary::kN ? r.N : r.M);
  }
  const bool positive = std::all_of(errors.begin(), errors.end(),
                                    [](double e) { return e > 0.0 && std::isfinite(e); });
  if (positive) {
    table.slopes = vary == ConvergenceTable::Vary::kN ? alpha_slopes(errors, keys)
                                                       : beta_slopes(errors, keys);
  }
  return table;
}

void write_convergence_csv(const ConvergenceTable& table, const std::filesystem::path& path) {
  auto os = open_output(path);
  os << "N,M,error," << (table.vary == ConvergenceTable::Vary::kN ? "alpha" : "beta") << '\n';
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    os << r.N << ',' << r.M << ',' << format_double(r.error) << ',';
    if (i > 0 && i - 1 < table.slopes.size()) os << format_double(table.slopes[i - 1]);
    os << '\n';
  }
  finish(os, path);
}

RunReport run_experiment(const ExperimentConfig& config, bool with_reference) {
  const auto start = Clock::now();
  const std::filesystem::path dir = config.output_dir;
  ensure_directory(dir);
  RunReport report;

  const Problem p = make_problem(config, config.N, config.M);
  const std::vector<double> grid = equispaced_grid(config.a, config.b, kGridIntervals);
  stepper::RunOptions opts;
  opts.grid = grid;
  opts.snapshot_times = config.snapshots;
  opts.record_every_step = with_reference;
  const Simulation sim = simulate(p, opts);
  report.guard = sim.result.guard;

  for (const auto& snap : sim.result.snapshots) {
    const auto path = dir / ("snapshot_t" + time_tag(snap.t) + ".csv");
    write_xu(path, grid, snap.values);
    report.files.push_back(path);
  }

  {
    const auto path = dir / "trace.csv";
    auto os = open_output(path);
    os << "m,u_a,ux_a,u_b\n";
    const auto& st = sim.result.final_state;
    for (std::size_t m = 0; m < st.trace_u_a.size(); ++m) {
      os << m << ',' << format_double(st.trace_u_a[m]) << ','
         << format_double(st.trace_ux_a[m]) << ',' << format_double(st.trace_u_b[m]) << '\n';
    }
    finish(os, path);
    report.files.push_back(path);
  }

  std::string reference_text = "none";
  if (with_reference) {
    const ReferenceSolution ref(config, grid);
    reference_text = ref.describe();
    const ErrorNorms e = error_norms(sim.result.steps, ref.steps(config.M), p.disc.tau());
    report.aggregate_error = e.aggregate;
    const auto path = dir / "errors.csv";
    auto os = open_output(path);
    os << "m,t,err\n";
    for (std::size_t m = 0; m < e.per_step.size(); ++m) {
      os << m << ',' << format_double(config.T * m / config.M) << ','
         << format_double(e.per_step[m]) << '\n';
    }
    finish(os, path);
    report.files.push_back(path);
  }

  const double norm0 = sim.result.norms.empty() ? 0.0 : sim.result.norms.front();
  const double norm_max = sim.result.norms.empty()
                              ? 0.0
                              : *std::max_element(sim.result.norms.begin(),
                                                  sim.result.norms.end());
  report.seconds = seconds_since(start);

  const auto path = dir / "manifest.txt";
  auto os = open_output(path);
  os << "# kdvsplit run manifest\n";
  std::istringstream echo(serialize(config));
  for (std::string line; std::getline(echo, line);) os << "config." << line << '\n';
  const auto& k = sim.kernels;
  os << "kernels.g_a = " << format_double(k.g_a) << '\n'
     << "kernels.g_b = " << format_double(k.g_b) << '\n'
     << "kernels.tau = " << format_double(k.tau) << '\n'
     << "kernels.M = " << k.steps() << '\n'
     << "kernels.contour_radius = " << format_double(k.contour_radius) << '\n'
     << "kernels.sample_count = " << k.sample_count << '\n'
     << "kernels.imag_residue = " << format_double(k.imag_residue) << '\n'
     << "kernels.forward_residual = " << format_double(k.forward_residual) << '\n'
     << "stability_guard.max_abs_dx_gstar = " << format_double(report.guard.max_gstar_dx)
     << '\n'
     << "stability_guard.tau_max_dx_gstar_over_4 = " << format_double(report.guard.ratio)
     << '\n'
     << "stability_guard.satisfied = " << (report.guard.satisfied() ? "true" : "false")
     << '\n'
     << "advection_form = "
     << (p.advection.form.kind == assembly::DeclaredForm::Kind::kPolynomial
             ? "polynomial(" + std::to_string(p.advection.form.degree) + ")"
             : std::string("general"))
     << '\n'
     << "error_grid = " << grid.size()
     << " equispaced points on [a, b], both endpoints included\n"
     << "reference = " << reference_text << '\n';
  if (report.aggregate_error) {
    os << "error.aggregate = " << format_double(*report.aggregate_error) << '\n';
  }
  os << "norm.initial = " << format_double(norm0) << '\n'
     << "norm.max = " << format_double(norm_max) << '\n'
     << "simd = " << simd::isa_name(simd::kernels().isa) << '\n'
     << "wall_clock_seconds = " << format_double(report.seconds) << '\n';
  finish(os, path);
  report.files.push_back(path);
  return report;
}

std::vector<std::filesystem::path> write_reference(const ExperimentConfig& config,
                                                   const std::vector<double>& times) {
  const std::filesystem::path dir = config.output_dir;
  ensure_directory(dir);
  const std::vector<double> grid = equispaced_grid(config.a, config.b, kGridIntervals);
  const ReferenceSolution ref(config, grid);
  std::vector<std::filesystem::path> files;
  for (double t : times) {
    const auto path = dir / ("reference_t" + time_tag(t) + ".csv");
    write_xu(path, grid, ref.at(t));
    files.push_back(path);
  }
  return files;
}

}  // namespace kdvsplit::harness
