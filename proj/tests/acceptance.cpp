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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits with
// the number of failed criteria. Arguments: paths of the property-suite
// executables for criterion 6.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <string>
#include <vector>

#include "kdvsplit/harness/config.hpp"
#include "kdvsplit/harness/experiment.hpp"
#include "kdvsplit/harness/metrics.hpp"

using namespace kdvsplit::harness;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = fs::path(KDVSPLIT_SOURCE_DIR) / "configs";

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Sweep {
  ConvergenceTable table;
  double seconds = 0.0;
};

Sweep sweep(const ExperimentConfig& cfg, ConvergenceTable::Vary vary, const std::vector<int>& values,
            const ReferenceSolution& ref) {
  const auto t0 = Clock::now();
  Sweep s{converge(cfg, vary, values, ref), 0.0};
  s.seconds = seconds_since(t0);
  return s;
}

std::string list(const std::vector<double>& v, const char* fmt) {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, fmt, v[i]);
    out += (i ? ", " : "") + std::string(buf);
  }
  return out;
}

std::vector<double> errors(const ConvergenceTable& t) {
  std::vector<double> e;
  for (const auto& r : t.rows) e.push_back(r.error);
  return e;
}

bool in(double v, double lo, double hi) { return v >= lo && v <= hi; }

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

const std::vector<int> kSpatialN{24, 32, 40, 48};
const std::vector<int> kTemporalM{32, 64, 128, 256};

}  // namespace

int main(int argc, char** argv) {
  const auto grid = equispaced_grid(-6.0, 6.0, kGridIntervals);

  // 1, 2 and 5: constant g against the whole-line solution.
  const auto ex1 = load_config(kConfigs / "example1.cfg");
  const ReferenceSolution ref1(ex1, grid);
  const auto s1 = sweep(ex1, ConvergenceTable::Vary::kN, kSpatialN, ref1);
  {
    const double published[] = {2.6141e-3, 8.7517e-5, 1.8603e-6, 3.5613e-8};
    bool ok = s1.seconds < 300.0;
    std::vector<double> ratio;
    for (std::size_t i = 0; i < s1.table.rows.size(); ++i) {
      ratio.push_back(s1.table.rows[i].error / published[i]);
      ok = ok && in(ratio.back(), 1.0 / 3.0, 3.0);
    }
    for (double a : s1.table.slopes) ok = ok && in(a, 0.7 * 7e-3, 1.3 * 7e-3);
    report(1, ok,
           "N=24..48 errors [" + list(errors(s1.table), "%.4e") + "], ratio to published [" +
               list(ratio, "%.2f") + "] (need within 3x), alpha [" +
               list(s1.table.slopes, "%.4e") + "] (need 4.9e-3..9.1e-3), " +
               list({s1.seconds}, "%.1f") + " s");
  }
  {
    const auto t0 = Clock::now();
    auto cfg = ex1;
    cfg.N = 64;
    const auto s = sweep(cfg, ConvergenceTable::Vary::kM, kTemporalM, ref1);
    bool ok = seconds_since(t0) < 60.0;
    for (double b : s.table.slopes) ok = ok && in(b, 1.85, 2.10);
    ok = ok && in(s.table.slopes.back(), 1.95, 2.05);
    report(2, ok,
           "N=64, M=32..256 errors [" + list(errors(s.table), "%.4e") + "], beta [" +
               list(s.table.slopes, "%.4f") + "] (need [1.85, 2.10], last [1.95, 2.05])");
  }

  // 3: cubic g, self reference.
  {
    const auto ex2 = load_config(kConfigs / "example2.cfg");
    const ReferenceSolution ref2(ex2, grid);
    auto cfg = ex2;
    cfg.M = 4096;
    const auto sn = sweep(cfg, ConvergenceTable::Vary::kN, {40}, ref2);
    cfg.N = 64;
    const auto sm = sweep(cfg, ConvergenceTable::Vary::kM, kTemporalM, ref2);
    const double e40 = sn.table.rows[0].error;
    const double beta = sm.table.slopes.back();
    report(3, e40 <= 2e-6 && in(beta, 1.95, 2.06),
           "N=40, M=4096 error " + list({e40}, "%.4e") + " (need <= 2e-6), final beta " +
               list({beta}, "%.4f") + " (need [1.95, 2.06])");
  }

  // 4: Gaussian-bump g, self reference; alpha compared with constant g.
  {
    const auto ex3 = load_config(kConfigs / "example3.cfg");
    const ReferenceSolution ref3(ex3, grid);
    auto cfg = ex3;
    const auto sn = sweep(cfg, ConvergenceTable::Vary::kN, kSpatialN, ref3);
    cfg.N = 64;
    const auto sm = sweep(cfg, ConvergenceTable::Vary::kM, kTemporalM, ref3);
    const double e40 = sn.table.rows[2].error;
    const double beta = sm.table.slopes.back();
    const double a3 = mean(sn.table.slopes), a1 = mean(s1.table.slopes);
    report(4, e40 <= 1.5e-3 && in(beta, 1.90, 2.05) && a3 < a1,
           "N=40 error " + list({e40}, "%.4e") + " (need <= 1.5e-3), final beta " +
               list({beta}, "%.4f") + " (need [1.90, 2.05]), mean alpha " + list({a3}, "%.4e") +
               " vs constant g " + list({a1}, "%.4e") + " (need smaller)");
  }

  // 5: no reflection once the pulse has left through x = -6.
  {
    const Problem p = make_problem(ex1, 64, 4096);
    kdvsplit::stepper::RunOptions o;
    o.grid = grid;
    o.snapshot_times = {0.5};
    const auto sim = simulate(p, o);
    const auto ref = ref1.at(0.5);
    double worst = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      worst = std::max(worst, std::abs(sim.result.snapshots[0].values[j] - ref[j]));
    }
    report(5, worst < 1e-3,
           "t=0.5, N=64, M=4096 max deviation " + list({worst}, "%.3e") + " (need < 1e-3)");
  }

  // 6: property suites.
  {
    const auto t0 = Clock::now();
    bool ok = argc > 1;
    std::string failed;
    for (int i = 1; i < argc; ++i) {
      const std::string cmd = std::string("\"") + argv[i] + "\" > /dev/null 2>&1";
      if (std::system(cmd.c_str()) != 0) {
        ok = false;
        failed += " " + fs::path(argv[i]).filename().string();
      }
    }
    const double secs = seconds_since(t0);
    ok = ok && secs < 30.0;
    report(6, ok,
           std::to_string(argc - 1) + " property suites in " + list({secs}, "%.1f") +
               " s (need all passing, < 30 s)" + (failed.empty() ? "" : "; failed:" + failed));
  }
  return failures;
}
