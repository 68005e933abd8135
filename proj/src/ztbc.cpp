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

#include "kdvsplit/ztbc.hpp"

#include <fftw3.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <string>

#include "kdvsplit/errors.hpp"
#include "kdvsplit/simd/kernels.hpp"

namespace kdvsplit::ztbc {

std::array<Complex, 3> characteristic_roots(double g, Complex c) {
  Eigen::Matrix3cd companion = Eigen::Matrix3cd::Zero();
  companion(0, 2) = -c;
  companion(1, 0) = 1.0;
  companion(1, 2) = -g;
  companion(2, 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw EigenSolveError("companion eigen-solve failed for the cubic");
  }
  std::array<Complex, 3> roots;
  for (int i = 0; i < 3; ++i) {
    Complex x = solver.eigenvalues()(i);
    const Complex p = x * x * x + g * x + c;
    const Complex dp = 3.0 * x * x + g;
    if (std::abs(dp) > 0.0) {
      const Complex polished = x - p / dp;
      const Complex pp = polished * polished * polished + g * polished + c;
      if (std::abs(pp) <= std::abs(p)) x = polished;
    }
    roots[i] = x;
  }
  return roots;
}

Complex decaying_root(const std::array<Complex, 3>& roots) {
  constexpr double threshold = -1e-10;
  int negative = 0;
  int best = 0;
  for (int i = 0; i < 3; ++i) {
    if (roots[i].real() < threshold) ++negative;
    if (roots[i].real() < roots[best].real()) best = i;
  }
  if (negative != 1) {
    std::ostringstream os;
    os << "expected exactly one root with negative real part, found " << negative
       << " (roots " << roots[0] << ", " << roots[1] << ", " << roots[2] << ")";
    throw SignPatternViolation(os.str());
  }
  return roots[best];
}

Complex cayley_symbol(double tau, Complex z) {
  const Complex zi = 1.0 / z;
  return (2.0 / tau) * (1.0 - zi) / (1.0 + zi);
}

Complex decaying_root_at(double g, double tau, Complex z) {
  return decaying_root(characteristic_roots(g, cayley_symbol(tau, z)));
}

namespace {

// FFTW's planner is not reentrant; execution on an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwPlan {
  fftw_plan plan = nullptr;
  explicit FftwPlan(int n) {
    std::vector<Complex> scratch_in(n), scratch_out(n);
    const std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(scratch_in.data()),
                            reinterpret_cast<fftw_complex*>(scratch_out.data()),
                            FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw KernelAccuracyError("FFTW planning failed");
  }
  ~FftwPlan() {
    const std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  FftwPlan(const FftwPlan&) = delete;
  FftwPlan& operator=(const FftwPlan&) = delete;

  void backward(std::vector<Complex>& in, std::vector<Complex>& out) const {
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
  }
};

// Inverse Z-transform of lambda_1 and lambda_1^2 for one boundary. Returns the
// full K-length complex coefficient sequences.
void invert_boundary(double g, double tau, int K, double r, const FftwPlan& fft,
                     std::vector<Complex>& first, std::vector<Complex>& second) {
  std::vector<Complex> f1(K), f2(K);
  for (int k = 0; k < K; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / K;
    const Complex z = std::polar(r, theta);
    const Complex lam = decaying_root_at(g, tau, z);
    f1[k] = lam;
    f2[k] = lam * lam;
  }
  first.resize(K);
  second.resize(K);
  fft.backward(f1, first);
  fft.backward(f2, second);
  // Y^m = r^m / K * DFT; r^m computed incrementally in log space.
  const double log_r = std::log(r);
  for (int m = 0; m < K; ++m) {
    const double scale = std::exp(m * log_r) / K;
    first[m] *= scale;
    second[m] *= scale;
  }
}

double imag_residue(const std::vector<Complex>& seq, int count) {
  double max_abs = 0.0, max_imag = 0.0;
  for (int m = 0; m < count; ++m) {
    max_abs = std::max(max_abs, std::abs(seq[m]));
    max_imag = std::max(max_imag, std::abs(seq[m].imag()));
  }
  return max_abs > 0.0 ? max_imag / max_abs : 0.0;
}

// Horner evaluation of sum_m Re(seq[m]) w^m with w = 1/z.
double forward_residual(const std::vector<Complex>& seq, double g, double tau) {
  constexpr double probe_radius = 1.1;
  double worst = 0.0;
  for (int p = 0; p < 8; ++p) {
    const Complex z = std::polar(probe_radius, (p + 0.5) * std::numbers::pi / 8.0);
    const Complex w = 1.0 / z;
    Complex acc = 0.0;
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) acc = acc * w + it->real();
    const Complex exact = decaying_root_at(g, tau, z);
    worst = std::max(worst, std::abs(acc - exact) / std::abs(exact));
  }
  return worst;
}

std::vector<double> real_prefix(const std::vector<Complex>& seq, int count) {
  std::vector<double> out(count);
  for (int m = 0; m < count; ++m) out[m] = seq[m].real();
  return out;
}

}  // namespace

BoundaryKernels compute_kernels(double g_a, double g_b, double tau, int M,
                                ContourOptions options) {
  if (!(tau > 0.0)) throw std::invalid_argument("compute_kernels: tau must be > 0");
  if (M < 1) throw std::invalid_argument("compute_kernels: M must be >= 1");

  const int K = options.sample_count > 0 ? options.sample_count
                                         : std::max(4 * (M + 1), 1024);
  if (K < M + 1) {
    throw std::invalid_argument("compute_kernels: sample_count must exceed M");
  }
  const double r = options.radius > 0.0
                       ? options.radius
                       : std::pow(std::numeric_limits<double>::epsilon(), -1.0 / (2.0 * K));
  if (!(r > 1.0)) throw std::invalid_argument("compute_kernels: radius must be > 1");

  FftwPlan fft(K);
  std::vector<Complex> y1, y2, y3, y4;
  invert_boundary(g_a, tau, K, r, fft, y1, y2);
  invert_boundary(g_b, tau, K, r, fft, y3, y4);

  BoundaryKernels out;
  out.tau = tau;
  out.g_a = g_a;
  out.g_b = g_b;
  out.contour_radius = r;
  out.sample_count = K;
  const int count = M + 1;
  out.imag_residue = std::max({imag_residue(y1, count), imag_residue(y2, count),
                               imag_residue(y3, count), imag_residue(y4, count)});
  out.forward_residual =
      std::max(forward_residual(y1, g_a, tau), forward_residual(y3, g_b, tau));

  if (out.imag_residue >= 1e-8) {
    throw KernelAccuracyError("imaginary residue " + std::to_string(out.imag_residue) +
                              " exceeds 1e-8");
  }
  if (!(out.forward_residual < 1e-7)) {
    throw KernelAccuracyError("forward Z-transform residual " +
                              std::to_string(out.forward_residual) + " exceeds 1e-7");
  }

  out.y1 = real_prefix(y1, count);
  out.y2 = real_prefix(y2, count);
  out.y3 = real_prefix(y3, count);
  out.y4 = real_prefix(y4, count);
  return out;
}

double history_convolution(std::span<const double> kernel,
                           std::span<const double> trace, int m) {
  if (m < 0) throw LengthMismatch("history_convolution: negative step");
  const auto n = static_cast<std::size_t>(m) + 1;
  if (trace.size() < n || kernel.size() < n + 1) {
    throw LengthMismatch("history_convolution: need trace length >= m+1 and "
                         "kernel length >= m+2");
  }
  return simd::dot_reverse(kernel.subspan(1, n), trace.first(n));
}

void write_kernel_cache(const BoundaryKernels& k, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open kernel cache for writing: " + path.string());
  os << std::setprecision(17);
  os << "# kdvsplit kernel cache v1\n";
  os << "g_a,g_b,tau,M,radius,sample_count\n";
  os << k.g_a << ',' << k.g_b << ',' << k.tau << ',' << k.steps() << ','
     << k.contour_radius << ',' << k.sample_count << '\n';
  os << "m,y1,y2,y3,y4\n";
  for (std::size_t m = 0; m < k.y1.size(); ++m) {
    os << m << ',' << k.y1[m] << ',' << k.y2[m] << ',' << k.y3[m] << ',' << k.y4[m]
       << '\n';
  }
  if (!os) throw IoError("failed writing kernel cache: " + path.string());
}

BoundaryKernels read_kernel_cache(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open kernel cache: " + path.string());
  std::string line;
  auto next_line = [&]() {
    if (!std::getline(is, line)) throw IoError("truncated kernel cache: " + path.string());
  };
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    return parts;
  };

  next_line();
  if (line.rfind("# kdvsplit kernel cache v1", 0) != 0) {
    throw IoError("not a kernel cache file: " + path.string());
  }
  next_line();  // parameter header
  next_line();
  const auto params = split(line);
  if (params.size() != 6) throw IoError("malformed kernel cache parameters");

  BoundaryKernels k;
  try {
    k.g_a = std::stod(params[0]);
    k.g_b = std::stod(params[1]);
    k.tau = std::stod(params[2]);
    const int M = std::stoi(params[3]);
    k.contour_radius = std::stod(params[4]);
    k.sample_count = std::stoi(params[5]);
    next_line();  // column header
    for (int m = 0; m <= M; ++m) {
      next_line();
      const auto cols = split(line);
      if (cols.size() != 5 || std::stoi(cols[0]) != m) {
        throw IoError("malformed kernel cache row " + std::to_string(m));
      }
      k.y1.push_back(std::stod(cols[1]));
      k.y2.push_back(std::stod(cols[2]));
      k.y3.push_back(std::stod(cols[3]));
      k.y4.push_back(std::stod(cols[4]));
    }
  } catch (const std::logic_error&) {
    throw IoError("malformed number in kernel cache: " + path.string());
  }
  return k;
}

}  // namespace kdvsplit::ztbc
